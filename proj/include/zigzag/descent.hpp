#pragma once
// Gradient descent on the strip energy and wall-geometry extraction from
// minimized fields.
#include <cstdint>
#include <string>
#include <vector>

#include "zigzag/energy.hpp"
#include "zigzag/grid.hpp"

namespace zigzag {

struct DescentOptions {
  int max_iters = 500;
  // Stopping threshold on the sup norm of the variational derivative
  // |dE/dtheta| / (hx hy); 0 selects the default 1e-4 / epsilon.
  double tol = 0;
  // Armijo backtracking (default) or a fixed step.
  bool backtracking = true;
  // Step size in functional-gradient units (theta moves by step * gradient
  // density); 0 selects an explicit-Euler scale from the stiffest terms.
  double step0 = 0;
  // Seed for the initial-wall perturbation of perturbed_straight_start.
  unsigned seed = 0;
};

struct DescentLogRow {
  int iter = 0;
  EnergyBreakdown energy;
  double grad_norm = 0;  // sup |dE/dtheta| / (hx hy)
  double step = 0;       // step that produced this iterate (0 on row 0)
};

struct DescentResult {
  DirectorField field;
  EnergyBreakdown energy;
  std::vector<DescentLogRow> log;  // row 0 is the starting point
  bool converged = false;  // grad_norm <= tol reached
  bool diverged = false;   // backtracking exhausted without descent
  std::string message;
};

// Monotone gradient descent: theta <- theta - step * gradient / (hx hy) on
// the unclamped nodes only, step controlled by Armijo backtracking unless
// options request a fixed step.  The energy log is non-increasing whenever
// backtracking is on; clamped nodes are never touched.
DescentResult minimize(const DirectorField& start, const BackgroundField& bg,
                       const EnergyParams& p, const DescentOptions& options);

// Starting field for minimization runs: the explicit near-minimizer of a
// straight wall whose position is perturbed by a small seeded sinusoid
// (gamma(x2) = amp sin(2 pi k x2 / ell + phase)), so that tilted-wall basins
// are reachable from a generic, still admissible, initial condition.
DirectorField perturbed_straight_start(const StripGrid& g, double epsilon,
                                       unsigned seed);

// Wall position extracted row by row as the linearly interpolated zero
// crossing of u = m . e1 (u rises from -1 on the left to +1 on the right).
// Rows with no crossing or more than one are flagged invalid.
struct WallTrace {
  std::vector<double> x2;              // row coordinate
  std::vector<double> gamma;           // wall position, NaN on invalid rows
  std::vector<std::uint8_t> row_valid;
  int crossings_min = 0, crossings_max = 0;
  bool valid = false;  // every row has exactly one crossing
};

WallTrace extract_wall(const DirectorField& f);

// Per-segment slope statistics of a trace: each pair of adjacent valid rows
// (periodic wrap included) is a segment with |n1| = 1 / sqrt(1 + slope^2).
// mean_abs_n1 is length-weighted, which makes it exactly
// (covered height) / (trace length).
struct SlopeStats {
  int segments = 0;
  double mean_abs_n1 = 0;
  double min_abs_n1 = 0;
  double max_abs_n1 = 0;
  double trace_length = 0;
  bool valid = false;
};

SlopeStats slope_stats(const WallTrace& t);

// "iter,exchange,anisotropy,stray,total,grad_norm,step", one row per log
// entry, full double precision.
std::string descent_log_csv(const std::vector<DescentLogRow>& log);

}  // namespace zigzag
