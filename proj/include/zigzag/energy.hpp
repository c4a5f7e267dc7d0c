#pragma once
#include <string>
#include <utility>
#include <vector>

#include "zigzag/grid.hpp"

namespace zigzag {

// Parameters of the strip energy at transition scale epsilon:
//   E = (eps/2) int |grad theta|^2  +  (1/(2 eps)) int sin^2 theta
//     + (pi lambda / (2 |ln eps|)) * || |grad|^{-1/2} div(m - M) ||^2.
struct EnergyParams {
  StripGrid grid;
  double epsilon = 0;         // in (0, 1/4)
  double lambda = 0;          // >= 0
  bool wall_resolved = true;  // epsilon >= 2 hx, i.e. the transition layer
                              // spans at least a couple of columns
};

// Validates epsilon in (0, 1/4) and lambda >= 0.  When epsilon < 2 hx the
// wall profile is narrower than the grid can represent: the params are still
// usable (coarse studies deliberately under-resolve), but wall_resolved is
// cleared and a one-line note goes to stderr.
EnergyParams make_energy_params(const StripGrid& grid, double epsilon,
                                double lambda);

struct EnergyBreakdown {
  double exchange = 0;
  double anisotropy = 0;
  double stray = 0;
  double total = 0;  // exchange + anisotropy + stray, exactly
};

// Local terms on the grid: exchange (eps/2) sum |D theta|^2 cell with forward
// differences (periodic in x2; the last column has no x1-forward neighbor and
// both end columns are constant anyway), anisotropy (1/(2 eps)) sum sin^2
// theta cell.  Angle differences are reduced to (-pi, pi] first, so the gauge
// seam of the angle chart (theta and theta + 2 pi are the same director)
// cannot inflate the exchange term.
std::pair<double, double> local_energy(const DirectorField& f,
                                       const EnergyParams& p);

// (pi lambda / (2 |ln eps|)) * fractional_norm(charge_density(f, bg), -1/2).
// Exactly 0 at lambda = 0 without touching the transform.
double stray_energy(const DirectorField& f, const BackgroundField& bg,
                    const EnergyParams& p);

EnergyBreakdown total_energy(const DirectorField& f, const BackgroundField& bg,
                             const EnergyParams& p);

// d(total energy)/d(theta at node), one entry per grid node; exactly 0 at
// clamped nodes.  The stray part is assembled by the adjoint of the charge
// density stencil against the spectral-multiplier gradient.
std::vector<double> energy_gradient(const DirectorField& f,
                                    const BackgroundField& bg,
                                    const EnergyParams& p);

// Compact JSON text with fields
// {epsilon, lambda, exchange, anisotropy, stray, total}.
std::string energy_json(const EnergyParams& p, const EnergyBreakdown& b);

}  // namespace zigzag
