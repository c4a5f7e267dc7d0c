#pragma once
// Planar offset-curve geometry for polygonal boundaries: exact lengths of
// distance level sets, Euler characteristics of t-neighborhoods, and the
// two boundary decompositions built from them.
//
// The length machinery works on the exact segment/arc offset arrangement:
// every edge contributes two translated copies of itself, every vertex a
// circle, and each piece is clipped against the stadium neighborhoods of all
// edges.  Tangentially merged pieces are kept on both sides, so lengths
// follow the metric-completion convention (the t = 0 limit of a closed loop
// is twice its length).  A marching-squares raster fallback cross-checks the
// analytic values.
#include <optional>
#include <string>
#include <vector>

#include "zigzag/geometry2d.hpp"

namespace zigzag {

// One polyline.  Closed chains connect v.back() back to v.front().
struct Chain {
  std::vector<Vec2> v;
  bool closed = true;
  double length() const;
};

// Circular window restricting a level-set length query to an open ball.
struct Window {
  Vec2 center;
  double radius = 0;
};

// Disjoint simple closed polygonal loops with their containment tree.
// Membership follows the even-odd rule: even nesting depth bounds material,
// odd depth bounds holes.
struct PolygonalRegion {
  std::vector<Chain> loops;  // all closed
  std::vector<int> parent;   // innermost enclosing loop, -1 at top level
  std::vector<int> depth;    // nesting depth of each loop
  bool jittered = false;     // tie-breaking jitter was applied at build time

  double perimeter() const;
  bool contains(Vec2 p) const;
};

// Validates simplicity and pairwise disjointness, builds the containment
// tree, and breaks ties in the pairwise loop distances by a deterministic
// 1e-9-scale coordinate jitter (the decompositions assume the distances are
// pairwise distinct).  Consecutive duplicate vertices are dropped.
PolygonalRegion make_region(std::vector<std::vector<Vec2>> loops);

// Length of the level set {x : dist(x, chains) = t}, from the exact offset
// arrangement; `window` restricts to an open ball.  `degenerate` (optional)
// reports an empty (zero-length) level set.  t = 0 returns twice the total
// chain length, the limit value of the completed level-set length.
double level_set_length(const std::vector<Chain>& chains, double t,
                        const std::optional<Window>& window = std::nullopt,
                        bool* degenerate = nullptr);

// Marching-squares estimate of the same length on a rasterized distance
// field.  Cross-check only: agrees with level_set_length to a few percent at
// generic t (it sees tangential merges once, not twice).
double level_set_length_raster(const std::vector<Chain>& chains, double t,
                               const std::optional<Window>& window = std::nullopt,
                               int resolution = 512);

// level_set_length of the region's boundary loops.
double offset_length(const PolygonalRegion& region, double t,
                     const std::optional<Window>& window = std::nullopt,
                     bool* degenerate = nullptr);

// Euler characteristic (#components - #holes) of the open t-neighborhood of
// the region's boundary, via Gauss-Bonnet on the clipped offset arrangement:
// total boundary turning / 2 pi.  A t sitting exactly at a merging event
// makes the arrangement degenerate; the value is then recomputed at a
// perturbed t (relative offset up to 1e-4) and `perturbed` (optional)
// reports it.
int neighborhood_euler(const PolygonalRegion& region, double t,
                       bool* perturbed = nullptr);

// Numerical verification attached to a global decomposition.
struct GlobalChecks {
  double boundary_length = 0;      // total length of the selected loops
  std::vector<double> sampled_t;   // where the offset-length bound was probed
  double max_offset_ratio = 0;     // max of level-set length / (2 * boundary_length)
  bool offset_bound_ok = true;     // level-set length <= 2 * boundary_length throughout
  double min_loop_margin = 0;      // min over residual loops of (bound - length)
  bool loop_bound_ok = true;       // every residual loop obeys its size bound
  int membership_mismatches = 0;   // sampled points violating Omega = O0 xor O1
};

// Splits a region's boundary loops into a selected core (every loop of
// length >= 2 pi delta0, plus, iteratively, every loop within length/(2 pi)
// of the already-selected ones) and the residual small far loops.  Omega0 is
// the region bounded by the selected loops, Omega1 the symmetric difference
// with the input; the selected boundary satisfies the offset-length bound
// down to scale delta0, while each residual loop has length at most
// 2 pi * min{delta0, its distance to the selected boundary}.
struct LevelSetDecomposition {
  PolygonalRegion region;
  double delta0 = 0;
  std::vector<char> selected;      // per loop
  GlobalChecks checks;

  std::vector<int> selected_loops() const;
  std::vector<int> residual_loops() const;
  bool omega0_contains(Vec2 p) const;
  // Independent of omega0_contains: evaluates the residual set from the
  // containment tree directly, so xor-consistency is a real invariant.
  bool omega1_contains(Vec2 p) const;
};

// offset_samples: number of t values probed for the offset-length check
// (0 skips it, e.g. when a caller re-checks a windowed variant itself).
LevelSetDecomposition decompose_global(const PolygonalRegion& region,
                                       double delta0, int offset_samples = 20);

// Numerical verification attached to a local decomposition.
struct LocalChecks {
  double boundary_in_ball = 0;     // input boundary length inside the ball (exact)
  double gamma_length = 0;         // core boundary length strictly inside the ball
  double residual_boundary = 0;    // residual loop length inside the ball
  bool length_bound_ok = true;     // max{gamma, residual} <= boundary_in_ball
  std::vector<double> sampled_t;
  double max_offset_ratio = 0;     // windowed level-set length / (2 * gamma_length)
  bool offset_bound_ok = true;
  double min_loop_margin = 0;      // residual loops vs 2 pi min{delta0, dist to gamma}
  bool loop_bound_ok = true;
  int membership_mismatches = 0;   // modified vs input membership in the shrunken ball
};

// Localizes the decomposition to a ball B(center, rho).  The region is
// clipped to the ball; inside the outer annulus of width 2*delta0 every
// material component that misses the outer circle or meets the inner circle
// in length <= 4*delta0 is removed, every such complement component is
// filled, and each survivor is straightened into a full annulus sector.
// The global decomposition of the modified set then yields the core curve
// gamma (its boundary strictly inside the ball) and the residual loops,
// with the three quantitative bounds recorded in LocalChecks.
struct LocalDecomposition {
  Vec2 center;
  double rho = 0;
  double delta0 = 0;
  PolygonalRegion modified;        // clipped and straightened region
  LevelSetDecomposition global;    // decomposition of `modified`
  std::vector<Chain> gamma;        // core boundary strictly inside the ball
  int removed = 0;                 // annulus components removed
  int filled = 0;                  // annulus holes filled
  int sectors = 0;                 // survivors straightened into sectors
  LocalChecks checks;
};

// Requires 2 pi delta0 <= min{rho / 8, boundary length inside the ball} and
// a nonempty intersection with the ball.
LocalDecomposition decompose_local(const PolygonalRegion& region, Vec2 center,
                                   double rho, double delta0);

// CSV loop list ("loop,x1,x2" header, one row per vertex) and back.
std::string region_csv(const PolygonalRegion& region);
PolygonalRegion region_from_csv(const std::string& text);

// JSON reports with per-loop diagnostics.
std::string decomposition_json(const LevelSetDecomposition& d);
std::string local_decomposition_json(const LocalDecomposition& d);

}  // namespace zigzag
