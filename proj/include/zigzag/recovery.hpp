#pragma once
#include <string>

#include "zigzag/energy.hpp"
#include "zigzag/grid.hpp"
#include "zigzag/tube.hpp"
#include "zigzag/wall.hpp"

namespace zigzag {

struct RecoveryParams {
  double epsilon = 0;  // transition core width, in (0, 1/4)
  double beta = 0;     // tube half-width; 0 selects the default epsilon^{5/6}
};

// The explicit near-minimizing field at scale epsilon: theta = atan2(v, u)
// with (u, v) the 1d transition profile evaluated at the signed distance to
// the corner-rounded wall curve.  Exactly +e1 / -e1 beyond distance beta on
// either side, so the boundary condition holds as long as the tube stays
// inside the strip.
DirectorField build_recovery_field(const PolygonalWall& w,
                                   const RecoveryParams& p, const StripGrid& g);

// Grid refined with epsilon: cells of size about epsilon / cells_per_eps in
// both directions (FFT-friendly counts), except that x2-invariant walls only
// need a token number of rows.
StripGrid recovery_grid(const PolygonalWall& w, double epsilon,
                        double cells_per_eps, double half_width = 2.0);

struct RecoveryReport {
  double epsilon = 0;
  double lambda = 0;
  double limit = 0;             // line energy of the wall
  EnergyBreakdown breakdown;    // strip energy of the recovery field
  double ratio = 0;             // breakdown.total / limit
};

RecoveryReport run_recovery_case(const PolygonalWall& w, double epsilon,
                                 double lambda, const StripGrid& g);

// {epsilon, lambda, E0, E_eps_breakdown: {exchange, anisotropy, stray, total},
//  ratio}
std::string recovery_json(const RecoveryReport& r);

}  // namespace zigzag
