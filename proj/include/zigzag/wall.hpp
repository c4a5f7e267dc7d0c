#pragma once
#include <string>
#include <vector>

namespace zigzag {

struct WallVertex {
  double x1 = 0;
  double x2 = 0;
};

// Domain wall as an ascending graph x1 = gamma(x2) on the period [0, ell]:
// vertices with strictly increasing x2, first at x2 = 0 and last at x2 = ell
// with equal x1 (periodic closure).  Every edge then has positive length and
// outer normal n = (-dx2, dx1)/len (pointing out of the m = +e1 region), so
// -n1 = dx2/len lies in (0, 1].  Vertices stay in |x1| <= 1, the strip where
// the boundary condition admits jumps.  Edges longer than ell/2 are split by
// inserting collinear midpoints, which changes no geometric quantity.
struct PolygonalWall {
  std::vector<WallVertex> v;
  double ell = 0;
  int edges() const { return static_cast<int>(v.size()) - 1; }
};

PolygonalWall make_wall(std::vector<WallVertex> vertices, double ell);

// Per-edge closed-form geometry.
struct WallEdge {
  double len = 0;
  double n1 = 0, n2 = 0;    // outer unit normal
  double tau1 = 0, tau2 = 0;  // unit tangent (ascending: tau2 > 0)
};
WallEdge edge_geometry(const PolygonalWall& w, int e);

// Line energy density f(s) = (1 + s^2) for s <= 1, 2s for s > 1
// (equivalently inf over alpha >= 1 of alpha + s^2/alpha); s >= 0 required.
double line_density_f(double s);

// Limit line energy: sum over edges of 2 f(sqrt(lambda) |n1|) len.
double limit_energy(const PolygonalWall& w, double lambda);

// Per-edge contributions in the same order as the edges.
std::vector<double> limit_energy_per_edge(const PolygonalWall& w, double lambda);

// Minimal limit energy over all admissible walls:
// 2 ell (1 + lambda) for lambda <= 1, 4 sqrt(lambda) ell for lambda > 1.
double ground_state_energy(double lambda, double ell);

// Exact per-edge sum of -n1 * len; telescopes to ell for every wall.
double wall_flux(const PolygonalWall& w);

// Replaces every edge with |n1| > c* = lambda^{-1/2} by 2k alternating
// segments with normals (sign(n1) c*, +-sqrt(1 - c*^2)), split in the shares
// lambda_pm = (|n1|/c* +- n2/sqrt(1 - c*^2))/2, which connect the same
// endpoints and leave the limit energy unchanged exactly.  Requires
// lambda > 1.  Edges of an ascending wall have pairwise disjoint x2-spans,
// so the teeth (which protrude toward +x1, by lambda_+ len sqrt(1-c*^2)/k at
// the tips) can never cross another edge; the binding constraint is the strip
// bound |x1| <= 1 of the boundary condition.  k = 0 picks the smallest k
// whose tooth tips stay at least 1e-3 inside that bound; an explicit smaller
// k is rejected with a diagnostic naming the offending edge.
PolygonalWall zigzag_refine(const PolygonalWall& w, double lambda, int k = 0);

struct MinimizerVerdict {
  bool is_minimizer = false;
  double energy = 0;      // limit energy of the wall
  double ground_state = 0;  // e(lambda) at the wall's ell
  std::string reason;     // first violated condition, empty when minimizing
};

// A wall minimizes the limit energy iff every edge normal satisfies
// min{1, lambda^{-1/2}} <= -n1 <= 1 (band checked to 1e-12).
MinimizerVerdict classify_minimizer(const PolygonalWall& w, double lambda);

// CSV with header "x1,x2", one vertex per line, full double precision.
std::string wall_csv(const PolygonalWall& w);
PolygonalWall wall_from_csv(const std::string& text, double ell);

// {"lambda": .., "energy": .., "per_edge": [..]}.
std::string limit_energy_json(const PolygonalWall& w, double lambda);

}  // namespace zigzag
