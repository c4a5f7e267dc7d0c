#pragma once
#include <vector>

#include "zigzag/geometry2d.hpp"
#include "zigzag/wall.hpp"

namespace zigzag {

// One straight piece of the rounded curve (an edge shortened by the corner
// trims at both ends).
struct TubeSegment {
  Vec2 a, b;
  Vec2 tau;      // unit tangent, ascending in x2
  double len = 0;
};

// One corner arc: radius vector starts at angle phi0 (the incoming tangency)
// and sweeps by the corner's turning angle.  side = +1 when the center lies
// left of the curve, so the signed distance there is side * (|p - c| - r).
struct TubeArc {
  Vec2 c;
  double r = 0;
  double phi0 = 0;
  double sweep = 0;
  double side = 1;
};

// Corner-rounded tubular neighborhood of a wall: every corner is replaced by
// an arc of radius 2*beta tangent to both edges (the morphological
// regularization with balls of that radius, done analytically), giving a
// C^{1,1} curve whose signed distance is smooth across the tube |t| < beta.
// The sign convention is positive on the right of the ascending curve, the
// {m = +e1} region.
struct RoundedTube {
  double ell = 0;
  double beta = 0;    // tube half-width (the profile clamps at |t| = beta)
  double radius = 0;  // corner radius 2*beta
  std::vector<TubeSegment> segments;
  std::vector<TubeArc> arcs;

  // Exact distance to the rounded curve (period images included), signed by
  // the side of the nearest element.  Valid at any distance for graph walls:
  // the straight segment to the nearest curve point cannot cross the curve.
  double signed_distance(double x1, double x2) const;
};

// Errors when an arc does not fit between two corners of an edge, or when two
// non-adjacent edges come close enough that tubes of half-width beta could
// touch; both messages name the offending corner or edge pair.
RoundedTube make_rounded_tube(const PolygonalWall& w, double beta);

}  // namespace zigzag
