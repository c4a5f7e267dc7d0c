#include "zigzag/tube.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace zigzag {
namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

RoundedTube make_rounded_tube(const PolygonalWall& w, double beta) {
  require(std::isfinite(beta) && beta > 0,
          "make_rounded_tube: beta must be positive");
  const int m = w.edges();
  require(m >= 1, "make_rounded_tube: wall has no edges");
  const double r = 2 * beta;

  std::vector<Vec2> a(m), b(m), tau(m);
  std::vector<double> len(m);
  for (int e = 0; e < m; ++e) {
    a[e] = {w.v[e].x1, w.v[e].x2};
    b[e] = {w.v[e + 1].x1, w.v[e + 1].x2};
    const Vec2 d = b[e] - a[e];
    len[e] = norm(d);
    tau[e] = (1 / len[e]) * d;
  }

  // Corner vi sits between edge (vi-1 mod m) and edge vi; vi = 0 is the
  // periodic seam, where the incoming edge is the last one shifted by -ell.
  std::vector<double> delta(m, 0), trim(m, 0);
  for (int vi = 0; vi < m; ++vi) {
    const int ein = (vi + m - 1) % m;
    const double d = std::atan2(cross(tau[ein], tau[vi]), dot(tau[ein], tau[vi]));
    if (std::abs(d) < 1e-14) continue;  // collinear (split points)
    delta[vi] = d;
    trim[vi] = r * std::tan(0.5 * std::abs(d));
  }

  for (int e = 0; e < m; ++e) {
    const int vnext = (e + 1) % m;
    if (trim[e] + trim[vnext] >= len[e])
      throw std::invalid_argument(
          "make_rounded_tube: the arcs at corners " + std::to_string(e) +
          " and " + std::to_string(vnext) + " (radius " + std::to_string(r) +
          ") overlap on edge " + std::to_string(e) + " of length " +
          std::to_string(len[e]) + "; shrink the tube");
  }

  // Tubes of half-width beta around non-adjacent edges must not touch.  The
  // rounded elements stay within r of the original polyline, so original-edge
  // clearance above 2*beta + 2*r is sufficient.
  for (int e = 0; e < m; ++e) {
    for (int e2 = e + 1; e2 < m; ++e2) {
      for (int shift = -1; shift <= 1; ++shift) {
        const Vec2 off{0, shift * w.ell};
        const Vec2 c = a[e2] + off, d = b[e2] + off;
        const bool adjacent =
            (norm(a[e] - c) == 0) || (norm(a[e] - d) == 0) ||
            (norm(b[e] - c) == 0) || (norm(b[e] - d) == 0);
        if (adjacent) continue;
        if (segment_segment_distance(a[e], b[e], c, d) <= 2 * beta + 2 * r)
          throw std::invalid_argument(
              "make_rounded_tube: tubes of half-width " + std::to_string(beta) +
              " around edges " + std::to_string(e) + " and " +
              std::to_string(e2) + " overlap; shrink the tube");
      }
    }
  }

  RoundedTube t;
  t.ell = w.ell;
  t.beta = beta;
  t.radius = r;
  for (int e = 0; e < m; ++e) {
    TubeSegment s;
    s.a = a[e] + trim[e] * tau[e];
    s.b = b[e] - trim[(e + 1) % m] * tau[e];
    s.tau = tau[e];
    s.len = norm(s.b - s.a);
    t.segments.push_back(s);
  }
  for (int vi = 0; vi < m; ++vi) {
    if (delta[vi] == 0) continue;
    const int ein = (vi + m - 1) % m;
    const Vec2 V{w.v[vi].x1, w.v[vi].x2};
    const Vec2 pin = V - trim[vi] * tau[ein];
    const Vec2 pout = V + trim[vi] * tau[vi];
    const double side = delta[vi] > 0 ? 1.0 : -1.0;
    const Vec2 c = pin + (side * r) * rot90(tau[ein]);
    if (std::abs(norm(pout - c) - r) > 1e-9 * r)
      throw std::logic_error("make_rounded_tube: arc tangency failed");
    TubeArc arc;
    arc.c = c;
    arc.r = r;
    arc.phi0 = std::atan2(pin.y - c.y, pin.x - c.x);
    arc.sweep = delta[vi];
    arc.side = side;
    t.arcs.push_back(arc);
  }
  return t;
}

double RoundedTube::signed_distance(double x1, double x2) const {
  double best = std::numeric_limits<double>::infinity();
  double sgn = 1;
  for (int shift = -1; shift <= 1; ++shift) {
    const Vec2 p{x1, x2 - shift * ell};
    for (const TubeSegment& s : segments) {
      if (s.len <= 0) continue;
      const Vec2 w = p - s.a;
      const double t = std::clamp(dot(w, s.tau), 0.0, s.len);
      const double d = norm(p - (s.a + t * s.tau));
      if (d < best) {
        best = d;
        sgn = cross(s.tau, w) > 0 ? -1 : 1;  // left of the curve is negative
      }
    }
    for (const TubeArc& arc : arcs) {
      const Vec2 w = p - arc.c;
      const double rho = norm(w);
      const double psi = std::remainder(std::atan2(w.y, w.x) - arc.phi0, 2 * kPi);
      const bool inside =
          arc.sweep > 0 ? (psi >= 0 && psi <= arc.sweep)
                        : (psi <= 0 && psi >= arc.sweep);
      double d;
      if (inside) {
        d = std::abs(rho - arc.r);
      } else {
        const Vec2 e0{arc.c.x + arc.r * std::cos(arc.phi0),
                      arc.c.y + arc.r * std::sin(arc.phi0)};
        const double phi1 = arc.phi0 + arc.sweep;
        const Vec2 e1{arc.c.x + arc.r * std::cos(phi1),
                      arc.c.y + arc.r * std::sin(phi1)};
        d = std::min(norm(p - e0), norm(p - e1));
      }
      if (d < best) {
        best = d;
        sgn = arc.side * (rho - arc.r) >= 0 ? 1 : -1;
      }
    }
  }
  return sgn * best;
}

}  // namespace zigzag
