#include "zigzag/wall.hpp"

#include "zigzag/geometry2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace zigzag {
namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

Vec2 vertex_point(const PolygonalWall& w, int e) {
  return {w.v[e].x1, w.v[e].x2};
}

bool same_point(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

}  // namespace

PolygonalWall make_wall(std::vector<WallVertex> vertices, double ell) {
  require(std::isfinite(ell) && ell > 0, "make_wall: ell must be positive");
  require(vertices.size() >= 2, "make_wall: need at least two vertices");
  for (const WallVertex& p : vertices) {
    require(std::isfinite(p.x1) && std::isfinite(p.x2),
            "make_wall: non-finite vertex");
    require(std::abs(p.x1) <= 1 + 1e-12,
            "make_wall: vertex x1 outside the strip [-1, 1] where the "
            "boundary condition admits jumps");
  }
  const double tol = 1e-12 * ell;
  require(std::abs(vertices.front().x2) <= tol,
          "make_wall: first vertex must sit at x2 = 0");
  require(std::abs(vertices.back().x2 - ell) <= tol,
          "make_wall: last vertex must sit at x2 = ell");
  vertices.front().x2 = 0;
  vertices.back().x2 = ell;
  require(std::abs(vertices.front().x1 - vertices.back().x1) <= tol,
          "make_wall: periodic closure needs equal x1 at x2 = 0 and x2 = ell");
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    require(vertices[i + 1].x2 > vertices[i].x2,
            "make_wall: x2 must increase strictly (vertex " + std::to_string(i + 1) +
                ")");

  // Split edges longer than ell/2 with collinear midpoints.
  std::vector<WallVertex> out;
  out.push_back(vertices.front());
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const WallVertex a = vertices[i], b = vertices[i + 1];
    const double len = std::hypot(b.x1 - a.x1, b.x2 - a.x2);
    const int parts = std::max(1, static_cast<int>(std::ceil(len / (ell / 2) - 1e-12)));
    for (int p = 1; p < parts; ++p) {
      const double t = static_cast<double>(p) / parts;
      out.push_back({a.x1 + t * (b.x1 - a.x1), a.x2 + t * (b.x2 - a.x2)});
    }
    out.push_back(b);
  }
  PolygonalWall w;
  w.v = std::move(out);
  w.ell = ell;
  return w;
}

WallEdge edge_geometry(const PolygonalWall& w, int e) {
  if (e < 0 || e >= w.edges())
    throw std::invalid_argument("edge_geometry: edge index out of range");
  const double dx1 = w.v[e + 1].x1 - w.v[e].x1;
  const double dx2 = w.v[e + 1].x2 - w.v[e].x2;
  WallEdge g;
  g.len = std::hypot(dx1, dx2);
  g.tau1 = dx1 / g.len;
  g.tau2 = dx2 / g.len;
  g.n1 = -g.tau2;
  g.n2 = g.tau1;
  return g;
}

double line_density_f(double s) {
  if (!(s >= 0))
    throw std::invalid_argument("line_density_f: s must be >= 0, got " +
                                std::to_string(s));
  return s <= 1 ? 1 + s * s : 2 * s;
}

std::vector<double> limit_energy_per_edge(const PolygonalWall& w, double lambda) {
  require(lambda >= 0, "limit_energy: lambda must be >= 0");
  std::vector<double> per(static_cast<std::size_t>(w.edges()));
  const double rt = std::sqrt(lambda);
  for (int e = 0; e < w.edges(); ++e) {
    const WallEdge g = edge_geometry(w, e);
    per[static_cast<std::size_t>(e)] = 2 * line_density_f(rt * std::abs(g.n1)) * g.len;
  }
  return per;
}

double limit_energy(const PolygonalWall& w, double lambda) {
  double s = 0;
  for (double e : limit_energy_per_edge(w, lambda)) s += e;
  return s;
}

double ground_state_energy(double lambda, double ell) {
  require(lambda >= 0, "ground_state_energy: lambda must be >= 0");
  require(ell > 0, "ground_state_energy: ell must be > 0");
  return lambda <= 1 ? 2 * ell * (1 + lambda) : 4 * std::sqrt(lambda) * ell;
}

double wall_flux(const PolygonalWall& w) {
  double s = 0;
  for (int e = 0; e < w.edges(); ++e) {
    const WallEdge g = edge_geometry(w, e);
    s += -g.n1 * g.len;
  }
  return s;
}

PolygonalWall zigzag_refine(const PolygonalWall& w, double lambda, int k) {
  require(lambda > 1,
          "zigzag_refine: lambda must exceed 1 (c* = lambda^{-1/2} < 1), got " +
              std::to_string(lambda));
  require(k >= 0, "zigzag_refine: k must be >= 0 (0 = automatic)");
  const double cs = 1 / std::sqrt(lambda);
  const double rs = std::sqrt(1 - cs * cs);
  // Teeth must stay inside the strip |x1| <= 1 where the boundary condition
  // admits jumps, with a small safety margin.  Edges of an ascending wall have
  // pairwise disjoint x2-spans, so teeth can never cross another edge; the
  // strip bound is the only constraint that shrinks with k.
  const double margin_x = 1e-3;

  struct Steep {
    int e = 0;
    double lp = 0, lm = 0;  // lambda_+ and lambda_-
    Vec2 tp, tm;              // tooth tangents (lambda_+ segment leads)
    int k_min = 1;
  };
  std::vector<Steep> steep;
  for (int e = 0; e < w.edges(); ++e) {
    const WallEdge g = edge_geometry(w, e);
    if (std::abs(g.n1) <= cs) continue;
    Steep s;
    s.e = e;
    const double sg = g.n1 > 0 ? 1.0 : -1.0;
    s.lp = 0.5 * (std::abs(g.n1) / cs + g.n2 / rs);
    s.lm = 0.5 * (std::abs(g.n1) / cs - g.n2 / rs);
    // tau = (n2, -n1) applied to the tooth normals (sg*cs, +-rs).
    s.tp = {rs, -sg * cs};
    s.tm = {-rs, -sg * cs};

    // The only new vertices are the tooth tips, offset from a chord point by
    // (lp * len / k) * tp; their x1 overshoot is lp * len * rs / k toward +x1.
    const double overshoot1 = s.lp * g.len * rs;  // at k = 1
    const double chord_max = std::max(w.v[e].x1, w.v[e + 1].x1);
    const double room = 1 - margin_x - chord_max;
    if (overshoot1 > room) {
      if (room <= 0)
        throw std::invalid_argument(
            "zigzag_refine: edge " + std::to_string(e) +
            " hugs the strip boundary x1 = 1; its teeth cannot stay inside "
            "the strip");
      s.k_min = static_cast<int>(std::ceil(overshoot1 / room - 1e-12));
    }
    steep.push_back(s);
  }

  int use_k = k;
  if (k == 0) {
    use_k = 1;
    for (const Steep& s : steep) use_k = std::max(use_k, s.k_min);
  } else {
    for (const Steep& s : steep)
      if (k < s.k_min)
        throw std::invalid_argument(
            "zigzag_refine: k = " + std::to_string(k) + " pushes the teeth of edge " +
            std::to_string(s.e) + " outside the strip |x1| <= 1 (needs k >= " +
            std::to_string(s.k_min) + ")");
  }

  std::vector<WallVertex> out;
  out.push_back(w.v.front());
  std::size_t si = 0;
  for (int e = 0; e < w.edges(); ++e) {
    const bool is_steep = si < steep.size() && steep[si].e == e;
    if (!is_steep) {
      out.push_back(w.v[e + 1]);
      continue;
    }
    const Steep& s = steep[si++];
    const WallEdge g = edge_geometry(w, e);
    const Vec2 a = vertex_point(w, e);
    const double step = g.len / use_k;
    for (int p = 0; p < use_k; ++p) {
      // Period start measured along the chord to avoid drift.
      const double t0 = p * step;
      const Vec2 mid{a.x + g.tau1 * t0 + s.tp.x * (s.lp * step),
                   a.y + g.tau2 * t0 + s.tp.y * (s.lp * step)};
      out.push_back({mid.x, mid.y});
      if (p + 1 < use_k) {
        const double t1 = (p + 1) * step;
        out.push_back({a.x + g.tau1 * t1, a.y + g.tau2 * t1});
      }
    }
    out.push_back(w.v[e + 1]);
  }

  PolygonalWall r = make_wall(std::move(out), w.ell);

  // Ascending graphs cannot self-intersect; keep a brute-force scan as an
  // internal consistency assertion (period images included).
  for (int e = 0; e < r.edges(); ++e) {
    const Vec2 a = vertex_point(r, e), b = vertex_point(r, e + 1);
    for (int e2 = e + 1; e2 < r.edges(); ++e2) {
      for (int shift = -1; shift <= 1; ++shift) {
        Vec2 c = vertex_point(r, e2), d = vertex_point(r, e2 + 1);
        c.y += shift * r.ell;
        d.y += shift * r.ell;
        if (same_point(a, c) || same_point(a, d) || same_point(b, c) ||
            same_point(b, d))
          continue;
        if (segments_cross(a, b, c, d))
          throw std::logic_error("zigzag_refine: refined wall self-intersects");
      }
    }
  }
  return r;
}

MinimizerVerdict classify_minimizer(const PolygonalWall& w, double lambda) {
  require(lambda >= 0, "classify_minimizer: lambda must be >= 0");
  MinimizerVerdict v;
  v.energy = limit_energy(w, lambda);
  v.ground_state = ground_state_energy(lambda, w.ell);
  const double lo = std::min(1.0, lambda > 0 ? 1 / std::sqrt(lambda) : 1.0);
  const double tol = 1e-12;
  for (int e = 0; e < w.edges(); ++e) {
    const double mn1 = -edge_geometry(w, e).n1;
    if (mn1 < lo - tol || mn1 > 1 + tol) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "edge %d: -n1 = %.17g outside the minimizer band [%.17g, 1]",
                    e, mn1, lo);
      v.reason = buf;
      return v;
    }
  }
  v.is_minimizer = true;
  return v;
}

std::string wall_csv(const PolygonalWall& w) {
  std::string s = "x1,x2\n";
  char buf[80];
  for (const WallVertex& p : w.v) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x1, p.x2);
    s += buf;
  }
  return s;
}

PolygonalWall wall_from_csv(const std::string& text, double ell) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "wall_from_csv: empty input");
  require(line.rfind("x1", 0) == 0, "wall_from_csv: missing x1,x2 header");
  std::vector<WallVertex> v;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    require(comma != std::string::npos, "wall_from_csv: malformed line '" + line + "'");
    try {
      v.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    } catch (const std::exception&) {
      throw std::invalid_argument("wall_from_csv: malformed line '" + line + "'");
    }
  }
  return make_wall(std::move(v), ell);
}

std::string limit_energy_json(const PolygonalWall& w, double lambda) {
  nlohmann::json j;
  j["lambda"] = lambda;
  j["energy"] = limit_energy(w, lambda);
  j["per_edge"] = limit_energy_per_edge(w, lambda);
  return j.dump();
}

}  // namespace zigzag
