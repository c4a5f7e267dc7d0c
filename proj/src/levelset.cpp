#include "zigzag/levelset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/geometries.hpp>
#include <boost/geometry/geometries/point_xy.hpp>

#include "json.hpp"

namespace zigzag {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Interval arithmetic on one parameter axis.
// ---------------------------------------------------------------------------
struct Interval {
  double a = 0, b = 0;
};

void sort_and_merge(std::vector<Interval>& v) {
  if (v.empty()) return;
  std::sort(v.begin(), v.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  std::size_t w = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].a <= v[w].b) {
      v[w].b = std::max(v[w].b, v[i].b);
    } else {
      v[++w] = v[i];
    }
  }
  v.resize(w + 1);
}

// Complement of `covered` (sorted, merged) inside [lo, hi].
std::vector<Interval> complement(double lo, double hi,
                                 const std::vector<Interval>& covered) {
  std::vector<Interval> out;
  double cur = lo;
  for (const Interval& c : covered) {
    if (c.b <= cur) continue;
    if (c.a > cur) out.push_back({cur, std::min(c.a, hi)});
    cur = std::max(cur, c.b);
    if (cur >= hi) break;
  }
  if (cur < hi) out.push_back({cur, hi});
  return out;
}

std::vector<Interval> intersect(const std::vector<Interval>& A,
                                const std::vector<Interval>& B) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < A.size() && j < B.size()) {
    const double lo = std::max(A[i].a, B[j].a);
    const double hi = std::min(A[i].b, B[j].b);
    if (lo < hi) out.push_back({lo, hi});
    (A[i].b < B[j].b ? i : j) += 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edge soup shared by the offset arrangement and the distance queries.
// ---------------------------------------------------------------------------
struct EdgeSet {
  std::vector<Vec2> a, b;   // segment endpoints
  std::vector<Vec2> vert;   // chain vertices (one offset circle each)
  Vec2 lo{kInf, kInf}, hi{-kInf, -kInf};

  double diag() const {
    if (!(lo.x <= hi.x)) return 0;
    return norm(hi - lo);
  }
};

EdgeSet collect_edges(const std::vector<Chain>& chains) {
  EdgeSet es;
  for (const Chain& ch : chains) {
    const std::size_t n = ch.v.size();
    if (n == 0) continue;
    for (const Vec2& p : ch.v) {
      es.vert.push_back(p);
      es.lo.x = std::min(es.lo.x, p.x);
      es.lo.y = std::min(es.lo.y, p.y);
      es.hi.x = std::max(es.hi.x, p.x);
      es.hi.y = std::max(es.hi.y, p.y);
    }
    if (n < 2) continue;
    const std::size_t m = ch.closed ? n : n - 1;
    for (std::size_t e = 0; e < m; ++e) {
      const Vec2 pa = ch.v[e], pb = ch.v[(e + 1) % n];
      if (norm(pb - pa) > 0) {
        es.a.push_back(pa);
        es.b.push_back(pb);
      }
    }
  }
  return es;
}

// Uniform bin grid over the edges, bins inflated by the capsule radius, so a
// query with any box returns every edge whose capsule can reach it.
struct EdgeGrid {
  Vec2 origin{0, 0};
  double cell = 1;
  int nx = 1, ny = 1;
  std::vector<std::vector<int>> bins;
  mutable std::vector<int> stamp;
  mutable int tick = 0;

  void build(const EdgeSet& es, double reach) {
    const double diag = std::max(es.diag(), 1e-12);
    cell = std::max({2.5 * reach, diag / 192.0, 1e-12});
    origin = es.lo;
    nx = std::max(1, static_cast<int>((es.hi.x - es.lo.x) / cell) + 1);
    ny = std::max(1, static_cast<int>((es.hi.y - es.lo.y) / cell) + 1);
    nx = std::min(nx, 256);
    ny = std::min(ny, 256);
    bins.assign(static_cast<std::size_t>(nx) * ny, {});
    stamp.assign(es.a.size(), -1);
    tick = 0;
    for (std::size_t e = 0; e < es.a.size(); ++e) {
      const Vec2 pa = es.a[e], pb = es.b[e];
      insert_box(static_cast<int>(e),
                 {std::min(pa.x, pb.x) - reach, std::min(pa.y, pb.y) - reach},
                 {std::max(pa.x, pb.x) + reach, std::max(pa.y, pb.y) + reach});
    }
  }

  void insert_box(int id, Vec2 blo, Vec2 bhi) {
    int i0, i1, j0, j1;
    range(blo, bhi, i0, i1, j0, j1);
    for (int i = i0; i <= i1; ++i)
      for (int j = j0; j <= j1; ++j)
        bins[static_cast<std::size_t>(i) * ny + j].push_back(id);
  }

  void range(Vec2 blo, Vec2 bhi, int& i0, int& i1, int& j0, int& j1) const {
    i0 = std::clamp(static_cast<int>(std::floor((blo.x - origin.x) / cell)), 0, nx - 1);
    i1 = std::clamp(static_cast<int>(std::floor((bhi.x - origin.x) / cell)), 0, nx - 1);
    j0 = std::clamp(static_cast<int>(std::floor((blo.y - origin.y) / cell)), 0, ny - 1);
    j1 = std::clamp(static_cast<int>(std::floor((bhi.y - origin.y) / cell)), 0, ny - 1);
  }

  // Calls f(edge_id) once per distinct candidate.
  template <class F>
  void for_candidates(Vec2 blo, Vec2 bhi, F&& f) const {
    ++tick;
    int i0, i1, j0, j1;
    range(blo, bhi, i0, i1, j0, j1);
    for (int i = i0; i <= i1; ++i)
      for (int j = j0; j <= j1; ++j)
        for (int id : bins[static_cast<std::size_t>(i) * ny + j]) {
          if (stamp[static_cast<std::size_t>(id)] == tick) continue;
          stamp[static_cast<std::size_t>(id)] = tick;
          f(id);
        }
  }
};

// ---------------------------------------------------------------------------
// Offset arrangement pieces: two translated copies of every edge plus one
// circle per vertex, each clipped against the open capsule neighborhoods of
// all edges.  Traversal directions keep the neighborhood on the left.
// ---------------------------------------------------------------------------
struct Piece {
  bool arc = false;
  Vec2 p, q;      // segment endpoints, traversal p -> q
  Vec2 c;         // circle center
  double r = 0;   // circle radius; domain angle in [0, 2 pi], traversal ccw

  double dom() const { return arc ? 2 * kPi : 1.0; }
  double unit_len() const { return arc ? r : norm(q - p); }
  Vec2 at(double u) const {
    if (!arc) return p + u * (q - p);
    return c + r * Vec2{std::cos(u), std::sin(u)};
  }
  Vec2 tangent(double u) const {
    if (!arc) {
      const Vec2 d = q - p;
      return (1.0 / norm(d)) * d;
    }
    return {-std::sin(u), std::cos(u)};
  }
  Vec2 blo() const {
    if (arc) return {c.x - r, c.y - r};
    return {std::min(p.x, q.x), std::min(p.y, q.y)};
  }
  Vec2 bhi() const {
    if (arc) return {c.x + r, c.y + r};
    return {std::max(p.x, q.x), std::max(p.y, q.y)};
  }
};

std::vector<Piece> make_pieces(const EdgeSet& es, double t) {
  std::vector<Piece> ps;
  ps.reserve(2 * es.a.size() + (t > 0 ? es.vert.size() : 0));
  for (std::size_t e = 0; e < es.a.size(); ++e) {
    const Vec2 a = es.a[e], b = es.b[e];
    const Vec2 d = b - a;
    const Vec2 tau = (1.0 / norm(d)) * d;
    const Vec2 n = rot90(tau);
    Piece left;   // at +t n; neighborhood toward -n, so traverse b -> a
    left.p = b + t * n;
    left.q = a + t * n;
    ps.push_back(left);
    Piece right;  // at -t n; neighborhood toward +n, so traverse a -> b
    right.p = a - t * n;
    right.q = b - t * n;
    ps.push_back(right);
  }
  if (t > 0) {
    for (const Vec2& v : es.vert) {
      Piece circ;
      circ.arc = true;
      circ.c = v;
      circ.r = t;
      ps.push_back(circ);
    }
  }
  return ps;
}

void push_root(std::vector<double>& roots, double lo, double hi, double x) {
  const double eps = 1e-12 * (hi - lo);
  if (x > lo + eps && x < hi - eps) roots.push_back(x);
}

// A u^2 + B u + C = 0 inside (lo, hi).
void quad_roots(double A, double B, double C, double lo, double hi,
                std::vector<double>& roots) {
  if (std::abs(A) < 1e-300) {
    if (std::abs(B) > 1e-300) push_root(roots, lo, hi, -C / B);
    return;
  }
  const double disc = B * B - 4 * A * C;
  if (disc <= 0) return;
  const double s = std::sqrt(disc);
  // Numerically stable pair.
  const double q = -0.5 * (B + (B >= 0 ? s : -s));
  push_root(roots, lo, hi, q / A);
  if (std::abs(q) > 1e-300) push_root(roots, lo, hi, C / q);
}

// cos(phi - base) = k, roots normalized into (0, 2 pi).  k slightly outside
// [-1, 1] still yields the tangency root: a circle centered on an edge
// endpoint is exactly tangent to the band lines, and rounding noise must not
// lose that transition (spurious roots are harmless, the atoms between roots
// are classified independently; missing roots corrupt whole atoms).
void cos_roots(double base, double k, std::vector<double>& roots) {
  if (!(std::abs(k) <= 1.0 + 1e-6)) return;
  const double a = std::acos(std::clamp(k, -1.0, 1.0));
  for (double x : {base + a, base - a}) {
    double y = std::fmod(x, 2 * kPi);
    if (y < 0) y += 2 * kPi;
    push_root(roots, 0, 2 * kPi, y);
  }
}

bool strictly_inside_capsule(Vec2 x, Vec2 a, Vec2 b, double t) {
  return point_segment_distance(x, a, b) < t * (1.0 - 1e-12);
}

// Appends to `covered` the parameter intervals of `pc` lying strictly inside
// the open capsule of radius t around edge [ea, eb].  All candidate
// transition parameters are collected analytically; atoms between them are
// classified by one exact distance test at the midpoint.
void cover_with_capsule(const Piece& pc, Vec2 ea, Vec2 eb, double t,
                        std::vector<double>& roots,
                        std::vector<Interval>& covered) {
  roots.clear();
  const double dom = pc.dom();
  const Vec2 eD = eb - ea;
  const double eL = norm(eD);
  if (!pc.arc) {
    const Vec2 d = pc.q - pc.p;
    for (const Vec2& cpt : {ea, eb}) {
      const Vec2 w = pc.p - cpt;
      quad_roots(dot(d, d), 2 * dot(d, w), dot(w, w) - t * t, 0, dom, roots);
    }
    if (eL > 0) {
      const Vec2 nh = rot90((1.0 / eL) * eD);
      const double c0 = dot(pc.p - ea, nh);
      const double c1 = dot(d, nh);
      if (std::abs(c1) > 1e-300) {
        push_root(roots, 0, dom, (t - c0) / c1);
        push_root(roots, 0, dom, (-t - c0) / c1);
      }
    }
  } else {
    for (const Vec2& cpt : {ea, eb}) {
      const Vec2 w = pc.c - cpt;
      const double W = norm(w);
      if (W > 1e-300) {
        const double k = (t * t - W * W - pc.r * pc.r) / (2 * pc.r * W);
        cos_roots(std::atan2(w.y, w.x), k, roots);
      }
    }
    if (eL > 0) {
      const Vec2 nh = rot90((1.0 / eL) * eD);
      const double c0 = dot(pc.c - ea, nh);
      const double base = std::atan2(nh.y, nh.x);
      cos_roots(base, (t - c0) / pc.r, roots);
      cos_roots(base, (-t - c0) / pc.r, roots);
    }
  }
  std::sort(roots.begin(), roots.end());
  double prev = 0;
  const double tiny = 1e-12 * dom;
  auto close_atom = [&](double cur) {
    if (cur - prev > tiny &&
        strictly_inside_capsule(pc.at(0.5 * (prev + cur)), ea, eb, t)) {
      covered.push_back({prev, cur});
    }
    prev = cur;
  };
  for (double rt : roots) close_atom(rt);
  close_atom(dom);
}

// Parameter intervals of `pc` inside the open disk (center wc, radius R).
std::vector<Interval> inside_disk(const Piece& pc, Vec2 wc, double R,
                                  std::vector<double>& roots) {
  roots.clear();
  const double dom = pc.dom();
  if (!pc.arc) {
    const Vec2 d = pc.q - pc.p;
    const Vec2 w = pc.p - wc;
    quad_roots(dot(d, d), 2 * dot(d, w), dot(w, w) - R * R, 0, dom, roots);
  } else {
    const Vec2 w = pc.c - wc;
    const double W = norm(w);
    if (W > 1e-300) {
      const double k = (R * R - W * W - pc.r * pc.r) / (2 * pc.r * W);
      cos_roots(std::atan2(w.y, w.x), k, roots);
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<Interval> in;
  double prev = 0;
  const double tiny = 1e-12 * dom;
  auto close_atom = [&](double cur) {
    if (cur - prev > tiny && norm(pc.at(0.5 * (prev + cur)) - wc) < R) {
      in.push_back({prev, cur});
    }
    prev = cur;
  };
  for (double rt : roots) close_atom(rt);
  close_atom(dom);
  return in;
}

struct Arrangement {
  std::vector<Piece> pieces;
  std::vector<std::vector<Interval>> kept;
  double scale = 1;
};

double bbox_gap(Vec2 alo, Vec2 ahi, Vec2 blo, Vec2 bhi) {
  const double gx = std::max({0.0, blo.x - ahi.x, alo.x - bhi.x});
  const double gy = std::max({0.0, blo.y - ahi.y, alo.y - bhi.y});
  return std::hypot(gx, gy);
}

Arrangement build_arrangement(const std::vector<Chain>& chains, double t,
                              const std::optional<Window>& window) {
  const EdgeSet es = collect_edges(chains);
  Arrangement ar;
  ar.scale = std::max(1.0, es.diag() + t);
  if (es.a.empty() && es.vert.empty()) return ar;
  ar.pieces = make_pieces(es, t);
  EdgeGrid grid;
  grid.build(es, t);
  ar.kept.resize(ar.pieces.size());
  std::vector<double> roots;
  std::vector<Interval> covered;
  for (std::size_t pi = 0; pi < ar.pieces.size(); ++pi) {
    const Piece& pc = ar.pieces[pi];
    const Vec2 blo = pc.blo(), bhi = pc.bhi();
    if (window) {
      // Entirely outside the window: nothing survives, skip the clipping.
      const double gap = bbox_gap(blo, bhi, {window->center.x, window->center.y},
                                  {window->center.x, window->center.y});
      if (gap >= window->radius) continue;
    }
    covered.clear();
    auto clip_candidate = [&](int id) {
      const Vec2 ea = es.a[static_cast<std::size_t>(id)];
      const Vec2 eb = es.b[static_cast<std::size_t>(id)];
      const Vec2 elo{std::min(ea.x, eb.x) - t, std::min(ea.y, eb.y) - t};
      const Vec2 ehi{std::max(ea.x, eb.x) + t, std::max(ea.y, eb.y) + t};
      if (bbox_gap(blo, bhi, elo, ehi) > 0) return;
      cover_with_capsule(pc, ea, eb, t, roots, covered);
    };
    grid.for_candidates(blo, bhi, clip_candidate);
    sort_and_merge(covered);
    std::vector<Interval> kept = complement(0, pc.dom(), covered);
    if (window) kept = intersect(kept, inside_disk(pc, window->center, window->radius, roots));
    ar.kept[pi] = std::move(kept);
  }
  return ar;
}

double kept_length(const Arrangement& ar) {
  double L = 0;
  for (std::size_t pi = 0; pi < ar.pieces.size(); ++pi) {
    const double ul = ar.pieces[pi].unit_len();
    for (const Interval& iv : ar.kept[pi]) L += (iv.b - iv.a) * ul;
  }
  return L;
}

// Euler characteristic by Gauss-Bonnet: total turning of the clipped
// arrangement (arc sweeps plus corner turns at junctions) over 2 pi.
// Junctions are recovered by geometric matching of kept-interval endpoints;
// a degenerate match (merging-time tangency) returns false.
bool euler_attempt(const Arrangement& ar, int* chi) {
  struct EndPt {
    Vec2 pos, tan;
    bool start = false;
    bool used = false;
  };
  std::vector<EndPt> ends;
  double turn = 0;
  for (std::size_t pi = 0; pi < ar.pieces.size(); ++pi) {
    const Piece& pc = ar.pieces[pi];
    for (const Interval& iv : ar.kept[pi]) {
      if (iv.b - iv.a < 1e-12 * pc.dom()) continue;
      if (pc.arc) turn += iv.b - iv.a;
      ends.push_back({pc.at(iv.a), pc.tangent(iv.a), true, false});
      ends.push_back({pc.at(iv.b), pc.tangent(iv.b), false, false});
    }
  }
  if (ends.empty()) {
    *chi = 0;
    return true;
  }
  // Tangency roots (vertex circle touching an edge offset) carry an inherent
  // sqrt(machine-epsilon) placement error of order 1e-8 * scale, so the
  // junction match must be looser than that while staying far below the
  // feature separation of a nondegenerate arrangement.
  const double tol = 1e-7 * ar.scale;
  const double cell = 8 * tol;
  auto key = [&](double x, double y) {
    const auto ix = static_cast<std::int64_t>(std::floor(x / cell));
    const auto iy = static_cast<std::int64_t>(std::floor(y / cell));
    return (ix << 21) ^ iy;
  };
  std::unordered_multimap<std::int64_t, int> hash;
  hash.reserve(ends.size() * 2);
  for (std::size_t i = 0; i < ends.size(); ++i)
    hash.emplace(key(ends[i].pos.x, ends[i].pos.y), static_cast<int>(i));
  for (std::size_t i = 0; i < ends.size(); ++i) {
    if (ends[i].used) continue;
    ends[i].used = true;
    int partner = -1;
    int found = 0;
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        const auto range = hash.equal_range(
            key(ends[i].pos.x + dx * cell, ends[i].pos.y + dy * cell));
        for (auto it = range.first; it != range.second; ++it) {
          const int j = it->second;
          if (j == static_cast<int>(i) || ends[static_cast<std::size_t>(j)].used)
            continue;
          if (norm(ends[static_cast<std::size_t>(j)].pos - ends[i].pos) <= tol) {
            ++found;
            partner = j;
          }
        }
      }
    }
    if (found != 1) return false;  // isolated or ambiguous: degenerate t
    EndPt& other = ends[static_cast<std::size_t>(partner)];
    other.used = true;
    if (ends[i].start == other.start) return false;  // inconsistent traversal
    const EndPt& in = ends[i].start ? other : ends[i];
    const EndPt& out = ends[i].start ? ends[i] : other;
    turn += std::atan2(cross(in.tan, out.tan), dot(in.tan, out.tan));
  }
  const double w = turn / (2 * kPi);
  *chi = static_cast<int>(std::llround(w));
  return std::abs(w - *chi) < 0.02;
}

// ---------------------------------------------------------------------------
// Point-in-polygon and distances.
// ---------------------------------------------------------------------------
bool point_in_loop(const Chain& loop, Vec2 p) {
  bool in = false;
  const std::size_t n = loop.v.size();
  for (std::size_t e = 0; e < n; ++e) {
    const Vec2 a = loop.v[e], b = loop.v[(e + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xi = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (xi > p.x) in = !in;
    }
  }
  return in;
}

double min_distance_to_chain(Vec2 p, const Chain& ch) {
  double d = kInf;
  const std::size_t n = ch.v.size();
  if (n == 1) return norm(p - ch.v[0]);
  const std::size_t m = ch.closed ? n : n - 1;
  for (std::size_t e = 0; e < m; ++e)
    d = std::min(d, point_segment_distance(p, ch.v[e], ch.v[(e + 1) % n]));
  return d;
}

// Minimum distance between two chain sets, with bounding-box pruning seeded
// by a coarse vertex pass.
double chains_distance(const std::vector<Chain>& A, const std::vector<Chain>& B) {
  double best = kInf;
  for (const Chain& ca : A) {
    const std::size_t step = std::max<std::size_t>(1, ca.v.size() / 32);
    for (std::size_t i = 0; i < ca.v.size(); i += step)
      for (const Chain& cb : B) best = std::min(best, min_distance_to_chain(ca.v[i], cb));
  }
  for (const Chain& ca : A) {
    const std::size_t na = ca.v.size();
    const std::size_t ma = ca.closed ? na : (na > 0 ? na - 1 : 0);
    for (std::size_t e = 0; e < ma; ++e) {
      const Vec2 a0 = ca.v[e], a1 = ca.v[(e + 1) % na];
      const Vec2 alo{std::min(a0.x, a1.x), std::min(a0.y, a1.y)};
      const Vec2 ahi{std::max(a0.x, a1.x), std::max(a0.y, a1.y)};
      for (const Chain& cb : B) {
        const std::size_t nb = cb.v.size();
        const std::size_t mb = cb.closed ? nb : (nb > 0 ? nb - 1 : 0);
        for (std::size_t f = 0; f < mb; ++f) {
          const Vec2 b0 = cb.v[f], b1 = cb.v[(f + 1) % nb];
          const Vec2 blo{std::min(b0.x, b1.x), std::min(b0.y, b1.y)};
          const Vec2 bhi{std::max(b0.x, b1.x), std::max(b0.y, b1.y)};
          if (bbox_gap(alo, ahi, blo, bhi) >= best) continue;
          best = std::min(best, segment_segment_distance(a0, a1, b0, b1));
        }
      }
    }
  }
  return best;
}

// Any strict interior crossing between segments of one loop (sweep over
// x-sorted edge boxes keeps typical inputs near-linear).
bool loop_self_intersects(const Chain& loop) {
  const std::size_t n = loop.v.size();
  struct Box {
    double x0, x1, y0, y1;
    std::size_t e;
  };
  std::vector<Box> boxes(n);
  for (std::size_t e = 0; e < n; ++e) {
    const Vec2 a = loop.v[e], b = loop.v[(e + 1) % n];
    boxes[e] = {std::min(a.x, b.x), std::max(a.x, b.x),
                std::min(a.y, b.y), std::max(a.y, b.y), e};
  }
  std::sort(boxes.begin(), boxes.end(),
            [](const Box& p, const Box& q) { return p.x0 < q.x0; });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && boxes[j].x0 <= boxes[i].x1; ++j) {
      if (boxes[j].y0 > boxes[i].y1 || boxes[i].y0 > boxes[j].y1) continue;
      const std::size_t e = boxes[i].e, f = boxes[j].e;
      if (segments_cross(loop.v[e], loop.v[(e + 1) % n], loop.v[f],
                         loop.v[(f + 1) % n]))
        return true;
    }
  }
  return false;
}

bool loops_cross(const Chain& A, const Chain& B) {
  const std::size_t na = A.v.size(), nb = B.v.size();
  for (std::size_t e = 0; e < na; ++e)
    for (std::size_t f = 0; f < nb; ++f)
      if (segments_cross(A.v[e], A.v[(e + 1) % na], B.v[f], B.v[(f + 1) % nb]))
        return true;
  return false;
}

double region_scale(const PolygonalRegion& rg) {
  Vec2 lo{kInf, kInf}, hi{-kInf, -kInf};
  for (const Chain& ch : rg.loops)
    for (const Vec2& p : ch.v) {
      lo.x = std::min(lo.x, p.x);
      lo.y = std::min(lo.y, p.y);
      hi.x = std::max(hi.x, p.x);
      hi.y = std::max(hi.y, p.y);
    }
  return std::max(1.0, norm(hi - lo));
}

double min_distance_to_region_boundary(Vec2 p, const PolygonalRegion& rg) {
  double d = kInf;
  for (const Chain& ch : rg.loops) d = std::min(d, min_distance_to_chain(p, ch));
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Chains and regions.
// ---------------------------------------------------------------------------
double Chain::length() const {
  const std::size_t n = v.size();
  if (n < 2) return 0;
  double L = 0;
  const std::size_t m = closed ? n : n - 1;
  for (std::size_t e = 0; e < m; ++e) L += norm(v[(e + 1) % n] - v[e]);
  return L;
}

double PolygonalRegion::perimeter() const {
  double L = 0;
  for (const Chain& ch : loops) L += ch.length();
  return L;
}

bool PolygonalRegion::contains(Vec2 p) const {
  int count = 0;
  for (const Chain& ch : loops) count += point_in_loop(ch, p) ? 1 : 0;
  return count % 2 == 1;
}

PolygonalRegion make_region(std::vector<std::vector<Vec2>> loops) {
  if (loops.empty()) throw std::invalid_argument("make_region: no loops given");
  double scale = 1;
  for (const auto& lp : loops)
    for (const Vec2& p : lp) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument("make_region: non-finite vertex coordinate");
      scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    }
  // Drop consecutive duplicates (including the wrap pair).
  for (auto& lp : loops) {
    std::vector<Vec2> out;
    for (const Vec2& p : lp) {
      if (out.empty() || norm(p - out.back()) > 1e-12 * scale) out.push_back(p);
    }
    while (out.size() > 1 && norm(out.front() - out.back()) <= 1e-12 * scale)
      out.pop_back();
    if (out.size() < 3)
      throw std::invalid_argument(
          "make_region: a loop needs at least 3 distinct vertices");
    lp = std::move(out);
  }

  PolygonalRegion rg;
  std::mt19937_64 rng(0x1ef5e7);  // deterministic tie-breaking jitter
  for (int round = 0;; ++round) {
    rg.loops.clear();
    for (auto& lp : loops) rg.loops.push_back(Chain{lp, true});
    for (std::size_t k = 0; k < rg.loops.size(); ++k)
      if (loop_self_intersects(rg.loops[k]))
        throw std::invalid_argument("make_region: loop " + std::to_string(k) +
                                    " self-intersects");
    for (std::size_t i = 0; i < rg.loops.size(); ++i)
      for (std::size_t j = i + 1; j < rg.loops.size(); ++j)
        if (loops_cross(rg.loops[i], rg.loops[j]))
          throw std::invalid_argument("make_region: loops " + std::to_string(i) +
                                      " and " + std::to_string(j) + " cross");
    // Pairwise distances: positive, and pairwise distinct (jitter on ties).
    std::vector<double> dists;
    bool tie = false;
    for (std::size_t i = 0; i < rg.loops.size() && !tie; ++i) {
      for (std::size_t j = i + 1; j < rg.loops.size(); ++j) {
        const double d = chains_distance({rg.loops[i]}, {rg.loops[j]});
        if (d <= 1e-12 * scale)
          throw std::invalid_argument("make_region: loops " + std::to_string(i) +
                                      " and " + std::to_string(j) +
                                      " touch; separate them");
        dists.push_back(d);
      }
    }
    std::sort(dists.begin(), dists.end());
    for (std::size_t i = 0; i + 1 < dists.size(); ++i)
      if (dists[i + 1] - dists[i] < 1e-9 * scale) tie = true;
    if (!tie) break;
    if (round >= 3)
      throw std::invalid_argument(
          "make_region: loop distances stay tied after jitter");
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (auto& lp : loops)
      for (Vec2& p : lp) {
        p.x += 1e-9 * scale * U(rng);
        p.y += 1e-9 * scale * U(rng);
      }
    rg.jittered = true;
  }

  // Containment tree (loops are disjoint, so one vertex decides).
  const std::size_t n = rg.loops.size();
  std::vector<std::vector<char>> inside(n, std::vector<char>(n, 0));
  rg.depth.assign(n, 0);
  rg.parent.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (i != k && point_in_loop(rg.loops[i], rg.loops[k].v[0])) {
        inside[i][k] = 1;
        rg.depth[k] += 1;
      }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      if (inside[i][k] && rg.depth[i] == rg.depth[k] - 1)
        rg.parent[k] = static_cast<int>(i);
    if (rg.depth[k] > 0 && rg.parent[k] < 0)
      throw std::logic_error("make_region: containment tree inconsistent");
  }
  return rg;
}

// ---------------------------------------------------------------------------
// Level-set lengths and Euler characteristic.
// ---------------------------------------------------------------------------
double level_set_length(const std::vector<Chain>& chains, double t,
                        const std::optional<Window>& window, bool* degenerate) {
  if (!(t >= 0))
    throw std::invalid_argument("level_set_length: t must be nonnegative");
  const Arrangement ar = build_arrangement(chains, t, window);
  const double L = kept_length(ar);
  if (degenerate) *degenerate = (L == 0);
  return L;
}

double offset_length(const PolygonalRegion& region, double t,
                     const std::optional<Window>& window, bool* degenerate) {
  return level_set_length(region.loops, t, window, degenerate);
}

int neighborhood_euler(const PolygonalRegion& region, double t,
                       bool* perturbed) {
  if (!(t > 0))
    throw std::invalid_argument("neighborhood_euler: t must be positive");
  // Retry offsets are relative to the geometry scale: a merging-time
  // degeneracy opens up like sqrt(dt), so the shift must clear the junction
  // tolerance with room to spare.
  double sc = 1.0;
  for (const Chain& c : region.loops)
    for (const Vec2& p : c.v) sc = std::max({sc, std::abs(p.x), std::abs(p.y)});
  const std::array<double, 5> offsets{0.0, 1e-6 * sc, -1e-6 * sc, 1e-4 * sc,
                                      -1e-4 * sc};
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    const double tt = t + offsets[k];
    if (!(tt > 0)) continue;
    const Arrangement ar = build_arrangement(region.loops, tt, std::nullopt);
    int chi = 0;
    if (euler_attempt(ar, &chi)) {
      if (perturbed) *perturbed = (k > 0);
      return chi;
    }
  }
  throw std::runtime_error(
      "neighborhood_euler: offset arrangement stays degenerate near t = " +
      std::to_string(t));
}

double level_set_length_raster(const std::vector<Chain>& chains, double t,
                               const std::optional<Window>& window,
                               int resolution) {
  if (!(t > 0))
    throw std::invalid_argument("level_set_length_raster: t must be positive");
  if (resolution < 8)
    throw std::invalid_argument("level_set_length_raster: resolution too small");
  const EdgeSet es = collect_edges(chains);
  if (es.a.empty() && es.vert.empty()) return 0;
  const Vec2 lo{es.lo.x - 1.5 * t, es.lo.y - 1.5 * t};
  const Vec2 hi{es.hi.x + 1.5 * t, es.hi.y + 1.5 * t};
  const double h = std::max(hi.x - lo.x, hi.y - lo.y) / resolution;
  const int nx = static_cast<int>((hi.x - lo.x) / h) + 2;
  const int ny = static_cast<int>((hi.y - lo.y) / h) + 2;
  auto dist = [&](double x, double y) {
    double d = kInf;
    for (std::size_t e = 0; e < es.a.size(); ++e)
      d = std::min(d, point_segment_distance({x, y}, es.a[e], es.b[e]));
    if (es.a.empty())
      for (const Vec2& v : es.vert) d = std::min(d, norm(Vec2{x, y} - v));
    return d;
  };
  std::vector<double> f(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      f[static_cast<std::size_t>(i) * ny + j] =
          dist(lo.x + i * h, lo.y + j * h) - t;
  double L = 0;
  for (int i = 0; i + 1 < nx; ++i) {
    for (int j = 0; j + 1 < ny; ++j) {
      const double x0 = lo.x + i * h, y0 = lo.y + j * h;
      if (window) {
        const Vec2 cc{x0 + 0.5 * h, y0 + 0.5 * h};
        if (norm(cc - window->center) > window->radius) continue;
      }
      const double fa = f[static_cast<std::size_t>(i) * ny + j];
      const double fb = f[static_cast<std::size_t>(i + 1) * ny + j];
      const double fc = f[static_cast<std::size_t>(i + 1) * ny + j + 1];
      const double fd = f[static_cast<std::size_t>(i) * ny + j + 1];
      auto cut = [](double u, double v) { return u / (u - v); };
      std::vector<Vec2> pts;  // crossing points on cell edges, in edge order
      std::vector<int> side;  // 0 bottom, 1 right, 2 top, 3 left
      if ((fa < 0) != (fb < 0)) {
        pts.push_back({x0 + h * cut(fa, fb), y0});
        side.push_back(0);
      }
      if ((fb < 0) != (fc < 0)) {
        pts.push_back({x0 + h, y0 + h * cut(fb, fc)});
        side.push_back(1);
      }
      if ((fc < 0) != (fd < 0)) {
        pts.push_back({x0 + h * cut(fd, fc), y0 + h});
        side.push_back(2);
      }
      if ((fd < 0) != (fa < 0)) {
        pts.push_back({x0, y0 + h * cut(fa, fd)});
        side.push_back(3);
      }
      if (pts.size() == 2) {
        L += norm(pts[1] - pts[0]);
      } else if (pts.size() == 4) {
        // Saddle: resolve the pairing with the center sample.
        const double fm = dist(x0 + 0.5 * h, y0 + 0.5 * h) - t;
        if ((fm < 0) == (fa < 0)) {
          L += norm(pts[0] - pts[1]) + norm(pts[2] - pts[3]);
        } else {
          L += norm(pts[3] - pts[0]) + norm(pts[1] - pts[2]);
        }
      }
    }
  }
  return L;
}

// ---------------------------------------------------------------------------
// Global decomposition.
// ---------------------------------------------------------------------------
std::vector<int> LevelSetDecomposition::selected_loops() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < selected.size(); ++k)
    if (selected[k]) out.push_back(static_cast<int>(k));
  return out;
}

std::vector<int> LevelSetDecomposition::residual_loops() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < selected.size(); ++k)
    if (!selected[k]) out.push_back(static_cast<int>(k));
  return out;
}

bool LevelSetDecomposition::omega0_contains(Vec2 p) const {
  int best = -1;
  for (std::size_t k = 0; k < region.loops.size(); ++k)
    if (selected[k] && point_in_loop(region.loops[k], p))
      if (best < 0 || region.depth[k] > region.depth[best])
        best = static_cast<int>(k);
  return best >= 0 && region.depth[best] % 2 == 0;
}

bool LevelSetDecomposition::omega1_contains(Vec2 p) const {
  int deep = -1;
  for (std::size_t k = 0; k < region.loops.size(); ++k)
    if (point_in_loop(region.loops[k], p))
      if (deep < 0 || region.depth[k] > region.depth[deep])
        deep = static_cast<int>(k);
  if (deep < 0) return false;
  if (selected[static_cast<std::size_t>(deep)]) return false;
  int anc = region.parent[static_cast<std::size_t>(deep)];
  while (anc >= 0 && !selected[static_cast<std::size_t>(anc)])
    anc = region.parent[static_cast<std::size_t>(anc)];
  const bool in_region = region.depth[deep] % 2 == 0;
  const bool in_core = anc >= 0 && region.depth[anc] % 2 == 0;
  return in_region != in_core;
}

LevelSetDecomposition decompose_global(const PolygonalRegion& region,
                                       double delta0, int offset_samples) {
  const double P = region.perimeter();
  if (!(delta0 > 0) || !(delta0 < P / (2 * kPi)))
    throw std::invalid_argument(
        "decompose_global: delta0 must lie in (0, boundary length / (2 pi))");
  const std::size_t n = region.loops.size();
  std::vector<double> len(n);
  for (std::size_t k = 0; k < n; ++k) len[k] = region.loops[k].length();
  std::vector<std::vector<double>> D(n, std::vector<double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      D[i][j] = D[j][i] =
          chains_distance({region.loops[i]}, {region.loops[j]});

  LevelSetDecomposition dec;
  dec.region = region;
  dec.delta0 = delta0;
  dec.selected.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    if (len[k] >= 2 * kPi * delta0 * (1 - 1e-12)) dec.selected[k] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (dec.selected[k]) continue;
      double dmin = kInf;
      for (std::size_t j = 0; j < n; ++j)
        if (dec.selected[j]) dmin = std::min(dmin, D[k][j]);
      if (len[k] >= 2 * kPi * dmin * (1 - 1e-12)) {
        dec.selected[k] = 1;
        changed = true;
      }
    }
  }

  const double scale = region_scale(region);
  GlobalChecks& ck = dec.checks;
  ck.min_loop_margin = kInf;
  std::vector<Chain> core;
  for (std::size_t k = 0; k < n; ++k)
    if (dec.selected[k]) {
      core.push_back(region.loops[k]);
      ck.boundary_length += len[k];
    }
  for (std::size_t k = 0; k < n; ++k) {
    if (dec.selected[k]) continue;
    double dmin = kInf;
    for (std::size_t j = 0; j < n; ++j)
      if (dec.selected[j]) dmin = std::min(dmin, D[k][j]);
    const double bound = 2 * kPi * std::min(delta0, dmin);
    const double margin = bound - len[k];
    ck.min_loop_margin = std::min(ck.min_loop_margin, margin);
    if (margin < -1e-9 * scale) ck.loop_bound_ok = false;
  }
  if (!std::isfinite(ck.min_loop_margin)) ck.min_loop_margin = 0;

  if (offset_samples > 0 && !core.empty()) {
    for (int i = 1; i <= offset_samples; ++i) {
      const double t = delta0 * i / offset_samples;
      const double L = level_set_length(core, t);
      ck.sampled_t.push_back(t);
      ck.max_offset_ratio =
          std::max(ck.max_offset_ratio, L / (2 * ck.boundary_length));
      if (L > 2 * ck.boundary_length + 1e-9 * std::max(1.0, ck.boundary_length))
        ck.offset_bound_ok = false;
    }
  }

  // Membership consistency: the input region must equal the symmetric
  // difference of the two output sets (omega1_contains evaluates the
  // residual set independently from the containment tree).
  {
    Vec2 lo{kInf, kInf}, hi{-kInf, -kInf};
    for (const Chain& ch : region.loops)
      for (const Vec2& p : ch.v) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
      }
    std::mt19937_64 rng(20250822);
    std::uniform_real_distribution<double> Ux(lo.x, hi.x), Uy(lo.y, hi.y);
    int tried = 0;
    while (tried < 100) {
      const Vec2 p{Ux(rng), Uy(rng)};
      if (min_distance_to_region_boundary(p, region) < 2e-7 * scale) continue;
      ++tried;
      const bool lhs = region.contains(p);
      const bool rhs = dec.omega0_contains(p) != dec.omega1_contains(p);
      if (lhs != rhs) ++ck.membership_mismatches;
    }
  }
  return dec;
}

// ---------------------------------------------------------------------------
// Local decomposition (ball clip + annulus straightening), built on
// boost::geometry polygon booleans with a fixed-lattice polygonal circle.
// ---------------------------------------------------------------------------
namespace {

namespace bgeo = boost::geometry;
using BPoint = bgeo::model::d2::point_xy<double>;
using BRing = bgeo::model::ring<BPoint, false, true>;          // ccw, closed
using BPoly = bgeo::model::polygon<BPoint, false, true>;
using BMulti = bgeo::model::multi_polygon<BPoly>;

constexpr int kCircleN = 1024;

// One shared angle lattice so that every circle and sector reuses bit-equal
// vertices and boolean seams stay exact.
Vec2 lattice_dir(int i) {
  const double a = (i + 0.5) * (2 * kPi / kCircleN);
  return {std::cos(a), std::sin(a)};
}

double lattice_angle(int i) { return (i + 0.5) * (2 * kPi / kCircleN); }

BPoly ngon_disk(Vec2 c, double r) {
  BPoly poly;
  for (int i = 0; i < kCircleN; ++i) {
    const Vec2 d = lattice_dir(i);
    bgeo::append(poly.outer(), BPoint(c.x + r * d.x, c.y + r * d.y));
  }
  bgeo::correct(poly);
  return poly;
}

BPoly ngon_annulus(Vec2 c, double r_out, double r_in) {
  BPoly poly = ngon_disk(c, r_out);
  poly.inners().resize(1);
  for (int i = 0; i < kCircleN; ++i) {
    const Vec2 d = lattice_dir(i);
    bgeo::append(poly.inners()[0], BPoint(c.x + r_in * d.x, c.y + r_in * d.y));
  }
  bgeo::correct(poly);
  return poly;
}

BMulti region_to_multi(const PolygonalRegion& rg) {
  BMulti out;
  for (std::size_t k = 0; k < rg.loops.size(); ++k) {
    if (rg.depth[k] % 2 != 0) continue;
    BPoly poly;
    for (const Vec2& p : rg.loops[k].v)
      bgeo::append(poly.outer(), BPoint(p.x, p.y));
    for (std::size_t j = 0; j < rg.loops.size(); ++j) {
      if (rg.parent[j] == static_cast<int>(k)) {
        BRing hole;
        for (const Vec2& p : rg.loops[j].v) bgeo::append(hole, BPoint(p.x, p.y));
        poly.inners().push_back(hole);
      }
    }
    bgeo::correct(poly);
    out.push_back(poly);
  }
  return out;
}

std::vector<std::vector<Vec2>> multi_to_loops(const BMulti& m, double scale) {
  std::vector<std::vector<Vec2>> loops;
  auto push_ring = [&](const BRing& ring) {
    std::vector<Vec2> lp;
    for (const BPoint& p : ring) lp.push_back({p.x(), p.y()});
    if (!lp.empty()) lp.pop_back();  // closing point
    // Degenerate sliver rings are boolean noise.
    double area2 = 0;
    for (std::size_t e = 0; e < lp.size(); ++e)
      area2 += cross(lp[e], lp[(e + 1) % lp.size()]);
    if (lp.size() >= 3 && std::abs(0.5 * area2) > (1e-9 * scale) * (1e-9 * scale))
      loops.push_back(lp);
  };
  for (const BPoly& poly : m) {
    push_ring(poly.outer());
    for (const BRing& hole : poly.inners()) push_ring(hole);
  }
  return loops;
}

// Length of a component's ring edges lying on the circle of radius r.
double length_on_circle(const BPoly& poly, Vec2 c, double r, double tol) {
  double L = 0;
  auto scan = [&](const BRing& ring) {
    const std::size_t n = ring.size();
    for (std::size_t e = 0; e + 1 < n; ++e) {
      const Vec2 a{ring[e].x(), ring[e].y()};
      const Vec2 b{ring[e + 1].x(), ring[e + 1].y()};
      if (std::abs(norm(a - c) - r) <= tol && std::abs(norm(b - c) - r) <= tol)
        L += norm(b - a);
    }
  };
  scan(poly.outer());
  for (const BRing& hole : poly.inners()) scan(hole);
  return L;
}

double centroid_angle(const BPoly& poly, Vec2 c) {
  BPoint ct(c.x, c.y);
  bgeo::centroid(poly, ct);
  return std::atan2(ct.y() - c.y, ct.x() - c.x);
}

// Exact length of the region's boundary inside the open disk.
double boundary_length_in_disk(const PolygonalRegion& rg, Vec2 c, double R) {
  double L = 0;
  for (const Chain& ch : rg.loops) {
    const std::size_t n = ch.v.size();
    for (std::size_t e = 0; e < n; ++e) {
      const Vec2 a = ch.v[e], b = ch.v[(e + 1) % n];
      const Vec2 d = b - a, w = a - c;
      const double A = dot(d, d), B = 2 * dot(d, w), C = dot(w, w) - R * R;
      if (A < 1e-300) continue;
      double s0 = 0, s1 = 0;
      const double disc = B * B - 4 * A * C;
      if (disc <= 0) continue;  // outside (or tangent, measure zero)
      const double sq = std::sqrt(disc);
      s0 = (-B - sq) / (2 * A);
      s1 = (-B + sq) / (2 * A);
      const double mlo = std::max(0.0, s0), mhi = std::min(1.0, s1);
      if (mhi > mlo) L += (mhi - mlo) * std::sqrt(A);
    }
  }
  return L;
}

}  // namespace

LocalDecomposition decompose_local(const PolygonalRegion& region, Vec2 center,
                                   double rho, double delta0) {
  if (!(rho > 0) || !(delta0 > 0))
    throw std::invalid_argument(
        "decompose_local: rho and delta0 must be positive");
  const double in_ball = boundary_length_in_disk(region, center, rho);
  if (2 * kPi * delta0 > rho / 8 * (1 + 1e-12) ||
      2 * kPi * delta0 > in_ball * (1 + 1e-12))
    throw std::invalid_argument(
        "decompose_local: need 2 pi delta0 <= min{rho / 8, boundary length in "
        "the ball}");

  const double r_in = rho - 2 * delta0;
  const BPoly disk_rho = ngon_disk(center, rho);
  const BPoly disk_in = ngon_disk(center, r_in);
  const BPoly annulus = ngon_annulus(center, rho, r_in);
  const double tolR = 6e-6 * rho;
  const double len_tol = 1e-9 * rho;

  BMulti omt;
  bgeo::intersection(region_to_multi(region), disk_rho, omt);
  if (omt.empty())
    throw std::invalid_argument(
        "decompose_local: the region does not meet the ball");

  LocalDecomposition out;
  out.center = center;
  out.rho = rho;
  out.delta0 = delta0;

  // Iteratively remove annulus material components and fill annulus holes
  // that miss the outer circle or meet the inner circle only briefly; each
  // step strictly reduces the number of annulus components, so this stops.
  struct AnnComp {
    BPoly poly;
    double on_out = 0, on_in = 0, ang = 0;
    bool material = false;
  };
  auto gather = [&](BMulti& uc, BMulti& vc) {
    uc.clear();
    vc.clear();
    bgeo::intersection(omt, annulus, uc);
    bgeo::difference(annulus, omt, vc);
  };
  for (int guard = 0;; ++guard) {
    if (guard > 400)
      throw std::logic_error("decompose_local: modification loop did not stop");
    BMulti uc, vc;
    gather(uc, vc);
    std::vector<AnnComp> cands;
    auto consider = [&](const BPoly& poly, bool material) {
      AnnComp ac;
      ac.poly = poly;
      ac.material = material;
      ac.on_out = length_on_circle(poly, center, rho, tolR);
      ac.on_in = length_on_circle(poly, center, r_in, tolR);
      ac.ang = centroid_angle(poly, center);
      if (ac.on_out < len_tol || ac.on_in <= 4 * delta0 * (1 + 1e-9) + len_tol)
        cands.push_back(std::move(ac));
    };
    for (const BPoly& poly : uc) consider(poly, true);
    for (const BPoly& poly : vc) consider(poly, false);
    if (cands.empty()) break;
    std::sort(cands.begin(), cands.end(), [](const AnnComp& a, const AnnComp& b) {
      if (a.ang != b.ang) return a.ang < b.ang;
      return a.material && !b.material;
    });
    const AnnComp& pick = cands.front();
    BMulti next;
    if (pick.material) {
      bgeo::difference(omt, pick.poly, next);
      ++out.removed;
    } else {
      bgeo::union_(omt, pick.poly, next);
      ++out.filled;
    }
    omt = std::move(next);
  }

  // Straighten every surviving material component into a full annulus
  // sector spanning its trace on the inner circle.
  BMulti uc, vc;
  gather(uc, vc);
  BMulti rebuilt;
  bgeo::intersection(omt, disk_in, rebuilt);
  for (const BPoly& poly : uc) {
    // Trace of the component on the inner circle, as the actual ring
    // vertices: the sector's inner arc must end exactly on the lattice
    // chords the clipped region follows, or the union leaves sliver notches.
    struct TracePt {
      double ang;
      Vec2 p;
    };
    std::vector<TracePt> trace;
    auto scan = [&](const BRing& ring) {
      for (const BPoint& bp : ring) {
        const Vec2 p{bp.x(), bp.y()};
        if (std::abs(norm(p - center) - r_in) <= tolR)
          trace.push_back({std::atan2(p.y - center.y, p.x - center.x), p});
      }
    };
    scan(poly.outer());
    for (const BRing& hole : poly.inners()) scan(hole);
    if (trace.empty())
      throw std::logic_error(
          "decompose_local: a surviving annulus component misses the inner "
          "circle");
    std::sort(trace.begin(), trace.end(),
              [](const TracePt& u, const TracePt& v) { return u.ang < v.ang; });
    // Largest circular gap delimits the single trace arc.
    double gap_best = 2 * kPi - (trace.back().ang - trace.front().ang);
    std::size_t gap_at = trace.size() - 1;  // gap follows trace[gap_at]
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
      const double g = trace[i + 1].ang - trace[i].ang;
      if (g > gap_best) {
        gap_best = g;
        gap_at = i;
      }
    }
    const double step = 2 * kPi / kCircleN;
    for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
      if (i == gap_at) continue;
      if (trace[i + 1].ang - trace[i].ang > 3 * step)
        throw std::logic_error(
            "decompose_local: a surviving component meets the inner circle in "
            "separated arcs");
    }
    const TracePt& start = trace[(gap_at + 1) % trace.size()];
    const TracePt& stop = trace[gap_at];
    const double a0 = start.ang;
    const double span = 2 * kPi - gap_best;
    BPoly sector;
    auto rel = [&](double a) {
      double d = std::fmod(a - a0, 2 * kPi);
      if (d < 0) d += 2 * kPi;
      return d;
    };
    auto lattice_between = [&](double r, std::vector<Vec2>& pts) {
      const std::size_t first = pts.size();
      for (int i = 0; i < kCircleN; ++i) {
        const double ra = rel(lattice_angle(i));
        if (ra > 1e-12 && ra < span - 1e-12)
          pts.push_back(center + r * lattice_dir(i));
      }
      std::sort(pts.begin() + first, pts.end(), [&](Vec2 u, Vec2 v) {
        return rel(std::atan2(u.y - center.y, u.x - center.x)) <
               rel(std::atan2(v.y - center.y, v.x - center.x));
      });
    };
    // Inner arc ccw from the start vertex, radial out, outer arc back.
    std::vector<Vec2> ring;
    ring.push_back(start.p);
    lattice_between(r_in, ring);
    ring.push_back(stop.p);
    {
      std::vector<Vec2> outer;
      outer.push_back(center + rho * Vec2{std::cos(a0), std::sin(a0)});
      lattice_between(rho, outer);
      outer.push_back(center +
                      rho * Vec2{std::cos(stop.ang), std::sin(stop.ang)});
      for (auto it = outer.rbegin(); it != outer.rend(); ++it)
        ring.push_back(*it);
    }
    for (const Vec2& p : ring) bgeo::append(sector.outer(), BPoint(p.x, p.y));
    bgeo::correct(sector);
    BMulti next;
    bgeo::union_(rebuilt, sector, next);
    rebuilt = std::move(next);
    ++out.sectors;
  }

  const double scale = region_scale(region);
  out.modified = make_region(multi_to_loops(rebuilt, scale));
  if (!(delta0 < out.modified.perimeter() / (2 * kPi)))
    throw std::invalid_argument(
        "decompose_local: the modifications left less boundary than 2 pi "
        "delta0; shrink delta0");
  out.global = decompose_global(out.modified, delta0, /*offset_samples=*/0);

  // Core boundary strictly inside the ball: drop runs along the outer circle.
  // An edge counts as on-circle only if its midpoint is near radius rho too: a
  // chord whose endpoints both happen to lie on the circle (e.g. a diameter)
  // is interior boundary, while genuine circle chords sag below rho by at most
  // one lattice-step sagitta.
  const double midTol = 5 * tolR;
  auto edge_on_circle = [&](const Vec2& a, const Vec2& b) {
    return std::abs(norm(a - center) - rho) <= tolR &&
           std::abs(norm(b - center) - rho) <= tolR &&
           std::abs(norm(0.5 * (a + b) - center) - rho) <= midTol;
  };
  for (int k : out.global.selected_loops()) {
    const Chain& lp = out.modified.loops[static_cast<std::size_t>(k)];
    const std::size_t n = lp.v.size();
    std::vector<char> edge_off(n, 0);
    bool any_on = false;
    for (std::size_t e = 0; e < n; ++e) {
      edge_off[e] = !edge_on_circle(lp.v[e], lp.v[(e + 1) % n]);
      if (!edge_off[e]) any_on = true;
    }
    if (!any_on) {
      out.gamma.push_back(lp);
      continue;
    }
    // Walk maximal runs of off-circle edges.
    std::size_t start = 0;
    while (start < n && edge_off[start]) ++start;  // an on-circle edge exists
    for (std::size_t e = 0; e < n;) {
      const std::size_t eg = (start + e) % n;
      if (!edge_off[eg]) {
        ++e;
        continue;
      }
      Chain ch;
      ch.closed = false;
      ch.v.push_back(lp.v[eg]);
      while (e < n && edge_off[(start + e) % n]) {
        ch.v.push_back(lp.v[((start + e) % n + 1) % n]);
        ++e;
      }
      out.gamma.push_back(std::move(ch));
    }
  }

  // Quantitative checks.
  LocalChecks& ck = out.checks;
  ck.boundary_in_ball = in_ball;
  for (const Chain& ch : out.gamma) ck.gamma_length += ch.length();
  for (int k : out.global.residual_loops()) {
    const Chain& lp = out.modified.loops[static_cast<std::size_t>(k)];
    double on_out = 0;
    const std::size_t n = lp.v.size();
    for (std::size_t e = 0; e < n; ++e) {
      const Vec2 a = lp.v[e], b = lp.v[(e + 1) % n];
      if (edge_on_circle(a, b)) on_out += norm(b - a);
    }
    ck.residual_boundary += lp.length() - on_out;
  }
  const double len_check_tol = 1e-4 * std::max(1.0, in_ball);
  ck.length_bound_ok =
      std::max(ck.gamma_length, ck.residual_boundary) <= in_ball + len_check_tol;

  ck.min_loop_margin = kInf;
  for (int k : out.global.residual_loops()) {
    const Chain& lp = out.modified.loops[static_cast<std::size_t>(k)];
    const double d = out.gamma.empty() ? kInf : chains_distance({lp}, out.gamma);
    const double bound = 2 * kPi * std::min(delta0, d);
    const double margin = bound - lp.length();
    ck.min_loop_margin = std::min(ck.min_loop_margin, margin);
    if (margin < -1e-9 * scale) ck.loop_bound_ok = false;
  }
  if (!std::isfinite(ck.min_loop_margin)) ck.min_loop_margin = 0;

  if (ck.gamma_length > 0) {
    const Window win{center, rho - 4 * delta0};
    const int samples = 12;
    for (int i = 1; i <= samples; ++i) {
      const double t = delta0 * (i - 0.5) / samples;
      const double L = level_set_length(out.gamma, t, win);
      ck.sampled_t.push_back(t);
      ck.max_offset_ratio =
          std::max(ck.max_offset_ratio, L / (2 * ck.gamma_length));
      if (L > 2 * ck.gamma_length + 1e-6 * std::max(1.0, ck.gamma_length))
        ck.offset_bound_ok = false;
    }
  }

  // The modification must not change the region inside the inner ball.
  {
    std::mt19937_64 rng(4407);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    int tried = 0;
    while (tried < 200) {
      const Vec2 p{center.x + r_in * U(rng), center.y + r_in * U(rng)};
      if (norm(p - center) >= r_in - 1e-3 * rho) continue;
      if (min_distance_to_region_boundary(p, region) < 1e-6 * scale) continue;
      if (min_distance_to_region_boundary(p, out.modified) < 1e-6 * scale)
        continue;
      ++tried;
      if (region.contains(p) != out.modified.contains(p))
        ++ck.membership_mismatches;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------
std::string region_csv(const PolygonalRegion& region) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "loop,x1,x2\n";
  for (std::size_t k = 0; k < region.loops.size(); ++k)
    for (const Vec2& p : region.loops[k].v)
      os << k << "," << p.x << "," << p.y << "\n";
  return os.str();
}

PolygonalRegion region_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("loop,", 0) != 0)
    throw std::invalid_argument("region_from_csv: missing 'loop,x1,x2' header");
  std::vector<std::vector<Vec2>> loops;
  std::vector<long> ids;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    long k = 0;
    char c1 = 0, c2 = 0;
    double x = 0, y = 0;
    if (!(ls >> k >> c1 >> x >> c2 >> y) || c1 != ',' || c2 != ',')
      throw std::invalid_argument("region_from_csv: bad row '" + line + "'");
    if (ids.empty() || ids.back() != k) {
      ids.push_back(k);
      loops.emplace_back();
    }
    loops.back().push_back({x, y});
  }
  return make_region(std::move(loops));
}

namespace {

nlohmann::json decomposition_to_json(const LevelSetDecomposition& d) {
  nlohmann::json j;
  j["delta0"] = d.delta0;
  j["selected_boundary_length"] = d.checks.boundary_length;
  nlohmann::json loops = nlohmann::json::array();
  for (std::size_t k = 0; k < d.region.loops.size(); ++k) {
    nlohmann::json lj;
    lj["index"] = k;
    lj["vertices"] = d.region.loops[k].v.size();
    lj["length"] = d.region.loops[k].length();
    lj["depth"] = d.region.depth[k];
    lj["selected"] = static_cast<bool>(d.selected[k]);
    if (!d.selected[k]) {
      double dmin = kInf;
      for (std::size_t i = 0; i < d.region.loops.size(); ++i)
        if (d.selected[i])
          dmin = std::min(dmin, chains_distance({d.region.loops[k]},
                                                {d.region.loops[i]}));
      const double bound = 2 * kPi * std::min(d.delta0, dmin);
      lj["distance_to_core"] = std::isfinite(dmin) ? dmin : -1.0;
      lj["length_bound"] = bound;
      lj["margin"] = bound - d.region.loops[k].length();
    }
    loops.push_back(lj);
  }
  j["loops"] = loops;
  j["checks"] = {{"sampled_t", d.checks.sampled_t},
                 {"max_offset_ratio", d.checks.max_offset_ratio},
                 {"offset_bound_ok", d.checks.offset_bound_ok},
                 {"min_loop_margin", d.checks.min_loop_margin},
                 {"loop_bound_ok", d.checks.loop_bound_ok},
                 {"membership_mismatches", d.checks.membership_mismatches}};
  return j;
}

}  // namespace

std::string decomposition_json(const LevelSetDecomposition& d) {
  return decomposition_to_json(d).dump(2);
}

std::string local_decomposition_json(const LocalDecomposition& d) {
  nlohmann::json j;
  j["center"] = {d.center.x, d.center.y};
  j["rho"] = d.rho;
  j["delta0"] = d.delta0;
  j["removed"] = d.removed;
  j["filled"] = d.filled;
  j["sectors"] = d.sectors;
  j["global"] = decomposition_to_json(d.global);
  j["checks"] = {{"boundary_in_ball", d.checks.boundary_in_ball},
                 {"gamma_length", d.checks.gamma_length},
                 {"residual_boundary", d.checks.residual_boundary},
                 {"length_bound_ok", d.checks.length_bound_ok},
                 {"sampled_t", d.checks.sampled_t},
                 {"max_offset_ratio", d.checks.max_offset_ratio},
                 {"offset_bound_ok", d.checks.offset_bound_ok},
                 {"min_loop_margin", d.checks.min_loop_margin},
                 {"loop_bound_ok", d.checks.loop_bound_ok},
                 {"membership_mismatches", d.checks.membership_mismatches}};
  return j.dump(2);
}

}  // namespace zigzag
