#pragma once
// Shared random-field builders for the unit and acceptance suites.
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "zigzag/geometry2d.hpp"
#include "zigzag/grid.hpp"

namespace testsupport {

// Smooth window in x1: 1 inside 0.6 half_width, 0 beyond 0.8 half_width.
// Keeps the fields compactly supported inside the box so that discrete
// telescoping sums vanish exactly (no Gaussian-tail charge leakage).
inline double edge_window(const zigzag::StripGrid& g, double x1) {
  const double lo = 0.6 * g.half_width, hi = 0.8 * g.half_width;
  const double ax = std::abs(x1);
  if (ax <= lo) return 1.0;
  if (ax >= hi) return 0.0;
  const double c = std::cos((ax - lo) / (hi - lo) * 1.5707963267948966);
  return c * c;
}

// Sum of nb random Gaussian bumps, windowed to compact support in x1,
// periodic in x2.
inline std::vector<double> windowed_gaussians(const zigzag::StripGrid& g,
                                              std::mt19937_64& rng, int nb,
                                              double wmin, double wmax,
                                              double xmax) {
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<double> psi(static_cast<std::size_t>(g.size()), 0.0);
  for (int b = 0; b < nb; ++b) {
    const double amp = 2 * U(rng) - 1;
    const double w = wmin + (wmax - wmin) * U(rng);
    const double cx = xmax * (2 * U(rng) - 1);
    const double cy = g.ell * U(rng);
    for (int i = 0; i < g.nx; ++i) {
      const double win = edge_window(g, g.x1(i));
      if (win == 0.0) continue;
      for (int j = 0; j < g.ny; ++j) {
        const double dx = g.x1(i) - cx;
        const double dy = std::remainder(g.x2(j) - cy, g.ell);
        psi[g.idx(i, j)] += win * amp * std::exp(-(dx * dx + dy * dy) / (2 * w * w));
      }
    }
  }
  return psi;
}

// Centered-difference divergence (periodic in x2, zero at the x1 end
// columns); for compactly supported potentials the grid sum telescopes to
// exactly zero, so the result is exactly charge-neutral.
inline std::vector<double> centered_divergence(const zigzag::StripGrid& g,
                                               const std::vector<double>& p1,
                                               const std::vector<double>& p2) {
  std::vector<double> s(static_cast<std::size_t>(g.size()), 0.0);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      double d1 = 0;
      if (i > 0 && i < g.nx - 1)
        d1 = (p1[g.idx(i + 1, j)] - p1[g.idx(i - 1, j)]) / (2 * g.hx);
      const int jp = (j + 1) % g.ny, jm = (j + g.ny - 1) % g.ny;
      const double d2 = (p2[g.idx(i, jp)] - p2[g.idx(i, jm)]) / (2 * g.hy);
      s[g.idx(i, j)] = d1 + d2;
    }
  }
  return s;
}

// Random smooth exactly-neutral charge density.  Bump widths of a few cells
// keep the continuum identities accurate on a 64x64 box.
inline std::vector<double> random_neutral_sigma(const zigzag::StripGrid& g,
                                                std::mt19937_64& rng,
                                                int nbumps = 3,
                                                double wmin = 0.2,
                                                double wmax = 0.3,
                                                double xmax = 0.6) {
  const std::vector<double> p1 = windowed_gaussians(g, rng, nbumps, wmin, wmax, xmax);
  const std::vector<double> p2 = windowed_gaussians(g, rng, nbumps, wmin, wmax, xmax);
  return centered_divergence(g, p1, p2);
}

// Random star-shaped polygon: vertices at sorted random angles around
// `center`, radii drawn from [rmin, rmax].  Star-shaped about the center, so
// the loop is always simple.
inline std::vector<zigzag::Vec2> random_star_polygon(std::mt19937_64& rng,
                                                     zigzag::Vec2 center,
                                                     double rmin, double rmax,
                                                     int nv) {
  std::uniform_real_distribution<double> U(0, 1);
  // Draw angular gaps bounded away from zero and normalize to a full turn,
  // so the angles are strictly increasing and no edge is degenerately short.
  std::vector<double> gaps(static_cast<std::size_t>(nv));
  double tot = 0;
  for (double& gp : gaps) {
    gp = 0.1 + U(rng);
    tot += gp;
  }
  const double twoPi = 2 * 3.14159265358979323846;
  const double a0 = twoPi * U(rng);
  std::vector<zigzag::Vec2> v;
  v.reserve(gaps.size());
  double acc = 0;
  for (double gp : gaps) {
    const double a = a0 + twoPi * (acc / tot);
    acc += gp;
    const double r = rmin + (rmax - rmin) * U(rng);
    v.push_back({center.x + r * std::cos(a), center.y + r * std::sin(a)});
  }
  return v;
}

// Random region with one outer star loop, optionally a hole inside it, and
// optional far-away satellite loops; all loops live in disjoint disks so the
// region is always valid.
inline std::vector<std::vector<zigzag::Vec2>> random_multiloop_region(
    std::mt19937_64& rng, bool with_hole, int satellites) {
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<std::vector<zigzag::Vec2>> loops;
  loops.push_back(random_star_polygon(rng, {0, 0}, 0.8, 1.3,
                                      5 + static_cast<int>(U(rng) * 7)));
  if (with_hole)
    loops.push_back(random_star_polygon(rng, {0, 0}, 0.15, 0.3,
                                        4 + static_cast<int>(U(rng) * 4)));
  for (int s = 0; s < satellites; ++s) {
    const double a = 2 * 3.14159265358979323846 * (s + U(rng) * 0.5) /
                     std::max(1, satellites);
    const zigzag::Vec2 c{3.0 * std::cos(a), 3.0 * std::sin(a)};
    loops.push_back(random_star_polygon(rng, c, 0.2, 0.45,
                                        4 + static_cast<int>(U(rng) * 5)));
  }
  return loops;
}

}  // namespace testsupport
