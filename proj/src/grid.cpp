#include "zigzag/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "zigzag/profiles.hpp"

namespace zigzag {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Clamp-band membership with a tolerance that forgives coordinate rounding
// but never moves the band by a visible fraction of a cell.
bool in_plus_band(const StripGrid& g, int i) { return g.x1(i) >= 1.0 - 1e-12 * g.half_width; }
bool in_minus_band(const StripGrid& g, int i) { return g.x1(i) <= -1.0 + 1e-12 * g.half_width; }

}  // namespace

StripGrid make_grid(double ell, double half_width, int nx, int ny) {
  require(std::isfinite(ell) && ell > 0, "make_grid: ell must be positive");
  require(std::isfinite(half_width) && half_width >= 2,
          "make_grid: half_width must be >= 2 so the clamp bands |x1| >= 1 fit "
          "with room for the transition");
  require(nx >= 8 && ny >= 8, "make_grid: nx, ny must be >= 8");
  require(nx % 2 == 0 && ny % 2 == 0, "make_grid: nx, ny must be even");
  StripGrid g;
  g.ell = ell;
  g.half_width = half_width;
  g.nx = nx;
  g.ny = ny;
  g.hx = 2 * half_width / nx;
  g.hy = ell / ny;
  return g;
}

double DirectorField::u(int i, int j) const { return std::cos(theta[grid.idx(i, j)]); }
double DirectorField::v(int i, int j) const { return std::sin(theta[grid.idx(i, j)]); }

DirectorField make_admissible_field(const StripGrid& g,
                                    const std::vector<double>& theta_init) {
  require(g.nx > 0, "make_admissible_field: grid not initialized");
  require(static_cast<int>(theta_init.size()) == g.size(),
          "make_admissible_field: theta has " + std::to_string(theta_init.size()) +
              " entries, expected " + std::to_string(g.size()));
  DirectorField f;
  f.grid = g;
  f.theta = theta_init;
  f.frozen.assign(g.size(), 0);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < g.nx; ++i) {
    const bool plus = in_plus_band(g, i);
    const bool minus = in_minus_band(g, i);
    for (int j = 0; j < g.ny; ++j) {
      const int k = g.idx(i, j);
      require(std::isfinite(theta_init[k]),
              "make_admissible_field: non-finite angle at node (" +
                  std::to_string(i) + ", " + std::to_string(j) + ")");
      if (plus) {
        f.theta[k] = 0.0;
        f.frozen[k] = 1;
      } else if (minus) {
        f.theta[k] = pi;
        f.frozen[k] = 1;
      }
    }
  }
  return f;
}

DirectorField make_admissible_field(
    const StripGrid& g, const std::function<double(double, double)>& theta_init) {
  std::vector<double> th(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) th[g.idx(i, j)] = theta_init(g.x1(i), g.x2(j));
  return make_admissible_field(g, th);
}

BackgroundField make_background(const StripGrid& g) {
  require(g.nx > 0, "make_background: grid not initialized");
  const WallProfile p(1.0, 1.0);
  BackgroundField bg;
  bg.grid = g;
  bg.M1.resize(g.nx);
  bg.M2.resize(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    const double t = g.x1(i);
    bg.M1[i] = p.u(t);
    bg.M2[i] = p.v(t);
  }
  bg.div_col.assign(g.nx, 0.0);
  for (int i = 1; i < g.nx - 1; ++i)
    bg.div_col[i] = (bg.M1[i + 1] - bg.M1[i - 1]) / (2 * g.hx);
  // One-sided at the ends; M1 is constant there so the derivative vanishes.
  return bg;
}

ChargeDensity charge_density(const DirectorField& f, const BackgroundField& bg) {
  const StripGrid& g = f.grid;
  require(g.same_as(bg.grid), "charge_density: field and background grids differ");
  ChargeDensity cd;
  cd.grid = g;
  cd.sigma.assign(g.size(), 0.0);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const int jp = (j + 1) % g.ny;
      const int jm = (j + g.ny - 1) % g.ny;
      double d1;
      if (i == 0) {
        d1 = (f.u(1, j) - f.u(0, j)) / g.hx;  // both columns clamped: 0
      } else if (i == g.nx - 1) {
        d1 = (f.u(i, j) - f.u(i - 1, j)) / g.hx;
      } else {
        d1 = (f.u(i + 1, j) - f.u(i - 1, j)) / (2 * g.hx);
      }
      const double d2 = (f.v(i, jp) - f.v(i, jm)) / (2 * g.hy);
      cd.sigma[g.idx(i, j)] = d1 - bg.div_col[i] + d2;
    }
  }
  double s = 0;
  for (double x : cd.sigma) s += x;
  cd.total = s * g.hx * g.hy;
  return cd;
}

double total_charge(const DirectorField& f) {
  const StripGrid& g = f.grid;
  double s = 0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 1; i < g.nx - 1; ++i) s += (f.u(i + 1, j) - f.u(i - 1, j)) / (2 * g.hx);
    s += (f.u(1, j) - f.u(0, j)) / g.hx;
    s += (f.u(g.nx - 1, j) - f.u(g.nx - 2, j)) / g.hx;
  }
  return s * g.hx * g.hy;
}

}  // namespace zigzag
