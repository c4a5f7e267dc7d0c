#pragma once
#include <cstdint>
#include <functional>
#include <vector>

namespace zigzag {

// Uniform grid on the truncated periodic strip [-L1, L1) x [0, ell).
// x2 is periodic; x1 carries clamped far-field values beyond |x1| = 1.
struct StripGrid {
  double ell = 0;
  double half_width = 0;  // L1
  int nx = 0, ny = 0;
  double hx = 0, hy = 0;

  double x1(int i) const { return -half_width + i * hx; }
  double x2(int j) const { return j * hy; }
  int idx(int i, int j) const { return i * ny + j; }  // row-major, x2 fastest
  int size() const { return nx * ny; }
  bool same_as(const StripGrid& o) const {
    return ell == o.ell && half_width == o.half_width && nx == o.nx && ny == o.ny;
  }
};

StripGrid make_grid(double ell, double half_width, int nx, int ny);

// Angle-parametrized unit field m = (cos theta, sin theta).  Nodes with
// x1 >= 1 are frozen at theta = 0 and nodes with x1 <= -1 at theta = pi,
// which is the charged-wall boundary condition m = +-e1.
struct DirectorField {
  StripGrid grid;
  std::vector<double> theta;
  std::vector<std::uint8_t> frozen;

  double u(int i, int j) const;  // m . e1
  double v(int i, int j) const;  // m . e2
};

DirectorField make_admissible_field(const StripGrid& g,
                                    const std::vector<double>& theta_init);
DirectorField make_admissible_field(
    const StripGrid& g, const std::function<double(double, double)>& theta_init);

// Charge-neutralizing background: the unit-core transition profile evaluated
// along x1, so M = +-e1 outside |x1| < 1 and the pair (m, M) is charge-free.
// M is x2-invariant and stored per column.
struct BackgroundField {
  StripGrid grid;
  std::vector<double> M1, M2;    // per column i
  std::vector<double> div_col;   // centered d/dx1 of M1, per column
};

BackgroundField make_background(const StripGrid& g);

// sigma = div(m - M), centered differences (periodic in x2, one-sided at the
// x1 ends where both fields are constant).
struct ChargeDensity {
  StripGrid grid;
  std::vector<double> sigma;
  double total = 0;  // sum sigma hx hy; telescopes to ~0
};

ChargeDensity charge_density(const DirectorField& f, const BackgroundField& bg);

// Discrete total charge of m alone: sum of d1(cos theta) hx hy = 2 ell up to rounding.
double total_charge(const DirectorField& f);

}  // namespace zigzag
