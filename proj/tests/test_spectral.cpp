#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "zigzag/grid.hpp"
#include "zigzag/profiles.hpp"
#include "zigzag/spectral.hpp"

using namespace zigzag;

namespace {

const double PI = std::acos(-1.0);

// Independent slow-DFT evaluation of the spectral norm: direct O(N K)
// summation over the full padded frequency lattice with its own prefactor
// derivation (Fourier coefficient c_k = (hx hy / (X ell)) sum f e^{-i xi x},
// norm = X ell sum |xi|^{2 alpha} |c_k|^2).
double slow_fractional_norm(const StripGrid& g, const std::vector<double>& f,
                            double alpha, int pad) {
  const int nxp = g.nx * pad;
  const double X = 2 * g.half_width * pad;
  double val = 0;
  for (int ki = 0; ki < nxp; ++ki) {
    const int m1 = (ki <= nxp / 2) ? ki : ki - nxp;
    const double xi1 = 2 * PI * m1 / X;
    for (int kj = 0; kj < g.ny; ++kj) {
      const int m2 = (kj <= g.ny / 2) ? kj : kj - g.ny;
      const double xi2 = 2 * PI * m2 / g.ell;
      if (m1 == 0 && m2 == 0) continue;
      std::complex<double> c(0, 0);
      for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
          c += f[g.idx(i, j)] *
               std::exp(std::complex<double>(0, -(xi1 * g.x1(i) + xi2 * g.x2(j))));
      const double c2 = std::norm(c) * (g.hx * g.hy / (X * g.ell)) *
                        (g.hx * g.hy / (X * g.ell));
      val += std::pow(xi1 * xi1 + xi2 * xi2, alpha) * c2;
    }
  }
  return X * g.ell * val;
}

std::vector<double> single_mode_field(const StripGrid& g) {
  std::vector<double> f(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.nx; ++i) {
    const double x = g.x1(i);
    const double w = std::abs(x) < 1.0 ? std::pow(std::cos(PI * x / 2), 2) : 0.0;
    for (int j = 0; j < g.ny; ++j)
      f[g.idx(i, j)] = w * std::cos(2 * PI * g.x2(j) / g.ell);
  }
  return f;
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("fractional norm: zero field, Plancherel, scaling") {
    StripGrid g = make_grid(2.0, 2.0, 32, 16);
    std::vector<double> zero(static_cast<std::size_t>(g.size()), 0.0);
    CHECK(fractional_norm(g, zero, -0.5) == 0.0);
    CHECK(fractional_norm(g, zero, 0.5) == 0.0);

    std::mt19937_64 rng(11);
    std::vector<double> f = testsupport::random_neutral_sigma(g, rng);
    // alpha = 0 on a zero-sum field is the plain L2 norm (discrete Plancherel).
    double l2 = 0;
    for (double v : f) l2 += v * v;
    l2 *= g.hx * g.hy;
    CHECK(fractional_norm(g, f, 0.0) == doctest::Approx(l2).epsilon(1e-12));

    std::vector<double> f3 = f;
    for (double& v : f3) v *= 3.0;
    CHECK(fractional_norm(g, f3, -0.5) ==
          doctest::Approx(9.0 * fractional_norm(g, f, -0.5)).epsilon(1e-12));
  }

  TEST_CASE("fractional norm matches the slow DFT oracle") {
    StripGrid g = make_grid(2.0, 2.0, 32, 16);
    std::vector<double> f = single_mode_field(g);
    for (double alpha : {-0.5, 0.5}) {
      const double fast = fractional_norm(g, f, alpha, 2);
      const double slow = slow_fractional_norm(g, f, alpha, 2);
      CHECK(fast == doctest::Approx(slow).epsilon(1e-9));
      CHECK(fast > 0);
    }
  }

  TEST_CASE("negative-order norm rejects non-neutral fields") {
    StripGrid g = make_grid(2.0, 2.0, 32, 16);
    std::vector<double> f(static_cast<std::size_t>(g.size()), 0.1);
    CHECK_THROWS_WITH_AS(fractional_norm(g, f, -0.5),
                         doctest::Contains("charge-neutrality"),
                         std::invalid_argument);
    CHECK_NOTHROW(fractional_norm(g, f, 0.5));
  }

  TEST_CASE("finite-difference seminorm: constants and size limit") {
    StripGrid g = make_grid(2.0, 2.0, 32, 16);
    VectorField c;
    c.grid = g;
    c.c1.assign(static_cast<std::size_t>(g.size()), 0.7);
    c.c2.assign(static_cast<std::size_t>(g.size()), -0.3);
    CHECK(h_half_finite_difference(c) == 0.0);
    CHECK(h_half_finite_difference(c, true) == 0.0);

    StripGrid big = make_grid(2.0, 2.0, 256, 128);
    std::vector<double> bf(static_cast<std::size_t>(big.size()), 0.0);
    CHECK_THROWS_WITH_AS(h_half_finite_difference(big, bf),
                         doctest::Contains("O(N^2)"), std::invalid_argument);
  }

  TEST_CASE("finite-difference seminorm matches the spectral norm on a smooth field") {
    StripGrid g = make_grid(2.0, 2.0, 64, 32);
    std::vector<double> f = single_mode_field(g);
    // Periodic mode targets the grid's own torus, whose exact spectral value
    // is the pad = 1 norm: the double sum is complete, so the comparison is
    // tight (remaining gap = kernel quadrature only).
    const double fdp = h_half_finite_difference(g, f, true);
    const double sp1 = fractional_norm(g, f, 0.5, 1);
    CHECK(fdp == doctest::Approx(sp1).epsilon(0.02));

    // Truncated mode restricts x to the grid box, so for a compactly
    // supported bump it misses the (all nonnegative) contributions with x
    // outside and x + h inside: a strict few-percent deficit against the
    // padded spectral value, not a defect.
    const double fd = h_half_finite_difference(g, f);
    const double sp = fractional_norm(g, f, 0.5, 2);
    CHECK(fd < sp);
    CHECK(fd == doctest::Approx(sp).epsilon(0.05));
  }

  TEST_CASE("embedded 1D wall profile obeys the logarithmic bound") {
    // Transition profile embedded constantly in x2.  Integrating the |h|^-3
    // kernel over h2 reduces the half norm per unit length to (1/pi) times
    // the one-sided 1D truncated integral, whose value is 4 ln(1 + R/eps)
    // plus a bounded constant; it grows as eps shrinks.
    auto per_len = [](double eps, int nx) {
      StripGrid g = make_grid(0.5, 2.0, nx, 8);
      const WallProfile p(eps, 0.4);
      std::vector<double> f(static_cast<std::size_t>(g.size()));
      for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) f[g.idx(i, j)] = p.u(g.x1(i));
      return h_half_finite_difference(g, f) / g.ell;
    };
    const double R = 4.0;  // the h1 window reaches twice the half width
    const double coarse = per_len(0.1, 128);
    CHECK(coarse * PI <= 4 * std::log(1 + R / 0.1) + 2.0);
    CHECK(coarse * PI >= 2 * std::log(1 + R / 0.1));
    const double fine = per_len(0.05, 256);
    CHECK(fine * PI <= 4 * std::log(1 + R / 0.05) + 2.0);
    CHECK(fine > coarse);  // log growth as the core shrinks
  }

  TEST_CASE("singular convolution: dipole monotonicity and image convergence") {
    StripGrid g = make_grid(4.0, 2.0, 64, 64);
    auto dipole = [&](double d) {
      std::vector<double> s(static_cast<std::size_t>(g.size()));
      for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
          const double w = 0.15;
          auto bump = [&](double cx) {
            const double dx = g.x1(i) - cx;
            const double dy = std::remainder(g.x2(j) - g.ell / 2, g.ell);
            return std::exp(-(dx * dx + dy * dy) / (2 * w * w));
          };
          s[g.idx(i, j)] = bump(-d / 2) - bump(d / 2);
        }
      return s;
    };
    double prev = 0;
    for (double d : {0.4, 0.8, 1.2}) {
      const double v = singular_integral_energy(g, dipole(d), 8);
      CHECK(v > prev);  // separating opposite charges costs energy
      prev = v;
    }

    std::mt19937_64 rng(5);
    std::vector<double> s = testsupport::random_neutral_sigma(g, rng);
    const double v1 = singular_integral_energy(g, s, 1);
    const double v2 = singular_integral_energy(g, s, 2);
    const double v4 = singular_integral_energy(g, s, 4);
    const double v8 = singular_integral_energy(g, s, 8);
    CHECK(std::abs(v8 - v4) <= 5e-3 * std::abs(v8));  // Cauchy by N ~ 8
    CHECK(std::abs(v8 - v4) <= std::abs(v2 - v1) + 1e-14);

    std::vector<double> bad(static_cast<std::size_t>(g.size()), 0.05);
    CHECK_THROWS_WITH_AS(singular_integral_energy(g, bad, 8),
                         doctest::Contains("charge-neutrality"),
                         std::invalid_argument);
  }

  TEST_CASE("helmholtz field: zero input, curl-free, reproduces the charge") {
    StripGrid g = make_grid(4.0, 2.0, 64, 64);
    std::vector<double> zero(static_cast<std::size_t>(g.size()), 0.0);
    VectorField q0 = helmholtz_field(g, zero, 2);
    for (double v : q0.c1) CHECK(v == 0.0);
    for (double v : q0.c2) CHECK(v == 0.0);

    std::mt19937_64 rng(13);
    std::vector<double> s = testsupport::random_neutral_sigma(g, rng);
    VectorField q = helmholtz_field(g, s, 2);
    CHECK(q.grid.nx == 128);
    CHECK(q.grid.hx == doctest::Approx(g.hx).epsilon(1e-14));

    double qmax = 0, smax = 0;
    for (double v : q.c1) qmax = std::max(qmax, std::abs(v));
    for (double v : q.c2) qmax = std::max(qmax, std::abs(v));
    for (double v : s) smax = std::max(smax, std::abs(v));
    CHECK(spectral_curl_max(q) <= 1e-8 * qmax);

    // div q on the padded box equals sigma embedded in the middle.
    std::vector<double> dv = spectral_divergence(q);
    const int off = (q.grid.nx - g.nx) / 2;
    double err = 0;
    for (int i = 0; i < q.grid.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        const int io = i - off;
        const double want =
            (io >= 0 && io < g.nx) ? s[g.idx(io, j)] : 0.0;
        err = std::max(err, std::abs(dv[q.grid.idx(i, j)] - want));
      }
    // Spectral accuracy up to the zeroed Nyquist rows: the test field is C^1
    // so its Nyquist content is ~1e-6 relative, not machine-zero.
    CHECK(err <= 1e-5 * smax);
  }

  TEST_CASE("oracle triangle: three independent evaluations agree") {
    StripGrid g = make_grid(4.0, 2.0, 64, 64);
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> s = testsupport::random_neutral_sigma(g, rng);
      const double t1 = fractional_norm(g, s, -0.5, 2);
      const double t2 = singular_integral_energy(g, s, 8);
      const double t3 = h_half_finite_difference(helmholtz_field(g, s, 2), true);
      CHECK(std::abs(t1 / t2 - 1) <= 0.02);
      CHECK(std::abs(t1 / t3 - 1) <= 0.02);
      CHECK(std::abs(t2 / t3 - 1) <= 0.02);
    }
  }

  TEST_CASE("divergence part is dominated by the full half norm") {
    // H^{-1/2} norm of div f vs H^{1/2} norm of f: the discrete difference
    // symbol |sin(xi h)/h| <= |xi| makes this an exact inequality mode by
    // mode, so it must hold to rounding, well inside the 2% allowance.
    StripGrid g = make_grid(2.0, 2.0, 48, 24);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> f1 = testsupport::windowed_gaussians(g, rng, 3, 0.2, 0.3, 0.6);
      std::vector<double> f2 = testsupport::windowed_gaussians(g, rng, 3, 0.2, 0.3, 0.6);
      std::vector<double> dv = testsupport::centered_divergence(g, f1, f2);
      const double lhs = fractional_norm(g, dv, -0.5, 2);
      const double rhs = fractional_norm(g, f1, 0.5, 2) + fractional_norm(g, f2, 0.5, 2);
      CHECK(lhs <= rhs * 1.02);
      CHECK(lhs <= rhs * (1 + 1e-9));
      CHECK(lhs > 0);
    }
  }
}
