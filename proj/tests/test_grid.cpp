#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "zigzag/grid.hpp"
#include "zigzag/profiles.hpp"

using namespace zigzag;

namespace {
const double PI = std::acos(-1.0);

// Smooth admissible wall: transition of half-width w centered on gamma(x2).
double wall_theta(double x1, double x2, double w, double amp, double ell) {
  const double gamma = amp * std::sin(2 * PI * x2 / ell);
  const double s = std::clamp((x1 - gamma) / w, -1.0, 1.0);
  return std::acos(s);
}
}  // namespace

TEST_SUITE("grid") {
  TEST_CASE("grid spacings and coordinates") {
    StripGrid g = make_grid(4.0, 4.0, 64, 64);
    CHECK(g.hx == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(g.hy == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(g.x1(0) == doctest::Approx(-4.0));
    CHECK(g.x1(32) == doctest::Approx(0.0));
    CHECK(g.x1(63) == doctest::Approx(4.0 - 0.125));
    CHECK(g.x2(0) == 0.0);
    CHECK(g.x2(63) == doctest::Approx(4.0 - 0.0625));
    CHECK(g.idx(0, 1) == 1);      // x2-fastest layout
    CHECK(g.idx(1, 0) == g.ny);
  }

  TEST_CASE("grid validation") {
    CHECK_THROWS_AS(make_grid(4.0, 1.5, 64, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 4.0, 64, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4.0, 4.0, 63, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4.0, 4.0, 64, 6), std::invalid_argument);
    CHECK_NOTHROW(make_grid(0.5, 2.0, 8, 8));
  }

  TEST_CASE("background field values and support") {
    StripGrid g = make_grid(4.0, 4.0, 64, 64);
    BackgroundField bg = make_background(g);
    const int i0 = 32, ip = 48, im = 16;  // x1 = 0, +2, -2
    CHECK(bg.M1[i0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(bg.M2[i0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bg.M1[ip] == doctest::Approx(1.0));
    CHECK(bg.M2[ip] == doctest::Approx(0.0));
    CHECK(bg.M1[im] == doctest::Approx(-1.0));
    CHECK(bg.M2[im] == doctest::Approx(0.0));
    for (int i = 0; i < g.nx; ++i) {
      CHECK(bg.M1[i] * bg.M1[i] + bg.M2[i] * bg.M2[i] == doctest::Approx(1.0).epsilon(1e-12));
      if (std::abs(g.x1(i)) >= 1.0 + g.hx) CHECK(bg.div_col[i] == 0.0);
    }
    // Odd symmetry of the first component about x1 = 0.
    for (int k = 1; k < 16; ++k)
      CHECK(bg.M1[i0 + k] == doctest::Approx(-bg.M1[i0 - k]).epsilon(1e-12));
  }

  TEST_CASE("admissible field clamps the far-field bands") {
    StripGrid g = make_grid(2.0, 3.0, 48, 16);
    DirectorField f = make_admissible_field(
        g, [](double, double) { return 0.7; });
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j < g.ny; ++j) {
        const double x1 = g.x1(i);
        const int k = g.idx(i, j);
        if (x1 >= 1.0) {
          CHECK(f.theta[k] == 0.0);
          CHECK(f.frozen[k] == 1);
        } else if (x1 <= -1.0) {
          CHECK(f.theta[k] == PI);
          CHECK(f.frozen[k] == 1);
        } else {
          CHECK(f.theta[k] == doctest::Approx(0.7));
          CHECK(f.frozen[k] == 0);
        }
      }
    }
  }

  TEST_CASE("non-finite input is rejected") {
    StripGrid g = make_grid(1.0, 2.0, 16, 8);
    std::vector<double> th(static_cast<std::size_t>(g.size()), 0.5);
    th[g.idx(8, 3)] = std::nan("");
    CHECK_THROWS_AS(make_admissible_field(g, th), std::invalid_argument);
    th[g.idx(8, 3)] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(make_admissible_field(g, th), std::invalid_argument);
    std::vector<double> short_th(3, 0.0);
    CHECK_THROWS_AS(make_admissible_field(g, short_th), std::invalid_argument);
  }

  TEST_CASE("total charge telescopes to 2 ell") {
    for (double ell : {1.0, 4.0}) {
      StripGrid g = make_grid(ell, 4.0, 64, 32);
      // Smooth straight wall.
      DirectorField f = make_admissible_field(g, [&](double x1, double x2) {
        return wall_theta(x1, x2, 0.6, 0.0, ell);
      });
      CHECK(total_charge(f) == doctest::Approx(2 * ell).epsilon(1e-12));
      // Sharp wall from a constant initial angle (jump sits at the clamp edge).
      DirectorField s = make_admissible_field(g, [](double, double) { return 0.0; });
      CHECK(total_charge(s) == doctest::Approx(2 * ell).epsilon(1e-12));
    }
  }

  TEST_CASE("charge density of the background-matching field vanishes") {
    StripGrid g = make_grid(4.0, 4.0, 64, 64);
    BackgroundField bg = make_background(g);
    const WallProfile p(1.0, 1.0);
    DirectorField f = make_admissible_field(g, [&](double x1, double) {
      return std::atan2(p.v(x1), p.u(x1));
    });
    ChargeDensity cd = charge_density(f, bg);
    double mx = 0;
    for (double s : cd.sigma) mx = std::max(mx, std::abs(s));
    CHECK(mx <= 1e-12);
    CHECK(std::abs(cd.total) <= 1e-12);
  }

  TEST_CASE("random admissible fields are exactly charge-neutral against the background") {
    StripGrid g = make_grid(3.0, 2.5, 40, 24);
    BackgroundField bg = make_background(g);
    std::mt19937_64 rng(20260822);
    std::uniform_real_distribution<double> ang(0.0, 2 * PI);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> th(static_cast<std::size_t>(g.size()));
      for (double& t : th) t = ang(rng);
      DirectorField f = make_admissible_field(g, th);
      ChargeDensity cd = charge_density(f, bg);
      CHECK(std::abs(cd.total) <= 1e-9 * g.ell);
      CHECK(total_charge(f) == doctest::Approx(2 * g.ell).epsilon(1e-9));
    }
  }

  TEST_CASE("charge density is supported near the wall and the background core") {
    const double ell = 4.0;
    StripGrid g = make_grid(ell, 4.0, 128, 64);
    BackgroundField bg = make_background(g);
    // Tilted wall: zero set gamma(x2) swings by +-0.5, transition half-width 0.3.
    DirectorField f = make_admissible_field(g, [&](double x1, double x2) {
      return wall_theta(x1, x2, 0.3, 0.5, ell);
    });
    ChargeDensity cd = charge_density(f, bg);
    for (int i = 0; i < g.nx; ++i) {
      if (std::abs(g.x1(i)) <= 1.2 + g.hx) continue;  // wall band + background core
      for (int j = 0; j < g.ny; ++j) CHECK(cd.sigma[g.idx(i, j)] == 0.0);
    }
    // And it is genuinely nonzero inside the band.
    double mx = 0;
    for (double s : cd.sigma) mx = std::max(mx, std::abs(s));
    CHECK(mx > 0.1);
  }
}
