#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "zigzag/wall.hpp"

using namespace zigzag;

namespace {

// Random wall with a prescribed per-edge steepness pattern.  Edges come in
// consecutive pairs sharing -n1 = u but with opposite x1 travel, so the
// closure and the x1 amplitude are controlled exactly.
PolygonalWall paired_wall(const std::vector<double>& u, double ell,
                          std::vector<int>* sign_out = nullptr) {
  const int pairs = static_cast<int>(u.size());
  const double h = ell / (2 * pairs);
  std::vector<WallVertex> v;
  v.push_back({0.0, 0.0});
  double x1 = 0, x2 = 0;
  for (int p = 0; p < pairs; ++p) {
    const double d = std::sqrt(1 - u[p] * u[p]) / u[p] * h;
    const int s = (p % 2 == 0) ? 1 : -1;
    if (sign_out) sign_out->push_back(s);
    x1 += s * d;
    x2 += h;
    v.push_back({x1, x2});
    x1 -= s * d;
    x2 += h;
    v.push_back({x1, x2});
  }
  v.back().x2 = ell;
  return make_wall(v, ell);
}

double max_abs_x1(const PolygonalWall& w) {
  double m = 0;
  for (const WallVertex& p : w.v) m = std::max(m, std::abs(p.x1));
  return m;
}

}  // namespace

TEST_SUITE("wall") {
  TEST_CASE("line density: values, continuity, infimum representation") {
    CHECK(line_density_f(0.0) == 1.0);
    CHECK(line_density_f(1.0) == 2.0);
    CHECK(line_density_f(0.5) == 1.25);
    CHECK(line_density_f(2.0) == 4.0);
    CHECK(line_density_f(3.0) == 6.0);
    CHECK(line_density_f(1.0 + 1e-9) == doctest::Approx(2.0).epsilon(3e-9));
    CHECK(line_density_f(1.0 - 1e-9) == doctest::Approx(2.0).epsilon(3e-9));
    CHECK_THROWS_AS(line_density_f(-0.1), std::invalid_argument);

    // f(s) = inf_{alpha >= 1} (alpha + s^2/alpha), checked against a grid scan.
    std::mt19937 rng(8801);
    std::uniform_real_distribution<double> S(0.0, 10.0);
    for (int t = 0; t < 150; ++t) {
      const double s = S(rng);
      double best = 1e300;
      for (int i = 0; i <= 190000; ++i) {
        const double a = 1.0 + 1e-4 * i;
        best = std::min(best, a + s * s / a);
      }
      CHECK(std::abs(line_density_f(s) - best) < 1e-6);
    }
  }

  TEST_CASE("ground state energy: branch values and C^1 matching") {
    const double ell = 3.7;
    CHECK(ground_state_energy(0.0, ell) == doctest::Approx(2 * ell).epsilon(1e-12));
    CHECK(ground_state_energy(1.0, ell) == doctest::Approx(4 * ell).epsilon(1e-12));
    CHECK(ground_state_energy(4.0, ell) == doctest::Approx(8 * ell).epsilon(1e-12));
    CHECK(ground_state_energy(0.25, ell) ==
          doctest::Approx(2 * ell * 1.25).epsilon(1e-12));

    // Both one-sided difference quotients at lambda = 1 approach 2*ell.
    const double h = 1e-6;
    const double dl = (ground_state_energy(1.0, ell) -
                       ground_state_energy(1.0 - h, ell)) / h;
    const double dr = (ground_state_energy(1.0 + h, ell) -
                       ground_state_energy(1.0, ell)) / h;
    CHECK(dl == doctest::Approx(2 * ell).epsilon(1e-5));
    CHECK(dr == doctest::Approx(2 * ell).epsilon(1e-5));

    CHECK_THROWS_AS(ground_state_energy(-1.0, ell), std::invalid_argument);
    CHECK_THROWS_AS(ground_state_energy(1.0, 0.0), std::invalid_argument);
  }

  TEST_CASE("vertical wall: geometry, energies, flux") {
    const PolygonalWall w = make_wall({{0.25, 0.0}, {0.25, 1.0}}, 1.0);
    CHECK(w.edges() == 2);  // split at ell/2
    for (int e = 0; e < w.edges(); ++e) {
      const WallEdge g = edge_geometry(w, e);
      CHECK(g.len == doctest::Approx(0.5).epsilon(1e-15));
      CHECK(g.n1 == doctest::Approx(-1.0).epsilon(1e-15));
      CHECK(std::abs(g.n2) < 1e-15);
      CHECK(g.tau2 == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(limit_energy(w, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(limit_energy(w, 0.5) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(limit_energy(w, 4.0) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(wall_flux(w) == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<double> per = limit_energy_per_edge(w, 0.5);
    REQUIRE(per.size() == 2);
    CHECK(per[0] + per[1] == doctest::Approx(limit_energy(w, 0.5)).epsilon(1e-14));
  }

  TEST_CASE("slanted wall matches the closed form") {
    // Two symmetric slants across one period; each original edge has
    // -n1 = 1/sqrt(1.36) and length sqrt(1.36).
    const PolygonalWall w =
        make_wall({{-0.3, 0.0}, {0.3, 1.0}, {-0.3, 2.0}}, 2.0);
    CHECK(w.edges() == 4);  // both slants exceed ell/2 and get split
    const double lambda = 2.0;
    // s = sqrt(2/1.36) > 1, so each slant costs 4 sqrt(lambda) |n1| len
    // = 4 sqrt(2): steep edges always pay 4 sqrt(lambda) per unit of flux.
    CHECK(limit_energy(w, lambda) ==
          doctest::Approx(8 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(wall_flux(w) == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("auto split preserves every invariant") {
    const std::vector<WallVertex> coarse = {
        {-0.4, 0.0}, {0.5, 2.1}, {0.1, 2.6}, {-0.4, 4.0}};
    const PolygonalWall w = make_wall(coarse, 4.0);
    CHECK(w.edges() > 3);
    for (int e = 0; e < w.edges(); ++e)
      CHECK(edge_geometry(w, e).len <= 2.0 * (1 + 1e-12));
    // A manually pre-split copy carries identical energies.
    std::vector<WallVertex> fine;
    for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
      for (int p = 0; p < 7; ++p) {
        const double t = p / 7.0;
        fine.push_back({coarse[i].x1 + t * (coarse[i + 1].x1 - coarse[i].x1),
                        coarse[i].x2 + t * (coarse[i + 1].x2 - coarse[i].x2)});
      }
    }
    fine.push_back(coarse.back());
    const PolygonalWall wf = make_wall(fine, 4.0);
    for (double lambda : {0.0, 0.7, 3.0})
      CHECK(limit_energy(w, lambda) ==
            doctest::Approx(limit_energy(wf, lambda)).epsilon(1e-13));
  }

  TEST_CASE("flux equals the period for random walls") {
    std::mt19937 rng(8802);
    std::uniform_real_distribution<double> U(0.35, 1.0);
    for (int t = 0; t < 20; ++t) {
      const double ell = 0.5 + 0.45 * (t % 5);
      std::vector<double> u(4 + t % 3);
      for (double& x : u) x = U(rng);
      const PolygonalWall w = paired_wall(u, ell);
      CHECK(wall_flux(w) == doctest::Approx(ell).epsilon(1e-12));
    }
  }

  TEST_CASE("zigzag refinement of a vertical wall, k = 1") {
    const PolygonalWall w = make_wall({{0.0, 0.0}, {0.0, 1.0}}, 1.0);
    const double lambda = 4.0;
    const PolygonalWall r = zigzag_refine(w, lambda, 1);
    REQUIRE(r.edges() == 4);

    const double cs = 0.5, rs = std::sqrt(3.0) / 2;
    // Tooth tips: chord point + lambda_+ * step * tau_+, with
    // lambda_+ = lambda_- = 1 and step = 1/2 per split edge.
    CHECK(r.v[1].x1 == doctest::Approx(rs * 0.5).epsilon(1e-15));
    CHECK(r.v[1].x2 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(r.v[2].x1 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.v[2].x2 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.v[3].x1 == doctest::Approx(rs * 0.5).epsilon(1e-15));
    CHECK(r.v[3].x2 == doctest::Approx(0.75).epsilon(1e-15));

    double total_len = 0;
    for (int e = 0; e < r.edges(); ++e) {
      const WallEdge g = edge_geometry(r, e);
      CHECK(g.n1 == doctest::Approx(-cs).epsilon(1e-14));
      CHECK(std::abs(g.n2) == doctest::Approx(rs).epsilon(1e-14));
      total_len += g.len;
    }
    // The shares double the length while the energy is conserved exactly.
    CHECK(total_len == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(limit_energy(r, lambda) ==
          doctest::Approx(limit_energy(w, lambda)).epsilon(1e-12));
    CHECK(wall_flux(r) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("walls at or below the critical slope pass through unchanged") {
    // Every edge has -n1 = 0.45 < c* = 0.5 at lambda = 4.
    const PolygonalWall w = paired_wall({0.45}, 1.0);
    const PolygonalWall r = zigzag_refine(w, 4.0, 0);
    REQUIRE(r.v.size() == w.v.size());
    for (std::size_t i = 0; i < w.v.size(); ++i) {
      CHECK(r.v[i].x1 == w.v[i].x1);
      CHECK(r.v[i].x2 == w.v[i].x2);
    }
  }

  TEST_CASE("zigzag refinement conserves energy and flux on random steep walls") {
    std::mt19937 rng(8803);
    std::uniform_real_distribution<double> L(1.0 + 1e-6, 10.0);
    std::uniform_real_distribution<double> U01(0.0, 1.0);
    for (int t = 0; t < 12; ++t) {
      const double lambda = L(rng);
      const double cs = 1 / std::sqrt(lambda);
      const double ell = 0.8 + 0.4 * U01(rng);
      std::vector<double> u(4);
      bool any_steep = false;
      for (std::size_t j = 0; j < u.size(); ++j) {
        if (j % 2 == 0) {
          u[j] = cs + (1 - cs) * (0.05 + 0.9 * U01(rng));
          any_steep = true;
        } else {
          u[j] = 0.45 + 0.5 * cs * U01(rng);
        }
      }
      REQUIRE(any_steep);
      const PolygonalWall w = paired_wall(u, ell);
      const PolygonalWall r = zigzag_refine(w, lambda, 0);

      const double e0 = limit_energy(w, lambda);
      CHECK(std::abs(limit_energy(r, lambda) - e0) <= 1e-12 * e0);
      CHECK(std::abs(wall_flux(r) - ell) <= 1e-12 * ell);
      for (int e = 0; e < r.edges(); ++e)
        CHECK(std::abs(edge_geometry(r, e).n1) <= cs * (1 + 1e-12));
      CHECK(max_abs_x1(r) <= 1 - 1e-3 + 1e-12);
      CHECK(r.v.front().x1 == w.v.front().x1);
      CHECK(r.v.back().x1 == w.v.back().x1);
    }
  }

  TEST_CASE("zigzag refinement rejects bad parameters with diagnostics") {
    const PolygonalWall w = make_wall({{0.0, 0.0}, {0.0, 1.0}}, 1.0);
    CHECK_THROWS_AS(zigzag_refine(w, 0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(zigzag_refine(w, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(zigzag_refine(w, 4.0, -1), std::invalid_argument);

    // Hugging the boundary leaves no room for teeth at any k.
    const PolygonalWall hug = make_wall({{0.9995, 0.0}, {0.9995, 1.0}}, 1.0);
    CHECK_THROWS_WITH_AS(zigzag_refine(hug, 4.0, 0),
                         doctest::Contains("hugs the strip boundary"),
                         std::invalid_argument);

    // Near the boundary the automatic k grows so the teeth stay inside.
    const PolygonalWall near = make_wall({{0.8, 0.0}, {0.8, 1.0}}, 1.0);
    CHECK_THROWS_WITH_AS(zigzag_refine(near, 4.0, 2),
                         doctest::Contains("needs k >= 3"),
                         std::invalid_argument);
    const PolygonalWall r = zigzag_refine(near, 4.0, 0);
    CHECK(r.edges() == 12);  // k = 3, two split edges, 2k segments each
    CHECK(max_abs_x1(r) <= 1 - 1e-3 + 1e-12);
    CHECK(limit_energy(r, 4.0) ==
          doctest::Approx(limit_energy(near, 4.0)).epsilon(1e-12));

    // A larger explicit k is always admissible.
    const PolygonalWall r5 = zigzag_refine(near, 4.0, 5);
    CHECK(r5.edges() == 20);
    CHECK(limit_energy(r5, 4.0) ==
          doctest::Approx(limit_energy(near, 4.0)).epsilon(1e-12));
  }

  TEST_CASE("fine zigzag refinement stays exact") {
    const PolygonalWall w = make_wall({{0.0, 0.0}, {0.0, 1.0}}, 1.0);
    const PolygonalWall r = zigzag_refine(w, 4.0, 40);
    CHECK(r.edges() == 160);
    CHECK(limit_energy(r, 4.0) ==
          doctest::Approx(limit_energy(w, 4.0)).epsilon(1e-12));
    CHECK(wall_flux(r) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("minimizer classification: vertical walls minimize at every lambda") {
    const PolygonalWall w = make_wall({{0.25, 0.0}, {0.25, 1.0}}, 1.0);
    for (double lambda : {0.0, 0.5, 1.0, 4.0, 10.0}) {
      const MinimizerVerdict v = classify_minimizer(w, lambda);
      CHECK(v.is_minimizer);
      CHECK(v.reason.empty());
      CHECK(v.energy ==
            doctest::Approx(ground_state_energy(lambda, 1.0)).epsilon(1e-12));
      CHECK(v.ground_state ==
            doctest::Approx(ground_state_energy(lambda, 1.0)).epsilon(1e-15));
    }
  }

  TEST_CASE("minimizer classification: refined zigzags minimize, shallow walls do not") {
    const PolygonalWall w = make_wall({{0.0, 0.0}, {0.0, 1.0}}, 1.0);
    const PolygonalWall r = zigzag_refine(w, 4.0, 1);
    const MinimizerVerdict good = classify_minimizer(r, 4.0);
    CHECK(good.is_minimizer);
    CHECK(good.energy == doctest::Approx(8.0).epsilon(1e-12));

    // -n1 = 0.45 < c* = 0.5: below the admissible band, and strictly above
    // the ground state by 2 len (1 - s)^2 per edge.
    const PolygonalWall shallow = paired_wall({0.45}, 1.0);
    const MinimizerVerdict bad = classify_minimizer(shallow, 4.0);
    CHECK(!bad.is_minimizer);
    CHECK(bad.reason.find("edge") != std::string::npos);
    CHECK(bad.reason.find("band") != std::string::npos);
    CHECK(bad.energy > bad.ground_state + 1e-6);

    // For lambda <= 1 the band collapses to {1}: only vertical walls remain.
    const MinimizerVerdict tilt = classify_minimizer(shallow, 0.5);
    CHECK(!tilt.is_minimizer);
    CHECK(tilt.energy > tilt.ground_state + 1e-6);
  }

  TEST_CASE("every in-band wall attains the ground state exactly") {
    std::mt19937 rng(8804);
    std::uniform_real_distribution<double> L(1.0 + 1e-3, 10.0);
    std::uniform_real_distribution<double> U01(0.0, 1.0);
    for (int t = 0; t < 10; ++t) {
      const double lambda = L(rng);
      const double cs = 1 / std::sqrt(lambda);
      std::vector<double> u(5);
      for (double& x : u) x = cs + (1 - cs) * U01(rng);
      const PolygonalWall w = paired_wall(u, 1.0);
      const MinimizerVerdict v = classify_minimizer(w, lambda);
      CHECK(v.is_minimizer);
      CHECK(std::abs(v.energy - v.ground_state) <= 1e-12 * v.ground_state);

      // Pushing one share below the band breaks both the verdict and the
      // energy identity.
      std::vector<double> bad = u;
      bad[2] = 0.8 * cs;
      const PolygonalWall wb = paired_wall(bad, 1.0);
      const MinimizerVerdict vb = classify_minimizer(wb, lambda);
      CHECK(!vb.is_minimizer);
      CHECK(vb.energy > vb.ground_state + 1e-9);
    }
  }

  TEST_CASE("CSV round trip is exact") {
    const PolygonalWall w = paired_wall({0.9, 0.5, 0.7}, 2.5);
    const std::string csv = wall_csv(w);
    CHECK(csv.rfind("x1,x2\n", 0) == 0);
    const PolygonalWall r = wall_from_csv(csv, 2.5);
    REQUIRE(r.v.size() == w.v.size());
    for (std::size_t i = 0; i < w.v.size(); ++i) {
      CHECK(r.v[i].x1 == w.v[i].x1);
      CHECK(r.v[i].x2 == w.v[i].x2);
    }
    CHECK_THROWS_AS(wall_from_csv("", 1.0), std::invalid_argument);
    CHECK_THROWS_AS(wall_from_csv("a,b\n0,0\n0,1\n", 1.0), std::invalid_argument);
    CHECK_THROWS_AS(wall_from_csv("x1,x2\nfoo,bar\n", 1.0), std::invalid_argument);
    CHECK_THROWS_AS(wall_from_csv("x1,x2\n0 0\n", 1.0), std::invalid_argument);
  }

  TEST_CASE("limit energy JSON carries the per-edge breakdown") {
    const PolygonalWall w = paired_wall({0.8, 0.6}, 1.5);
    const nlohmann::json j = nlohmann::json::parse(limit_energy_json(w, 2.5));
    CHECK(j.at("lambda").get<double>() == 2.5);
    const double e = j.at("energy").get<double>();
    const auto per = j.at("per_edge").get<std::vector<double>>();
    CHECK(static_cast<int>(per.size()) == w.edges());
    double s = 0;
    for (double x : per) s += x;
    CHECK(s == doctest::Approx(e).epsilon(1e-13));
    CHECK(e == doctest::Approx(limit_energy(w, 2.5)).epsilon(1e-15));
  }

  TEST_CASE("wall construction rejects malformed input") {
    CHECK_THROWS_AS(make_wall({{0, 0}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_wall({{0, 0}, {0, 1}}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_wall({{0, 0.1}, {0, 1}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_wall({{0, 0}, {0, 0.9}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_wall({{0, 0}, {0.5, 1}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_wall({{0, 0}, {0.2, 0.6}, {0.1, 0.4}, {0, 1}}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_wall({{1.5, 0}, {1.5, 1}}, 1.0), std::invalid_argument);
    const double nan = std::nan("");
    CHECK_THROWS_AS(make_wall({{0, 0}, {nan, 0.5}, {0, 1}}, 1.0),
                    std::invalid_argument);
  }
}
