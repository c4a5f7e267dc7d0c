#include "zigzag/recovery.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "zigzag/profiles.hpp"

namespace zigzag {
namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Smallest n >= lo whose prime factors are all in {2, 3, 5, 7}: keeps the
// spectral transforms on fast paths.
int next_smooth(int lo) {
  for (int n = std::max(1, lo);; ++n) {
    int q = n;
    for (int p : {2, 3, 5, 7})
      while (q % p == 0) q /= p;
    if (q == 1) return n;
  }
}

}  // namespace

DirectorField build_recovery_field(const PolygonalWall& w,
                                   const RecoveryParams& p, const StripGrid& g) {
  require(p.epsilon > 0 && p.epsilon < 0.25,
          "build_recovery_field: epsilon must lie in (0, 1/4)");
  const double beta = p.beta > 0 ? p.beta : std::pow(p.epsilon, 5.0 / 6.0);
  require(p.epsilon < beta,
          "build_recovery_field: epsilon must be below the tube half-width");
  require(g.ell == w.ell, "build_recovery_field: grid and wall periods differ");

  const RoundedTube tube = make_rounded_tube(w, beta);
  const WallProfile prof(p.epsilon, beta);
  std::vector<double> theta(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.nx; ++i) {
    const double x1 = g.x1(i);
    for (int j = 0; j < g.ny; ++j) {
      const double t = tube.signed_distance(x1, g.x2(j));
      theta[static_cast<std::size_t>(g.idx(i, j))] =
          std::atan2(prof.v(t), prof.u(t));
    }
  }
  return make_admissible_field(g, theta);
}

StripGrid recovery_grid(const PolygonalWall& w, double epsilon,
                        double cells_per_eps, double half_width) {
  require(epsilon > 0 && cells_per_eps > 0 && half_width >= 2,
          "recovery_grid: need epsilon > 0, cells_per_eps > 0, half_width >= 2");
  const double target = epsilon / cells_per_eps;
  const int nx = next_smooth(
      static_cast<int>(std::ceil(2 * half_width / target)));
  bool vertical = true;
  for (const WallVertex& v : w.v)
    if (v.x1 != w.v.front().x1) vertical = false;
  const int ny = vertical
                     ? 64
                     : next_smooth(static_cast<int>(std::ceil(w.ell / target)));
  return make_grid(w.ell, half_width, nx, ny);
}

RecoveryReport run_recovery_case(const PolygonalWall& w, double epsilon,
                                 double lambda, const StripGrid& g) {
  RecoveryReport r;
  r.epsilon = epsilon;
  r.lambda = lambda;
  r.limit = limit_energy(w, lambda);
  const DirectorField f = build_recovery_field(w, {epsilon, 0}, g);
  const BackgroundField bg = make_background(g);
  const EnergyParams p = make_energy_params(g, epsilon, lambda);
  r.breakdown = total_energy(f, bg, p);
  r.ratio = r.breakdown.total / r.limit;
  return r;
}

std::string recovery_json(const RecoveryReport& r) {
  nlohmann::json j;
  j["epsilon"] = r.epsilon;
  j["lambda"] = r.lambda;
  j["E0"] = r.limit;
  j["E_eps_breakdown"] = {{"exchange", r.breakdown.exchange},
                          {"anisotropy", r.breakdown.anisotropy},
                          {"stray", r.breakdown.stray},
                          {"total", r.breakdown.total}};
  j["ratio"] = r.ratio;
  return j.dump();
}

}  // namespace zigzag
