#include "zigzag/energy.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "json.hpp"
#include "zigzag/spectral.hpp"

namespace zigzag {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Angle difference reduced to (-pi, pi]: the director is theta mod 2 pi, so
// the energy must not see chart seams.
inline double angle_diff(double b, double a) {
  return std::remainder(b - a, 2 * kPi);
}

double log_factor(const EnergyParams& p) {
  return kPi * p.lambda / (2 * std::abs(std::log(p.epsilon)));
}

}  // namespace

EnergyParams make_energy_params(const StripGrid& grid, double epsilon,
                                double lambda) {
  if (!(epsilon > 0) || !(epsilon < 0.25))
    throw std::invalid_argument(
        "make_energy_params: epsilon must lie in (0, 1/4), got " +
        std::to_string(epsilon));
  if (!(lambda >= 0))
    throw std::invalid_argument("make_energy_params: lambda must be >= 0, got " +
                                std::to_string(lambda));
  EnergyParams p;
  p.grid = grid;
  p.epsilon = epsilon;
  p.lambda = lambda;
  p.wall_resolved = epsilon >= 2 * grid.hx;
  if (!p.wall_resolved)
    std::cerr << "note: epsilon = " << epsilon << " < 2 hx = " << 2 * grid.hx
              << "; the wall profile is narrower than the grid resolves\n";
  return p;
}

std::pair<double, double> local_energy(const DirectorField& f,
                                       const EnergyParams& p) {
  const StripGrid& g = f.grid;
  if (!g.same_as(p.grid))
    throw std::invalid_argument("local_energy: field and params grids differ");
  const double cell = g.hx * g.hy;
  double grad2 = 0, sin2 = 0;
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const double t = f.theta[g.idx(i, j)];
      if (i + 1 < g.nx) {
        const double d1 = angle_diff(f.theta[g.idx(i + 1, j)], t) / g.hx;
        grad2 += d1 * d1;
      }
      const double d2 =
          angle_diff(f.theta[g.idx(i, (j + 1) % g.ny)], t) / g.hy;
      grad2 += d2 * d2;
      const double s = std::sin(t);
      sin2 += s * s;
    }
  }
  return {0.5 * p.epsilon * grad2 * cell, sin2 * cell / (2 * p.epsilon)};
}

double stray_energy(const DirectorField& f, const BackgroundField& bg,
                    const EnergyParams& p) {
  if (!f.grid.same_as(p.grid))
    throw std::invalid_argument("stray_energy: field and params grids differ");
  if (p.lambda == 0) return 0.0;
  const ChargeDensity cd = charge_density(f, bg);
  return log_factor(p) * fractional_norm(f.grid, cd.sigma, -0.5);
}

EnergyBreakdown total_energy(const DirectorField& f, const BackgroundField& bg,
                             const EnergyParams& p) {
  EnergyBreakdown b;
  const auto [ex, an] = local_energy(f, p);
  b.exchange = ex;
  b.anisotropy = an;
  b.stray = stray_energy(f, bg, p);
  b.total = b.exchange + b.anisotropy + b.stray;
  return b;
}

std::vector<double> energy_gradient(const DirectorField& f,
                                    const BackgroundField& bg,
                                    const EnergyParams& p) {
  const StripGrid& g = f.grid;
  if (!g.same_as(p.grid))
    throw std::invalid_argument("energy_gradient: field and params grids differ");
  const double cell = g.hx * g.hy;
  std::vector<double> grad(static_cast<std::size_t>(g.size()), 0.0);

  // Local terms.
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      const std::size_t k = g.idx(i, j);
      const double t = f.theta[k];
      if (i + 1 < g.nx) {
        const std::size_t kf = g.idx(i + 1, j);
        const double d1 = angle_diff(f.theta[kf], t) / g.hx;
        const double w = p.epsilon * cell * d1 / g.hx;
        grad[kf] += w;
        grad[k] -= w;
      }
      const std::size_t kf = g.idx(i, (j + 1) % g.ny);
      const double d2 = angle_diff(f.theta[kf], t) / g.hy;
      const double w = p.epsilon * cell * d2 / g.hy;
      grad[kf] += w;
      grad[k] -= w;
      grad[k] += std::sin(2 * t) * cell / (2 * p.epsilon);
    }
  }

  // Stray term: d stray / d sigma from the spectral multiplier, pushed back
  // through the charge-density stencil, then through m = (cos, sin) theta.
  if (p.lambda > 0) {
    const ChargeDensity cd = charge_density(f, bg);
    const FractionalNormWithGrad fn =
        fractional_norm_with_grad(g, cd.sigma, -0.5);
    const double pref = log_factor(p);
    std::vector<double> gu(static_cast<std::size_t>(g.size()), 0.0);
    std::vector<double> gv(static_cast<std::size_t>(g.size()), 0.0);
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j < g.ny; ++j) {
        const double gs = pref * fn.grad[g.idx(i, j)];
        if (i == 0) {
          gu[g.idx(1, j)] += gs / g.hx;
          gu[g.idx(0, j)] -= gs / g.hx;
        } else if (i == g.nx - 1) {
          gu[g.idx(i, j)] += gs / g.hx;
          gu[g.idx(i - 1, j)] -= gs / g.hx;
        } else {
          gu[g.idx(i + 1, j)] += gs / (2 * g.hx);
          gu[g.idx(i - 1, j)] -= gs / (2 * g.hx);
        }
        gv[g.idx(i, (j + 1) % g.ny)] += gs / (2 * g.hy);
        gv[g.idx(i, (j + g.ny - 1) % g.ny)] -= gs / (2 * g.hy);
      }
    }
    for (int k = 0; k < g.size(); ++k) {
      const double t = f.theta[static_cast<std::size_t>(k)];
      grad[static_cast<std::size_t>(k)] +=
          -std::sin(t) * gu[static_cast<std::size_t>(k)] +
          std::cos(t) * gv[static_cast<std::size_t>(k)];
    }
  }

  for (int k = 0; k < g.size(); ++k)
    if (f.frozen[static_cast<std::size_t>(k)]) grad[static_cast<std::size_t>(k)] = 0.0;
  return grad;
}

std::string energy_json(const EnergyParams& p, const EnergyBreakdown& b) {
  nlohmann::json j;
  j["epsilon"] = p.epsilon;
  j["lambda"] = p.lambda;
  j["exchange"] = b.exchange;
  j["anisotropy"] = b.anisotropy;
  j["stray"] = b.stray;
  j["total"] = b.total;
  return j.dump();
}

}  // namespace zigzag
