#include "zigzag/descent.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "zigzag/recovery.hpp"
#include "zigzag/wall.hpp"

namespace zigzag {

namespace {
constexpr double kPi = 3.14159265358979323846;

double sup_gradient_density(const std::vector<double>& g, double cell) {
  double m = 0;
  for (double v : g) m = std::max(m, std::abs(v));
  return m / cell;
}
}  // namespace

DescentResult minimize(const DirectorField& start, const BackgroundField& bg,
                       const EnergyParams& p, const DescentOptions& options) {
  if (!start.grid.same_as(p.grid) || !bg.grid.same_as(p.grid))
    throw std::invalid_argument("minimize: field, background and params must share a grid");
  if (options.max_iters < 1)
    throw std::invalid_argument("minimize: max_iters must be at least 1");
  if (options.tol < 0 || options.step0 < 0)
    throw std::invalid_argument("minimize: tolerance and step must be nonnegative");

  const StripGrid& g = p.grid;
  const double cell = g.hx * g.hy;
  const double tol = options.tol > 0 ? options.tol : 1e-4 / p.epsilon;
  // Explicit-Euler scale of the stiffest local terms: anisotropy curvature
  // 1/eps plus exchange curvature 4 eps (1/hx^2 + 1/hy^2).
  const double stiff = 1.0 / p.epsilon +
                       4 * p.epsilon * (1.0 / (g.hx * g.hx) + 1.0 / (g.hy * g.hy));
  double step = options.step0 > 0 ? options.step0 : 1.0 / stiff;
  const double step_max = step * 64;

  DescentResult res;
  res.field = start;
  res.energy = total_energy(res.field, bg, p);
  res.log.push_back({0, res.energy, 0.0, 0.0});

  std::vector<double> trial(res.field.theta.size());
  for (int it = 1; it <= options.max_iters; ++it) {
    const std::vector<double> grad = energy_gradient(res.field, bg, p);
    const double gnorm = sup_gradient_density(grad, cell);
    res.log.back().grad_norm = gnorm;
    if (gnorm <= tol) {
      res.converged = true;
      break;
    }

    double g2 = 0;  // squared norm in the functional metric
    for (double v : grad) g2 += v * v;
    g2 /= cell;

    bool accepted = false;
    double used = step;
    for (int bt = 0; bt < 40; ++bt) {
      for (std::size_t i = 0; i < trial.size(); ++i) {
        trial[i] = res.field.frozen[i]
                       ? res.field.theta[i]
                       : res.field.theta[i] - used * grad[i] / cell;
      }
      DirectorField cand = res.field;
      cand.theta = trial;
      const EnergyBreakdown eb = total_energy(cand, bg, p);
      const bool ok = options.backtracking
                          ? eb.total <= res.energy.total - 1e-4 * used * g2
                          : true;
      if (ok) {
        res.field.theta.swap(cand.theta);
        res.energy = eb;
        res.log.push_back({it, eb, 0.0, used});
        accepted = true;
        // Grow the step again after an immediate acceptance.
        if (options.backtracking && bt == 0) step = std::min(step * 1.5, step_max);
        else step = used;
        break;
      }
      used *= 0.5;
    }
    if (!accepted) {
      res.diverged = true;
      res.message = "backtracking exhausted at iteration " + std::to_string(it);
      break;
    }
  }
  if (!res.converged && !res.diverged && res.log.size() > 1) {
    // Record the final gradient norm for the last accepted iterate.
    const std::vector<double> grad = energy_gradient(res.field, bg, p);
    res.log.back().grad_norm = sup_gradient_density(grad, cell);
  }
  return res;
}

DirectorField perturbed_straight_start(const StripGrid& g, double epsilon,
                                       unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0, 1);
  const double amp = 0.04 + 0.04 * U(rng);
  const int mode = 1 + static_cast<int>(U(rng) * 3);
  const double phase = 2 * kPi * U(rng);
  // The classic kink profile across a sinusoidal wall line, evaluated at the
  // horizontal offset.  theta decays like exp(-dist/eps) toward the clamped
  // values, so the boundary clamp introduces no visible seam; an initializer
  // needs admissibility and a broken symmetry, not the sharp recovery tube.
  return make_admissible_field(g, [=](double x1, double x2) {
    const double gamma = amp * std::sin(2 * kPi * mode * x2 / g.ell + phase);
    return 2 * std::atan(std::exp(-(x1 - gamma) / epsilon));
  });
}

WallTrace extract_wall(const DirectorField& f) {
  const StripGrid& g = f.grid;
  WallTrace t;
  t.x2.resize(static_cast<std::size_t>(g.ny));
  t.gamma.assign(static_cast<std::size_t>(g.ny),
                 std::numeric_limits<double>::quiet_NaN());
  t.row_valid.assign(static_cast<std::size_t>(g.ny), 0);
  t.crossings_min = g.nx;
  t.crossings_max = 0;
  bool all = g.ny > 0;
  for (int j = 0; j < g.ny; ++j) {
    t.x2[static_cast<std::size_t>(j)] = g.x2(j);
    int crossings = 0;
    double pos = 0;
    for (int i = 0; i + 1 < g.nx; ++i) {
      const double a = f.u(i, j), b = f.u(i + 1, j);
      if ((a < 0 && b >= 0) || (a >= 0 && b < 0)) {
        ++crossings;
        pos = g.x1(i) + g.hx * (0.0 - a) / (b - a);
      }
    }
    t.crossings_min = std::min(t.crossings_min, crossings);
    t.crossings_max = std::max(t.crossings_max, crossings);
    if (crossings == 1) {
      t.gamma[static_cast<std::size_t>(j)] = pos;
      t.row_valid[static_cast<std::size_t>(j)] = 1;
    } else {
      all = false;
    }
  }
  t.valid = all;
  return t;
}

SlopeStats slope_stats(const WallTrace& t) {
  SlopeStats s;
  const std::size_t n = t.gamma.size();
  if (n < 2) return s;
  const double hy = t.x2.size() > 1 ? t.x2[1] - t.x2[0] : 0;
  double len = 0, height = 0;
  s.min_abs_n1 = 1;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t jn = (j + 1) % n;
    if (!t.row_valid[j] || !t.row_valid[jn]) continue;
    const double dg = t.gamma[jn] - t.gamma[j];
    const double seg = std::sqrt(dg * dg + hy * hy);
    const double n1 = hy / seg;
    ++s.segments;
    len += seg;
    height += hy;
    s.min_abs_n1 = std::min(s.min_abs_n1, n1);
    s.max_abs_n1 = std::max(s.max_abs_n1, n1);
  }
  if (s.segments == 0) {
    s.min_abs_n1 = 0;
    return s;
  }
  s.trace_length = len;
  s.mean_abs_n1 = height / len;
  s.valid = t.valid;
  return s;
}

std::string descent_log_csv(const std::vector<DescentLogRow>& log) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "iter,exchange,anisotropy,stray,total,grad_norm,step\n";
  for (const DescentLogRow& r : log) {
    os << r.iter << ',' << r.energy.exchange << ',' << r.energy.anisotropy
       << ',' << r.energy.stray << ',' << r.energy.total << ',' << r.grad_norm
       << ',' << r.step << '\n';
  }
  return os.str();
}

}  // namespace zigzag
