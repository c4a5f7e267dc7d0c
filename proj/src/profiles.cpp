#include "zigzag/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "zigzag/quadrature.hpp"

namespace zigzag {
namespace {

// Gudermannian: gd(x) = asin(tanh(x)) = sign(x) * (pi/2 - 2 atan(e^{-|x|})).
// The atan form is overflow-free and keeps full precision for large |x|.
double gd(double x) {
  const double s = x < 0 ? -1.0 : 1.0;
  return s * (M_PI_2 - 2.0 * std::atan(std::exp(-std::abs(x))));
}

double sech(double x) {
  const double e = std::exp(-std::abs(x));
  return 2.0 * e / (1.0 + e * e);
}

// Absolute-tolerance wrapper: coarse composite pass to estimate the magnitude,
// then adaptive refinement against rel_tol * magnitude.
double integrate_rel(const std::function<double(double)>& f,
                     std::vector<double> knots, double rel_tol) {
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  double rough = 0.0;
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1], h = (b - a) / 16.0;
    double s = 0.5 * (f(a) + f(b));
    for (int j = 1; j < 16; ++j) s += f(a + j * h);
    rough += s * h;
  }
  const double tol = rel_tol * std::max(std::abs(rough), 1e-3);
  return integrate_split(f, knots, tol);
}

std::vector<double> clamp_knots(std::vector<double> k, double lo, double hi) {
  std::vector<double> out{lo, hi};
  for (double x : k)
    if (x > lo && x < hi) out.push_back(x);
  return out;
}

}  // namespace

WallProfile::WallProfile(double eps_, double beta_) : eps(eps_), beta(beta_) {
  if (!(eps > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("WallProfile: eps and beta must be positive");
  a = M_PI_2 / gd(beta / eps);
}

double WallProfile::u(double t) const {
  if (t >= beta) return 1.0;
  if (t <= -beta) return -1.0;
  return std::sin(a * gd(t / eps));
}

double WallProfile::v(double t) const {
  if (std::abs(t) >= beta) return 0.0;
  return std::cos(a * gd(t / eps));
}

double WallProfile::du(double t) const {
  if (std::abs(t) >= beta) return 0.0;
  return a * std::cos(a * gd(t / eps)) * sech(t / eps) / eps;
}

double WallProfile::dv(double t) const {
  if (std::abs(t) >= beta) return 0.0;
  return -a * std::sin(a * gd(t / eps)) * sech(t / eps) / eps;
}

ProfileIntegrals profile_integrals(double eps, double beta, double R,
                                   double rel_tol) {
  if (R < beta) throw std::invalid_argument("profile_integrals: need R >= beta");
  const WallProfile p(eps, beta);

  std::vector<double> core;  // scales inside the transition region
  for (double s : {0.0, eps, 3 * eps, 10 * eps, 30 * eps, 100 * eps})
    if (s < beta) core.push_back(s);
  core.push_back(beta);

  // (i): even integrand, integrate the half line and double.
  std::vector<double> k1 = core;
  const double local =
      2.0 * integrate_rel(
                [&](double t) {
                  const double duv = p.a * sech(t / eps) / eps;  // |(u,v)'| on the tube
                  return 0.5 * (eps * duv * duv + p.v(t) * p.v(t) / eps);
                },
                k1, rel_tol);

  // The correlation integrals are evaluated in core-scaled coordinates
  // t = eps*tau, w = eps*omega.  This keeps every internal scale O(1), so the
  // quadrature accuracy is uniform in eps; the delicate cancellation in the
  // log-kernel v-integral (whose log(1/eps) coefficient is (v(beta)-v(-beta))^2 = 0)
  // happens analytically instead of numerically.
  const double M = std::min(beta / eps, 60.0);  // deviation-from-plateau support cap
  const double wmin = 1e-12;

  auto fd_value = [&](auto&& field) {
    // (1/2) \iint_{[-R,R]^2} |f(t)-f(s)|^2/(t-s)^2 = \int_0^{2R/eps} Phi(w)/w^2 dw
    auto Phi = [&](double w) {
      const double lo = std::max(-R / eps, -w - M);
      const double hi = std::min(R / eps - w, M);
      if (hi <= lo) return 0.0;
      std::vector<double> k{lo, hi};
      for (double c : {-w - 5, -w, -w + 5, -5.0, 0.0, 5.0, -M, M, -w - M, M - w})
        if (c > lo && c < hi) k.push_back(c);
      return integrate_split(
          [&](double tau) {
            const double d = field(eps * (tau + w)) - field(eps * tau);
            return d * d;
          },
          k, rel_tol * 0.02 * (1.0 + w));
    };
    auto G = [&](double w) {
      w = std::max(w, wmin);
      return Phi(w) / (w * w);
    };
    std::vector<double> kw{0.0, 1.0, 3.0, 10.0, 30.0, 2 * M};
    for (double w = 4 * M; w < 2 * R / eps; w *= 3.0) kw.push_back(w);
    kw.push_back(2 * R / eps);
    return integrate_rel(G, clamp_knots(kw, 0.0, 2 * R / eps), rel_tol);
  };

  auto log_value = [&](auto&& deriv) {
    // \iint f'(t)f'(s) log(1/|t-s|) = 2 \int_0^{2M} (log(1/eps) + log(1/w)) H(w) dw
    const double L = std::log(1.0 / eps);
    auto H = [&](double w) {
      const double lo = -M, hi = M - w;
      if (hi <= lo) return 0.0;
      std::vector<double> k{lo, hi};
      for (double c : {-w - 5, -w, -w + 5, -5.0, 0.0, 5.0})
        if (c > lo && c < hi) k.push_back(c);
      return integrate_split(
          [&](double tau) {
            return eps * deriv(eps * (tau + w)) * eps * deriv(eps * tau);
          },
          k, rel_tol * 0.02);
    };
    auto G = [&](double w) {
      w = std::max(w, wmin);
      return (L + std::log(1.0 / w)) * H(w);
    };
    return 2.0 * integrate_rel(G, clamp_knots({0.0, 1.0, 3.0, 10.0, 30.0, 2 * M},
                                              0.0, 2 * M),
                               rel_tol);
  };

  ProfileIntegrals out;
  out.local = local;
  out.u_fd = fd_value([&](double t) { return p.u(t); });
  out.u_log = log_value([&](double t) { return p.du(t); });
  out.v_fd = fd_value([&](double t) { return p.v(t); });
  out.v_log = log_value([&](double t) { return p.dv(t); });
  out.u_fd_scale = 4.0 * std::log(1.0 + R / eps);
  out.u_log_scale = 4.0 * std::log(1.0 / eps + 1.0 / beta);
  return out;
}

CutoffProfile::CutoffProfile(double eps_) : eps(eps_) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("CutoffProfile: need 0 < eps < 1");
  delta = std::pow(std::abs(std::log(eps)), -0.25);
  t1 = eps + delta * std::sqrt(1.0 - eps * eps);
}

double CutoffProfile::eta(double t) const {
  const double s = std::abs(t);
  if (s <= eps) return 1.0;
  if (s >= t1) return 0.0;
  const double r = (s - eps) / delta;
  return -0.5 * std::log(r * r + eps * eps) / std::abs(std::log(eps));
}

double CutoffProfile::deta(double t) const {
  const double s = std::abs(t);
  if (s <= eps || s >= t1) return 0.0;
  const double d = s - eps;
  const double val = d / ((d * d + eps * eps * delta * delta) * std::abs(std::log(eps)));
  return t < 0 ? val : -val;
}

CutoffChecks cutoff_checks(double eps, double rel_tol) {
  const CutoffProfile c(eps);
  const double L = std::abs(std::log(eps));
  const double cc = c.delta * eps;  // inner scale of the decay region

  std::vector<double> k{c.eps, c.t1};
  for (double s : {cc, 3 * cc, 10 * cc, 100 * cc, 1000 * cc})
    if (c.eps + s < c.t1) k.push_back(c.eps + s);

  auto dsq = [&](double t) { const double d = c.deta(t); return d * d; };

  CutoffChecks out;
  const double hi = std::min(c.t1, 1.0);
  std::vector<double> k1{c.eps, hi};
  for (double x : k)
    if (x > c.eps && x < hi) k1.push_back(x);
  out.half_line_weighted =
      integrate_rel([&](double t) { return t * dsq(t); }, k1, rel_tol);
  out.scaled_weighted = L * out.half_line_weighted;
  const double eta_sq =
      integrate_rel([&](double t) { const double e = c.eta(t); return e * e; }, k,
                    rel_tol);
  out.mass = (2.0 / c.delta) * (c.eps + eta_sq);
  out.grad_mass = eps * c.delta * 2.0 * integrate_rel(dsq, k, rel_tol);
  out.scaled_mass = L * L * (out.mass + out.grad_mass);
  return out;
}

}  // namespace zigzag
