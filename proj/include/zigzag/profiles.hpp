#pragma once

namespace zigzag {

// Odd 1d transition profile with core width eps, clamped to +-1 beyond |t| = beta.
// u(t) = sin(a * gd(t/eps)) with gd(x) = asin(tanh(x)) and a chosen so u(+-beta) = +-1;
// v = sqrt(1 - u^2) picks the nonnegative root and vanishes beyond the clamp.
struct WallProfile {
  double eps;
  double beta;
  double a;  // (pi/2) / gd(beta/eps); tends to 1 as beta/eps grows

  WallProfile(double eps, double beta);
  double u(double t) const;
  double v(double t) const;
  double du(double t) const;
  double dv(double t) const;
};

// Quadrature values for the profile's energy-type integrals, together with the
// logarithmic reference scales they are measured against.
struct ProfileIntegrals {
  double local;       // (1/2) \int eps (u'^2 + v'^2) + v^2/eps dt
  double u_fd;        // (1/2) \iint_{[-R,R]^2} |u(t)-u(s)|^2 / |t-s|^2
  double u_log;       // \iint u'(t) u'(s) log(1/|t-s|)
  double v_fd;        // same finite-difference integral for v
  double v_log;       // same log-kernel integral for v
  double u_fd_scale;  // 4 log(1 + R/eps)
  double u_log_scale; // 4 log(1/eps + 1/beta)
};
ProfileIntegrals profile_integrals(double eps, double beta, double R,
                                   double rel_tol = 1e-4);

// Logarithmic cutoff profile: eta = 1 on |t| <= eps, then
// eta(t) = -log(sqrt(((|t|-eps)/delta)^2 + eps^2)) / |log eps| down to 0,
// with delta = |log eps|^{-1/4}; support is contained in (-2 delta, 2 delta).
struct CutoffProfile {
  double eps;
  double delta;
  double t1;  // eps + delta * sqrt(1 - eps^2): outer end of the decay region

  explicit CutoffProfile(double eps);
  double eta(double t) const;
  double deta(double t) const;
};

// Scaled quantities whose boundedness the tests pin down:
// scaled_weighted -> 1 from above as eps -> 0, scaled_mass stays O(1).
struct CutoffChecks {
  double half_line_weighted;  // \int_0^1 t |eta'|^2 dt
  double scaled_weighted;     // |log eps| * half_line_weighted
  double mass;                // (1/delta) \int eta^2 dt
  double grad_mass;           // eps * delta * \int |eta'|^2 dt
  double scaled_mass;         // |log eps|^2 * (mass + grad_mass)
};
CutoffChecks cutoff_checks(double eps, double rel_tol = 1e-6);

}  // namespace zigzag
