#pragma once
#include <functional>
#include <vector>

namespace zigzag {

// Adaptive Simpson integration of f over [a, b].  The error estimate per panel is
// |S_fine - S_coarse|/15; panels are split until the local estimate fits into the
// budget tol distributed over the remaining width.  Integrable endpoint
// singularities (log-type) are handled by depth alone, so max_depth is generous.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10, int max_depth = 48);

// Same, but with a forced initial subdivision at the given interior knots.
// Use when the integrand has known internal scales (profile cores, kinks).
double integrate_split(const std::function<double(double)>& f,
                       const std::vector<double>& knots, double tol = 1e-10,
                       int max_depth = 48);

}  // namespace zigzag
