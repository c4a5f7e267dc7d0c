#include "zigzag/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace zigzag {
namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h * (fa + 4.0 * fm + fb) / 6.0;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = (left + right - whole) / 15.0;
  if (depth <= 0 || std::abs(err) <= tol) return left + right + err;
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return adapt(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double integrate_split(const std::function<double(double)>& f,
                       const std::vector<double>& knots, double tol, int max_depth) {
  std::vector<double> k(knots);
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  double total = 0.0;
  const double per = tol / std::max<size_t>(1, k.size() - 1);
  for (size_t i = 0; i + 1 < k.size(); ++i)
    total += integrate(f, k[i], k[i + 1], per, max_depth);
  return total;
}

}  // namespace zigzag
