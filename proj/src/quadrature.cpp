#include "relac/quadrature.hpp"

#include <cmath>
#include <vector>

#include "relac/errors.hpp"

namespace relac {

namespace {

struct SimpsonState {
  const std::function<double(double)>* f;
  double abs_tol;
  int max_depth;
};

double simpson(const SimpsonState& st, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = (*st.f)(lm), frm = (*st.f)(rm);
  const double h = b - a;
  const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
  const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= st.max_depth) {
    if (std::abs(delta) > 128.0 * st.abs_tol)
      throw numeric_error("adaptive quadrature failed to converge");
    return left + right + delta / 15.0;
  }
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
  if (!(b >= a)) throw config_error("integrate: bad interval");
  if (a == b) return 0.0;
  SimpsonState st{&f, opt.abs_tol, opt.max_depth};
  const int n = opt.initial_panels > 0 ? opt.initial_panels : 1;
  const double h = (b - a) / n;
  double total = 0.0;
  const double panel_tol = opt.abs_tol / n;
  for (int i = 0; i < n; ++i) {
    const double x0 = a + i * h, x1 = a + (i + 1) * h;
    const double xm = 0.5 * (x0 + x1);
    const double f0 = f(x0), fm = f(xm), f1 = f(x1);
    const double whole = (h / 6.0) * (f0 + 4.0 * fm + f1);
    total += simpson(st, x0, x1, f0, fm, f1, whole, panel_tol, 0);
  }
  return total;
}

double integrate_line(const std::function<double(double)>& f, double start_radius,
                      const QuadratureOptions& opt) {
  double r = start_radius > 0 ? start_radius : 1.0;
  double value = integrate(f, -r, r, opt);
  for (int it = 0; it < 40; ++it) {
    const double r2 = 2.0 * r;
    const double wings =
        integrate(f, r, r2, opt) + integrate(f, -r2, -r, opt);
    value += wings;
    r = r2;
    if (std::abs(wings) < 0.25 * opt.abs_tol) return value;
  }
  throw numeric_error("integrate_line: integrand does not decay");
}

double decay_radius(const std::function<double(double)>& f, double start, double cutoff) {
  double r = start > 0 ? start : 1.0;
  for (int it = 0; it < 60; ++it) {
    bool small = true;
    for (int j = 0; j < 8; ++j) {
      const double x = r * (1.0 + j / 8.0);
      if (std::abs(f(x)) >= cutoff || std::abs(f(-x)) >= cutoff) {
        small = false;
        break;
      }
    }
    if (small) return r * 2.0;
    r *= 2.0;
  }
  throw numeric_error("decay_radius: no decay detected");
}

long double gauss_weight_trapezoid(const std::function<long double(long double)>& f,
                                   long double x_max, long double step) {
  // Kahan-compensated sum; the grid includes 0 and is symmetric.
  long double sum = 0.0L, comp = 0.0L;
  const long long m = static_cast<long long>(x_max / step);
  for (long long k = -m; k <= m; ++k) {
    const long double x = static_cast<long double>(k) * step;
    const long double term = f(x) * std::exp(-x * x);
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum * step;
}

}  // namespace relac
