#include <algorithm>
#include <cmath>

#include "relac/distribution.hpp"
#include "relac/errors.hpp"

namespace relac {

namespace {

// Largest x in [0, x_max] with f(x) >= y; f nonincreasing on [0, x_max].
double level_radius(const std::function<double(double)>& f, double y, double x_max) {
  if (f(x_max) >= y) return x_max;
  double lo = 0.0, hi = x_max;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Rough upper-tail mass beyond `from`, used only for the truncation report.
double tail_mass_estimate(const std::function<double(double)>& f, double from,
                          double x_max) {
  if (from >= x_max) return 0.0;
  const int steps = 512;
  double s = 0.0;
  const double h = (x_max - from) / steps;
  for (int i = 0; i < steps; ++i) s += f(from + (i + 0.5) * h) * h;
  return s;
}

}  // namespace

ScaleLaw mixture_decompose(const std::function<double(double)>& f, double x_max,
                           std::size_t levels) {
  if (levels < 16) throw config_error("mixture_decompose: need at least 16 levels");
  const double f0 = f(0.0);
  if (!(std::isfinite(f0) && f0 > 0.0))
    throw shape_error("mixture_decompose: f(0) must be finite and positive");

  // Level sets are intervals iff f is nonincreasing away from 0; check on a
  // grid, and check symmetry while we are at it.
  const int probe = 2048;
  double prev = f0;
  for (int i = 1; i <= probe; ++i) {
    const double x = x_max * i / probe;
    const double fx = f(x);
    if (fx > prev + 1e-9 * f0)
      throw shape_error("mixture_decompose: density is not unimodal on the grid");
    if (std::abs(fx - f(-x)) > 1e-9 * f0)
      throw shape_error("mixture_decompose: density is not symmetric");
    prev = fx;
  }

  ScaleLaw rep;
  rep.f0 = f0;
  // Heights f0 * exp(-u), u from u_max down to 0; log spacing resolves the
  // tail levels where g blows up.
  const double u_max = 23.0;
  const std::size_t n = levels;
  rep.y.resize(n + 1);
  rep.g.resize(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const double u = u_max * (1.0 - static_cast<double>(j) / n);
    const double y = f0 * std::exp(-u);
    rep.y[j] = y;
    rep.g[j] = 2.0 * level_radius(f, y, x_max);
  }
  // Bisection jitter can break monotonicity in the last digit; restore it.
  for (std::size_t j = 1; j <= n; ++j) rep.g[j] = std::min(rep.g[j], rep.g[j - 1]);

  rep.cum.resize(n + 1);
  rep.cum[0] = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double dy = rep.y[j] - rep.y[j - 1];
    rep.cum[j] = rep.cum[j - 1] + 0.5 * (rep.g[j] + rep.g[j - 1]) * dy;
  }
  // Mass below the lowest tabulated level: the rectangle under y_min plus the
  // tail of f beyond the widest tabulated level set.
  const double y_min = rep.y[0];
  double tail = y_min * rep.g[0];
  tail += 2.0 * tail_mass_estimate(f, rep.g[0] / 2.0, x_max);
  rep.mass = rep.cum[n] + tail;
  return rep;
}

double ScaleLaw::g_at(double height) const {
  if (height <= y.front()) return g.front();
  if (height >= y.back()) return g.back();
  const auto it = std::upper_bound(y.begin(), y.end(), height);
  const std::size_t j = static_cast<std::size_t>(it - y.begin());
  const double t = (height - y[j - 1]) / (y[j] - y[j - 1]);
  return g[j - 1] + t * (g[j] - g[j - 1]);
}

double ScaleLaw::sample_height(RngStream& rng) const {
  const double target = rng.uniform01() * cum.back();
  const auto it = std::upper_bound(cum.begin(), cum.end(), target);
  std::size_t j = static_cast<std::size_t>(it - cum.begin());
  if (j == 0) j = 1;
  if (j > cum.size() - 1) j = cum.size() - 1;
  const double seg = cum[j] - cum[j - 1];
  const double t = seg > 0 ? (target - cum[j - 1]) / seg : 0.5;
  return y[j - 1] + t * (y[j] - y[j - 1]);
}

double ScaleLaw::sample_point(RngStream& rng) const {
  const double xi = g_at(sample_height(rng));
  return xi * (rng.uniform01() - 0.5);
}

double ScaleLaw::density_at(double x) const {
  // f(x) = Leb{y : g(y) >= 2|x|}; g is nonincreasing in y, so this is the
  // height at which g crosses 2|x|.
  const double target = 2.0 * std::abs(x);
  if (target <= g.back()) return y.back();
  if (target > g.front()) return 0.0;
  // Binary search for the crossing (g decreasing).
  std::size_t lo = 0, hi = g.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (g[mid] >= target)
      lo = mid;
    else
      hi = mid;
  }
  const double span = g[lo] - g[hi];
  const double t = span > 0 ? (g[lo] - target) / span : 0.5;
  return y[lo] + t * (y[hi] - y[lo]);
}

double ScaleLaw::xi_square_mean() const {
  double s = 0.0;
  for (std::size_t j = 1; j < y.size(); ++j) {
    const double dy = y[j] - y[j - 1];
    const double a = g[j - 1], b = g[j];
    s += 0.5 * (a * a * a + b * b * b) * dy;
  }
  return s / mass;
}

double ScaleLaw::xi_inverse_square_mean() const {
  double s = 0.0;
  for (std::size_t j = 1; j < y.size(); ++j) {
    const double dy = y[j] - y[j - 1];
    const double a = g[j - 1], b = g[j];
    if (a <= 0.0 || b <= 0.0) continue;
    s += 0.5 * (1.0 / a + 1.0 / b) * dy;
  }
  return s / mass;
}

}  // namespace relac
