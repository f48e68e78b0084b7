#include "relac/bounds.hpp"

#include <cmath>
#include <limits>

#include "relac/errors.hpp"
#include "relac/quadrature.hpp"

namespace relac {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::string theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::conjecture: return "conjecture";
    case TheoremId::gaussian: return "gaussian";
    case TheoremId::subgaussian: return "subgaussian";
    case TheoremId::subexponential: return "subexponential";
    case TheoremId::logconcave: return "logconcave";
    case TheoremId::sodin: return "sodin";
    case TheoremId::rv_smallball: return "rv_smallball";
    case TheoremId::bernstein_tail: return "bernstein_tail";
    case TheoremId::cauchy_interval: return "cauchy_interval";
    case TheoremId::mix_logconcave: return "mix_logconcave";
    case TheoremId::mix_uniform: return "mix_uniform";
  }
  return "?";
}

TheoremId theorem_from_name(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(TheoremId::mix_uniform); ++i)
    if (theorem_name(static_cast<TheoremId>(i)) == name)
      return static_cast<TheoremId>(i);
  throw config_error("unknown theorem id: '" + name + "'");
}

double BoundReport::term(const std::string& name) const {
  for (const auto& [k, v] : terms)
    if (k == name) return v;
  throw config_error("bound report has no term '" + name + "'");
}

double BoundReport::constant(const std::string& name) const {
  for (const auto& [k, v] : constants)
    if (k == name) return v;
  throw config_error("bound report has no constant '" + name + "'");
}

BoundReport gaussian_bound(const CoefficientVector& alpha, const CoefficientVector& beta) {
  if (alpha.is_zero()) throw config_error("gaussian_bound: alpha must be nonzero");
  BoundReport r;
  r.id = TheoremId::gaussian;
  const double ratio = beta.norm() / alpha.norm();
  r.terms = {{"ratio", ratio}};
  r.constants = {{"C", 2.0}};
  r.rhs = 2.0 * ratio;
  r.vacuous = r.rhs > 1.0;
  return r;
}

double cauchy_interval_mass(double a, double ell) {
  if (!(ell > 0.0)) throw config_error("cauchy_interval_mass: ell must be positive");
  return (std::atan(a + ell) - std::atan(a - ell)) / kPi;
}

double cauchy_interval_bound(double a, double ell) {
  if (!(ell > 0.0)) throw config_error("cauchy_interval_bound: ell must be positive");
  double best = 2.0 * ell / kPi;  // peak density 1/pi
  if (a - ell > 0.0) {
    // Density on the interval is at most 1/(pi (a-l)^2).
    best = std::min(best, 2.0 * ell / (kPi * (a - ell) * (a - ell)));
  }
  if (a + ell < 0.0) {
    best = std::min(best, 2.0 * ell / (kPi * (a + ell) * (a + ell)));
  }
  return best;
}

BoundReport rv_smallball_bound(double epsilon, double lcd_value, double gamma, double C_p,
                               double c_p) {
  if (!(epsilon >= 0.0) || !(gamma > 0.0) || !(C_p > 0.0) || !(c_p > 0.0) ||
      !(lcd_value > 0.0))
    throw config_error("rv_smallball_bound: inputs must be positive");
  BoundReport r;
  r.id = TheoremId::rv_smallball;
  const double lcd_term = std::isinf(lcd_value) ? 0.0 : 1.0 / lcd_value;
  const double gamma_term = std::exp(-c_p * gamma * gamma);
  r.terms = {{"epsilon", epsilon}, {"lcd", lcd_term}, {"gamma", gamma_term}};
  r.constants = {{"C_p", C_p}, {"c_p", c_p}};
  r.rhs = C_p * (epsilon + lcd_term + gamma_term);
  r.vacuous = r.rhs > 1.0;
  return r;
}

BoundReport theorem_bound(TheoremId id, const CoefficientVector& alpha,
                          const CoefficientVector& beta, double gamma,
                          const TheoremConstants& k) {
  if (alpha.is_zero()) throw config_error("theorem_bound: alpha must be nonzero");
  if (alpha.dim() != beta.dim()) throw config_error("theorem_bound: dimension mismatch");
  if (gamma <= 0.0) gamma = std::sqrt(static_cast<double>(alpha.dim()));

  BoundReport r;
  r.id = id;
  const double ratio = beta.norm() / alpha.norm();

  if (id == TheoremId::gaussian) return gaussian_bound(alpha, beta);
  if (id == TheoremId::logconcave) {
    r.terms = {{"ratio", ratio}};
    r.constants = {{"C", k.C_logconcave}};
    r.rhs = k.C_logconcave * ratio;
    r.vacuous = r.rhs > 1.0;
    return r;
  }

  const bool needs_log =
      id == TheoremId::subgaussian || id == TheoremId::subexponential;
  if (needs_log && !(ratio > 0.0 && ratio < 1.0)) {
    // Outside |alpha| > |beta| > 0 the log factor is undefined; report the
    // trivial bound.
    r.terms = {{"ratio", ratio}};
    r.constants = {{"C'", k.C_prime}};
    r.rhs = 1.0;
    r.vacuous = true;
    return r;
  }

  // LCD of the normalized vector; a capped search contributes 1/cap, which
  // upper-bounds 1/LCD.
  const LcdResult lr = lcd_normalized(alpha, gamma, k.lcd_cap, k.lcd_tol);
  const double lcd_term = 1.0 / (lr.capped ? lr.search_cap : lr.theta_star);
  const double gamma_term = std::exp(-k.c_prime * gamma * gamma);

  double ratio_term = 0.0;
  switch (id) {
    case TheoremId::conjecture: {
      ratio_term = ratio;
      const double lcd_used = k.conjecture_lcd_term ? lcd_term : 0.0;
      r.terms = {{"ratio", ratio_term}, {"lcd", lcd_used}};
      r.constants = {{"C", k.C},
                     {"gamma", gamma},
                     {"lcd_term_enabled", k.conjecture_lcd_term ? 1.0 : 0.0}};
      r.rhs = k.C * (ratio_term + lcd_used);
      r.vacuous = r.rhs > 1.0;
      return r;
    }
    case TheoremId::subgaussian:
      ratio_term = ratio * std::sqrt(std::log(1.0 / ratio));
      break;
    case TheoremId::subexponential:
      ratio_term = ratio * std::log(1.0 / ratio);
      break;
    case TheoremId::sodin:
      ratio_term = ratio;
      break;
    default:
      throw config_error("theorem_bound: unsupported theorem id " + theorem_name(id));
  }
  r.terms = {{"ratio", ratio_term}, {"lcd", lcd_term}, {"gamma", gamma_term}};
  r.constants = {{"C'", k.C_prime},
                 {"c'", k.c_prime},
                 {"gamma", gamma},
                 {"lcd_theta", lr.capped ? lr.search_cap : lr.theta_star},
                 {"lcd_capped", lr.capped ? 1.0 : 0.0}};
  r.rhs = k.C_prime * (ratio_term + lcd_term + gamma_term);
  r.vacuous = r.rhs > 1.0;
  return r;
}

double bernstein_tail(double t0, double nu, double b, const CoefficientVector& beta) {
  if (!(t0 >= 0.0)) throw config_error("bernstein_tail: t0 must be nonnegative");
  if (!(nu > 0.0 && b > 0.0)) throw config_error("bernstein_tail: nu, b must be positive");
  if (beta.is_zero()) throw config_error("bernstein_tail: beta must be nonzero");
  const double nb = nu * beta.norm();
  const double bb = b * beta.max_abs();
  const double crossover = nb * nb / bb;
  if (t0 <= crossover) return std::exp(-t0 * t0 / (2.0 * nb * nb));
  return std::exp(-t0 / (2.0 * bb));
}

OrthogonalParts orthogonal_reduce(const CoefficientVector& alpha,
                                  const CoefficientVector& beta) {
  if (alpha.is_zero()) throw config_error("orthogonal_reduce: alpha must be nonzero");
  if (alpha.dim() != beta.dim())
    throw config_error("orthogonal_reduce: dimension mismatch");
  const double a = dot(alpha, beta) / (alpha.norm() * alpha.norm());
  std::vector<double> g(beta.entries().begin(), beta.entries().end());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= a * alpha[i];
  return {a, CoefficientVector(std::move(g))};
}

BoundReport mixture_bound_logconcave(double B, const CoefficientVector& alpha,
                                     const CoefficientVector& beta, double C) {
  if (!(B > 0.0)) throw config_error("mixture_bound_logconcave: B must be positive");
  if (alpha.is_zero()) throw config_error("mixture_bound_logconcave: alpha must be nonzero");
  BoundReport r;
  r.id = TheoremId::mix_logconcave;
  const double ratio = beta.norm() / alpha.norm();
  r.terms = {{"ratio", ratio}};
  r.constants = {{"C", C}, {"B", B}};
  r.rhs = C * B * ratio;
  r.vacuous = r.rhs > 1.0;
  return r;
}

MixUniformBound mixture_bound_uniform(const DistributionSpec& spec,
                                      const CoefficientVector& alpha,
                                      const CoefficientVector& beta, double C) {
  if (!spec.has_density() || !spec.symmetric())
    throw capability_error("mixture_bound_uniform: spec must have a symmetric density");
  MixUniformBound out;
  out.report.id = TheoremId::mix_uniform;

  const double radius = decay_radius([&](double x) { return spec.density(x); }, 1.0, 1e-14);
  out.second_moment = integrate(
      [&](double t) { return t * t * spec.density(t); }, -radius, radius, {1e-10, 48, 64});

  // E[xi^-2] = int_0^inf (1/(2 t^3)) [ P{|X|<=t} - 2 t f(t) ] dt. The tail is
  // harmless (integrand ~ 1/(2t^3)); convergence at 0 decides applicability.
  // The interval mass is quadratured directly: cdf differences cancel
  // catastrophically against 2 t f(t) for small t.
  auto integrand = [&](double t) {
    const double p = integrate([&](double x) { return spec.density(x); }, -t, t,
                               {1e-14, 40, 8});
    return (p - 2.0 * t * spec.density(t)) / (2.0 * t * t * t);
  };
  const double hi = integrate(integrand, 1e-2, radius, {1e-9, 48, 64});
  // Probe the lower end decade by decade: for a convergent integral the
  // increments shrink geometrically; log-divergence keeps them level.
  // Fixed log-grid Simpson per decade: the integrand is noisy at tiny t
  // (cancellation), so adaptive refinement must not chase it.
  auto decade_integral = [&](double lower, double upper) {
    const int nodes = 128;  // even panel count
    const double h = std::log(upper / lower) / nodes;
    double s = 0.0;
    for (int i = 0; i <= nodes; ++i) {
      const double t = lower * std::exp(i * h);
      const double w = (i == 0 || i == nodes) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * integrand(t) * t;  // dt = t dv
    }
    return s * h / 3.0;
  };
  double total = hi;
  double prev_inc = -1.0;
  double ratio_estimate = 0.0;
  bool divergent = false;
  double upper = 1e-2;
  for (int d = 0; d < 4; ++d) {
    const double lower = upper / 10.0;
    const double inc = decade_integral(lower, upper);
    total += inc;
    if (prev_inc >= 0.0 && inc > 1e-9) {
      ratio_estimate = inc / prev_inc;
      if (ratio_estimate > 0.65) {
        divergent = true;
        break;
      }
    }
    prev_inc = inc;
    upper = lower;
  }
  // Geometric extrapolation of the unprobed decades.
  if (!divergent && prev_inc > 0.0 && ratio_estimate > 0.0 && ratio_estimate < 0.65)
    total += prev_inc * ratio_estimate / (1.0 - ratio_estimate);

  if (divergent) {
    out.applicable = false;
    out.report.applicable = false;
    out.report.rhs = std::numeric_limits<double>::infinity();
    out.report.constants = {{"C", C}};
    return out;
  }
  out.xi_inverse_sq = total;
  out.applicable = true;
  const double B = std::max(out.second_moment, out.xi_inverse_sq);
  const double ratio = beta.norm() / alpha.norm();
  out.report.terms = {{"ratio", ratio}};
  out.report.constants = {{"C", C}, {"B", B}, {"second_moment", out.second_moment},
                          {"xi_inverse_sq", out.xi_inverse_sq}};
  out.report.rhs = 12.0 * C * B * ratio;
  out.report.vacuous = out.report.rhs > 1.0;
  return out;
}

}  // namespace relac
