#ifndef RELAC_BOUNDS_HPP
#define RELAC_BOUNDS_HPP

#include <string>
#include <utility>
#include <vector>

#include "relac/coefficients.hpp"
#include "relac/distribution.hpp"
#include "relac/lcd.hpp"

namespace relac {

enum class TheoremId {
  conjecture,
  gaussian,
  subgaussian,
  subexponential,
  logconcave,
  sodin,
  rv_smallball,
  bernstein_tail,
  cauchy_interval,
  mix_logconcave,
  mix_uniform,
};

std::string theorem_name(TheoremId id);
TheoremId theorem_from_name(const std::string& name);

// Right-hand side of one inequality, with the per-term breakdown and the
// constants used. rhs always equals the recombination of `terms`.
struct BoundReport {
  TheoremId id = TheoremId::conjecture;
  double rhs = 0.0;
  std::vector<std::pair<std::string, double>> terms;
  std::vector<std::pair<std::string, double>> constants;
  bool vacuous = false;       // rhs > 1
  bool applicable = true;     // false when a required moment diverges

  double term(const std::string& name) const;
  double constant(const std::string& name) const;
};

// All named constants are parameters with the defaults below; a calibration
// pass (stress/verify) reports the smallest values that make every catalog
// scenario pass, rather than asserting any particular value.
struct TheoremConstants {
  double C = 1.0;             // conjecture leading constant
  double C_prime = 1.0;       // subgaussian / subexponential / sodin
  double c_prime = 1.0;       // gamma exponent
  double C_p = 1.0;           // small-ball constant
  double c_p = 0.01;          // small-ball gamma exponent
  double C_logconcave = 2.0;  // the gaussian instance of the log-concave bound
  bool conjecture_lcd_term = true;
  double lcd_cap = 0.0;       // 0 -> default cap
  double lcd_tol = 1e-9;
};

// rhs = 2 |beta| / |alpha|.
BoundReport gaussian_bound(const CoefficientVector& alpha, const CoefficientVector& beta);

// Upper bound for the Cauchy mass of [a-l, a+l]: min of 2l/pi (unimodal peak),
// and the off-origin density bounds 2l/(pi (a-l)^2) when a-l > 0,
// 2l/(pi (a+l)^2) when a+l < 0.
double cauchy_interval_bound(double a, double ell);

// Exact Cauchy mass of [a-l, a+l]; the oracle the bound must dominate.
double cauchy_interval_mass(double a, double ell);

// Small-ball bound C_p (eps + 1/lcd + e^{-c_p gamma^2}); lcd_value may be
// +infinity, in which case the middle term vanishes.
BoundReport rv_smallball_bound(double epsilon, double lcd_value, double gamma, double C_p,
                               double c_p);

// Right-hand sides of the main inequalities; gamma <= 0 selects sqrt(n).
// The LCD is computed on alpha/|alpha|; capped searches contribute
// 1/search_cap, the reported upper bound on 1/LCD.
BoundReport theorem_bound(TheoremId id, const CoefficientVector& alpha,
                          const CoefficientVector& beta, double gamma,
                          const TheoremConstants& constants);

// Sub-exponential tail bound at t0 for <beta, X> with per-coordinate
// parameters (nu, b): exp(-t0^2 / (2 nu^2 |beta|^2)) below the crossover
// nu^2 |beta|^2 / (b beta_max), exp(-t0 / (2 b beta_max)) above.
double bernstein_tail(double t0, double nu, double b, const CoefficientVector& beta);

struct OrthogonalParts {
  double a = 0.0;                  // <alpha,beta>/|alpha|^2
  CoefficientVector gamma_vec;     // beta - a*alpha, orthogonal to alpha
};
OrthogonalParts orthogonal_reduce(const CoefficientVector& alpha,
                                  const CoefficientVector& beta);

// Scale-mixture corollary: rhs = C * B * |beta|/|alpha| where both moment
// bounds E[xi^2] <= B and E[xi^-2] <= B hold.
BoundReport mixture_bound_logconcave(double B, const CoefficientVector& alpha,
                                     const CoefficientVector& beta, double C);

// Unimodal-density corollary: rhs = 12 C B |beta|/|alpha| with
// B = max( int t^2 f(t) dt , E[xi^-2] ), the latter from the corrected
// identity E[xi^-2] = int_0^inf (1/(2 t^3)) [P{|X|<=t} - 2 t f(t)] dt.
// Reports inapplicable when that integral diverges at 0.
struct MixUniformBound {
  BoundReport report;
  double second_moment = 0.0;   // int t^2 f dt
  double xi_inverse_sq = 0.0;   // the corrected identity integral (if finite)
  bool applicable = false;
};
MixUniformBound mixture_bound_uniform(const DistributionSpec& density_spec,
                                      const CoefficientVector& alpha,
                                      const CoefficientVector& beta, double C);

}  // namespace relac

#endif
