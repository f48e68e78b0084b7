#ifndef RELAC_SODIN_HPP
#define RELAC_SODIN_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "relac/bounds.hpp"
#include "relac/coefficients.hpp"
#include "relac/distribution.hpp"
#include "relac/estimators.hpp"
#include "relac/lcd.hpp"

namespace relac {

// One desk-scale replay of the symmetric sub-exponential argument: a fixed
// law (rescaled so its envelope is (nu, 1)), unit coefficient vectors, and
// the tuning knobs every step shares.
struct PipelineScenario {
  std::string id;
  DistributionSpec spec = DistributionSpec::gaussian(1.0);      // rescaled law
  DistributionSpec raw_spec = DistributionSpec::gaussian(1.0);  // as supplied
  double rescale_b = 1.0;     // X -> X / rescale_b
  SubExpParams params;        // (nu, 1) after rescaling
  CoefficientVector alpha{std::vector<double>{1.0}};
  CoefficientVector beta{std::vector<double>{1.0}};
  double epsilon = 0.1;
  double R = 1.0;
  double gamma = 0.0;
  double delta = 0.0;  // Q_{X1}(delta) <= p < 1
  double p = 1.0;
  double x_max = 6.1;  // e^{-x^2} < 1e-16 beyond this
  double quad_tol = 1e-10;
  int structure_grid = 2000001;
  std::uint64_t seed = 1;
  std::uint64_t mc_samples = 200000;
  LcdResult lcd;  // of alpha (unit norm) at gamma
};

PipelineScenario make_scenario(std::string id, const DistributionSpec& raw,
                               const CoefficientVector& alpha,
                               const CoefficientVector& beta, double epsilon, double R,
                               std::uint64_t seed, std::uint64_t mc_samples = 200000);

struct CheckResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  double slack() const { return rhs - lhs; }
};

// Tilting comparison for even phi valued in [0,1]:
//   E phi(X-X') <= M(t)^2 E_t phi(X_t-X_t').
// The normalizer enters squared: the two-sided Cauchy-Schwarz proof produces
// M(t)^2, and the Rademacher two-point law realizes equality, so the
// linear-in-M variant is false (see tests for the exact computation).
CheckResult tilting_check(const DistributionSpec& spec, double t,
                          const std::function<double(double)>& phi);

// P{|W_t| >= delta} >= P{|W| >= delta} / M(t)^2, exact for discrete laws.
CheckResult corollary_check(const DistributionSpec& spec, double t, double delta);

struct CfIntegralResult {
  double integral = 0.0;      // int prod_k |phi_k(t_k x)| e^{-x^2} dx
  double mgf_product = 0.0;   // prod_k M(beta_k)
  double mgf_bound = 0.0;     // e^{nu^2/2}, which must dominate mgf_product
  double chain_bound = 0.0;   // (e/sqrt(pi)) * mgf_product * e^{-R} * integral
};

// The tilted characteristic-function product integral with t_k = 2 alpha_k /
// (epsilon R); chain_bound dominates P{|U| < eps R, V > R}.
CfIntegralResult cf_product_integral(const PipelineScenario& sc);
// Same integral for the dyadic piece (eps_k, R_k).
CfIntegralResult cf_product_integral_at(const PipelineScenario& sc, double epsilon,
                                        double R);

struct IdentityCheck {
  double max_abs_err = 0.0;  // where |exact| >= 1e-8
  double max_rel_err = 0.0;  // everywhere
};

// Quadrature of int e^{2itx - x^2} dx against sqrt(pi) e^{-t^2} on a t-grid.
IdentityCheck gaussian_identity_check(std::span<const double> t_grid);

// min over a dense grid on [-4pi, 4pi] of (1 - cos t) - 8 dist^2(t/2pi, Z).
double cosine_dist_check(int grid_points = 400001);

struct IntervalStructure {
  std::vector<std::pair<double, double>> runs;      // admissible cell runs
  std::vector<std::pair<double, double>> clusters;  // runs merged per dichotomy
  double max_len = 0.0;
  double min_gap = 0.0;  // infinity-like when fewer than two clusters
  double predicted_len = 0.0;   // 20 pi eps R z / w
  double predicted_gap = 0.0;   // pi eps R L / w
  double cell = 0.0;
  double lcd_value = 0.0;
  bool lcd_capped = false;
  bool len_ok = false;
  bool gap_ok = false;
};

// The sublevel set I(z) = {x : dist(x w alpha / (pi eps R), Z^n) <= z} on a
// fine grid, its connected clusters, and the length/gap assertions.
IntervalStructure interval_structure(const PipelineScenario& sc, double z, double w);

struct MuBound {
  double mu = 0.0;     // gaussian-weight measure of I(z)
  double bound = 0.0;  // 70 z (eps R / w + 1/L)
  double trivial = 1.7724538509055160273;  // sqrt(pi)
  bool pass = false;
};

MuBound mu_measure_bound(const PipelineScenario& sc, double z, double w);

// Measured uniform tilt-comparison constants of the scenario.
struct TiltUniformity {
  double q = 0.0;    // min_k P{|W_k| >= 2 delta}
  double tau = 0.0;  // min_{k,s} ratio of conditional 1-cos moments
};

TiltUniformity measure_tilt_uniformity(const PipelineScenario& sc);

// Final exponential-cosine form: MC P{|U| < eps R, V > R} against
// (e/sqrt pi) prod M(beta_k) e^{-R} sup_w int exp{-(q tau / 2) sum_k
// (1 - cos(t_k x w))} e^{-x^2} dx over the measured w-grid.
struct CosineChainCheck {
  double mc_value = 0.0;
  double mc_hi = 0.0;
  double rhs = 0.0;
  double q = 0.0, tau = 0.0;
  double sup_w = 0.0;  // maximizing w
  bool pass = false;
};

CosineChainCheck exp_cosine_bound_check(const PipelineScenario& sc);

struct DyadicPiece {
  int k = 0;
  double R = 1.0;                // 2^k
  double mc_value = 0.0;
  double mc_hi = 0.0;
  double std_err = 0.0;
  double explicit_bound = 0.0;   // 2 chain bounds at (2 eps, 2^k)
  double shape = 0.0;            // e^{-R}(2 eps R + 1/L + e^{-c gamma^2})
};

struct DyadicReport {
  double whole = 0.0, whole_hi = 0.0, whole_se = 0.0;
  double head = 0.0, head_hi = 0.0;
  double head_shape = 0.0;       // eps + 1/L + e^{-c gamma^2}
  double C_p_calibrated = 0.0;   // head_hi / head_shape
  double C_calibrated = 0.0;     // max over pieces of mc_hi / shape
  std::vector<DyadicPiece> pieces;
  double sum_pieces = 0.0;
  double assembled = 0.0;        // C_p_cal * head_shape + sum explicit bounds
  double tail_residual_bound = 0.0;  // tail bound beyond the last piece
  bool whole_le_sum = false;     // whole <= head + sum pieces + MC slack
  bool pieces_bounded = false;   // every piece below its explicit bound + MC slack
  bool assembled_dominates = false;
};

DyadicReport dyadic_decomposition_check(const PipelineScenario& sc);

// Sub-exponential tail bound of the rescaled law at u (envelope (nu,1)).
double scenario_tail_bound(const PipelineScenario& sc, double u);

}  // namespace relac

#endif
