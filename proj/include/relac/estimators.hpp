#ifndef RELAC_ESTIMATORS_HPP
#define RELAC_ESTIMATORS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "relac/coefficients.hpp"
#include "relac/distribution.hpp"

namespace relac {

enum class EstimateMethod { exact, monte_carlo };

// A probability with provenance: point value, confidence interval, sample
// count, and the seed/RNG identity when Monte Carlo.
struct ProbEstimate {
  double value = 0.0;
  EstimateMethod method = EstimateMethod::exact;
  double ci_level = 1.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::uint64_t n_samples = 0;
  std::optional<std::uint64_t> seed;
  std::string rng;  // generator identity, empty for exact

  double std_error() const;  // half-width proxy from the Wilson interval
};

inline constexpr std::uint64_t kDefaultEnumerationLimit = 1u << 24;

// P{ |<alpha,X>| <= |<beta,X>| } by full enumeration of support^n with
// product weights. Requires s^n <= limit.
ProbEstimate exact_probability(const CoefficientVector& alpha,
                               const CoefficientVector& beta,
                               const DistributionSpec& spec,
                               std::uint64_t limit = kDefaultEnumerationLimit);

// Strict variant: P{ |<alpha,X>| < |<beta,X>| }. Exact enumeration.
ProbEstimate exact_probability_strict(const CoefficientVector& alpha,
                                      const CoefficientVector& beta,
                                      const DistributionSpec& spec,
                                      std::uint64_t limit = kDefaultEnumerationLimit);

// Monte Carlo with a Wilson score interval. N is split into fixed chunks,
// one RNG stream per chunk, so parallel and serial runs agree exactly.
ProbEstimate mc_probability(const CoefficientVector& alpha, const CoefficientVector& beta,
                            const DistributionSpec& spec, std::uint64_t n_samples,
                            std::uint64_t seed, double ci_level = 0.99, int threads = 1);

// General scaled event P{ |<alpha,X>| <= c * |<beta,X>| }.
ProbEstimate exact_probability_scaled(const CoefficientVector& alpha,
                                      const CoefficientVector& beta, double c,
                                      const DistributionSpec& spec,
                                      std::uint64_t limit = kDefaultEnumerationLimit);
ProbEstimate mc_probability_scaled(const CoefficientVector& alpha,
                                   const CoefficientVector& beta, double c,
                                   const DistributionSpec& spec, std::uint64_t n_samples,
                                   std::uint64_t seed, double ci_level = 0.99,
                                   int threads = 1);

// Levy concentration function of a sample: the largest empirical mass of a
// closed window [a, a+t]; the supremum is attained with a at a sample point.
double concentration_fn(std::span<const double> sorted_samples, double t);

// Empirical P{ |sample| > u }.
double tail_prob(std::span<const double> samples, double u);

}  // namespace relac

#endif
