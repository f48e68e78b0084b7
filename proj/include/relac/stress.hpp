#ifndef RELAC_STRESS_HPP
#define RELAC_STRESS_HPP

#include <cstdint>
#include <vector>

#include "relac/bounds.hpp"
#include "relac/coefficients.hpp"
#include "relac/distribution.hpp"
#include "relac/estimators.hpp"

namespace relac {

struct EstimatorChoice {
  bool prefer_exact = true;
  std::uint64_t enumeration_limit = kDefaultEnumerationLimit;
  std::uint64_t mc_samples = 100000;
  double ci_level = 0.99;
};

struct RatioResult {
  double ratio = 0.0;  // estimate.value / bound.rhs
  bool infinite = false;
  ProbEstimate estimate;
  BoundReport bound;
};

// LHS estimate divided by the theorem's RHS; rhs = 0 with a nonzero estimate
// reports an infinite ratio (counterexample candidate).
RatioResult ratio(const CoefficientVector& alpha, const CoefficientVector& beta,
                  const DistributionSpec& spec, TheoremId id,
                  const TheoremConstants& constants, const EstimatorChoice& est,
                  std::uint64_t seed);

struct SearchResult {
  CoefficientVector best_alpha{std::vector<double>{1.0}};
  CoefficientVector best_beta{std::vector<double>{1.0}};
  double ratio = 0.0;
  ProbEstimate estimate;
  BoundReport bound;
  std::vector<std::pair<int, double>> trace;  // (iteration, best ratio so far)
};

// Random-restart hill climbing over coordinate perturbations (multiplicative
// factors 0.5/0.9/1.1/2 and sign flips). alpha is renormalized to unit norm
// after every move; |beta|/|alpha| is kept >= 1e-4. Acceptance under Monte
// Carlo is CI-aware: a move is taken only if its ratio's ci_lo clears the
// incumbent's ci_hi. Deterministic for a fixed seed; restarts merge by
// maximum ratio with lexicographic-seed tie-break.
SearchResult search(const DistributionSpec& spec, std::size_t n, TheoremId id,
                    int restarts, int steps, std::uint64_t seed,
                    const TheoremConstants& constants, const EstimatorChoice& est);

struct SozeRow {
  std::size_t n = 0;
  ProbEstimate estimate;
  double n_times_p = 0.0;
};

// The structured family alpha_i = i, beta_i = 1, exact when support^n is
// feasible, Monte Carlo otherwise.
std::vector<SozeRow> soze_family(const std::vector<std::size_t>& ns,
                                 const DistributionSpec& spec,
                                 const EstimatorChoice& est, std::uint64_t seed);

}  // namespace relac

#endif
