#include "relac/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <vector>

#include "relac/errors.hpp"
#include "relac/stats.hpp"

namespace relac {

namespace {

// Comparisons are non-strict with a relative tie band so that structurally
// equal magnitudes (common for discrete laws) classify consistently.
inline bool event_le(double u, double v, double c) {
  const double lhs = std::abs(u), rhs = c * std::abs(v);
  return lhs <= rhs + 1e-12 * (lhs + rhs);
}

inline bool event_lt(double u, double v, double c) {
  const double lhs = std::abs(u), rhs = c * std::abs(v);
  return lhs < rhs - 1e-12 * (lhs + rhs);
}

ProbEstimate enumerate(const CoefficientVector& alpha, const CoefficientVector& beta,
                       double c, const DistributionSpec& spec, std::uint64_t limit,
                       bool strict) {
  if (alpha.dim() != beta.dim())
    throw config_error("exact_probability: dimension mismatch");
  if (!spec.finite_support())
    throw capability_error("exact_probability: law does not have finite support");
  const auto atoms = spec.support_atoms();
  const std::size_t s = atoms.size();
  const std::size_t n = alpha.dim();
  double states = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    states *= static_cast<double>(s);
    if (states > static_cast<double>(limit))
      throw capability_error(
          "exact_probability: support^n exceeds the enumeration limit; use Monte Carlo");
  }

  std::vector<double> logp(s);
  for (std::size_t j = 0; j < s; ++j) logp[j] = std::log(atoms[j].prob);

  // Odometer over support^n with incrementally maintained dot products and
  // log-weight; extended-precision accumulators for the final sums.
  std::vector<std::size_t> digit(n, 0);
  double dot_a = 0.0, dot_b = 0.0, logw = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dot_a += alpha[i] * atoms[0].value;
    dot_b += beta[i] * atoms[0].value;
    logw += logp[0];
  }
  long double hit = 0.0L, total = 0.0L;
  std::uint64_t steps_since_resync = 0;
  for (;;) {
    const double w = std::exp(logw);
    total += w;
    const bool in_event = strict ? event_lt(dot_a, dot_b, c) : event_le(dot_a, dot_b, c);
    if (in_event) hit += w;

    // Advance the odometer.
    std::size_t i = 0;
    for (; i < n; ++i) {
      const std::size_t d = digit[i];
      if (d + 1 < s) {
        digit[i] = d + 1;
        dot_a += alpha[i] * (atoms[d + 1].value - atoms[d].value);
        dot_b += beta[i] * (atoms[d + 1].value - atoms[d].value);
        logw += logp[d + 1] - logp[d];
        break;
      }
      digit[i] = 0;
      dot_a += alpha[i] * (atoms[0].value - atoms[d].value);
      dot_b += beta[i] * (atoms[0].value - atoms[d].value);
      logw += logp[0] - logp[d];
    }
    if (i == n) break;
    // Periodic resync kills drift from the incremental updates.
    if (++steps_since_resync == (1u << 16)) {
      steps_since_resync = 0;
      dot_a = dot_b = logw = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        dot_a += alpha[k] * atoms[digit[k]].value;
        dot_b += beta[k] * atoms[digit[k]].value;
        logw += logp[digit[k]];
      }
    }
  }

  ProbEstimate est;
  est.method = EstimateMethod::exact;
  est.value = static_cast<double>(hit / total);
  est.ci_lo = est.ci_hi = est.value;
  est.ci_level = 1.0;
  est.n_samples = static_cast<std::uint64_t>(states);
  return est;
}

constexpr std::uint64_t kChunk = 1u << 16;

std::uint64_t mc_chunk_hits(const CoefficientVector& alpha, const CoefficientVector& beta,
                            double c, const DistributionSpec& spec, std::uint64_t seed,
                            std::uint64_t chunk_index, std::uint64_t count) {
  RngStream rng(seed, chunk_index);
  const std::size_t n = alpha.dim();
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < count; ++k) {
    double dot_a = 0.0, dot_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = spec.draw(rng);
      dot_a += alpha[i] * x;
      dot_b += beta[i] * x;
    }
    if (event_le(dot_a, dot_b, c)) ++hits;
  }
  return hits;
}

ProbEstimate mc_impl(const CoefficientVector& alpha, const CoefficientVector& beta,
                     double c, const DistributionSpec& spec, std::uint64_t n_samples,
                     std::uint64_t seed, double ci_level, int threads) {
  if (alpha.dim() != beta.dim()) throw config_error("mc_probability: dimension mismatch");
  if (n_samples < 100) throw config_error("mc_probability: need at least 100 samples");
  if (!spec.sampleable()) throw capability_error("mc_probability: spec is not sampleable");

  const std::uint64_t n_chunks = (n_samples + kChunk - 1) / kChunk;
  std::uint64_t hits = 0;
  if (threads <= 1) {
    for (std::uint64_t ci = 0; ci < n_chunks; ++ci) {
      const std::uint64_t count = std::min(kChunk, n_samples - ci * kChunk);
      hits += mc_chunk_hits(alpha, beta, c, spec, seed, ci, count);
    }
  } else {
    std::vector<std::future<std::uint64_t>> futs;
    futs.reserve(n_chunks);
    // One task per chunk; the reduction is an order-independent sum, so the
    // result does not depend on the parallelism degree.
    for (std::uint64_t ci = 0; ci < n_chunks; ++ci) {
      const std::uint64_t count = std::min(kChunk, n_samples - ci * kChunk);
      futs.push_back(std::async(std::launch::async | std::launch::deferred,
                                [&, ci, count] {
                                  return mc_chunk_hits(alpha, beta, c, spec, seed, ci,
                                                       count);
                                }));
    }
    for (auto& f : futs) hits += f.get();
  }

  ProbEstimate est;
  est.method = EstimateMethod::monte_carlo;
  est.value = static_cast<double>(hits) / static_cast<double>(n_samples);
  est.ci_level = ci_level;
  const Interval iv = wilson_interval(hits, n_samples, ci_level);
  est.ci_lo = iv.lo;
  est.ci_hi = iv.hi;
  est.n_samples = n_samples;
  est.seed = seed;
  est.rng = RngStream::name();
  return est;
}

}  // namespace

double ProbEstimate::std_error() const {
  if (method == EstimateMethod::exact || n_samples == 0) return 0.0;
  const double p = value;
  return std::sqrt(std::max(p * (1.0 - p), 1.0 / static_cast<double>(n_samples)) /
                   static_cast<double>(n_samples));
}

ProbEstimate exact_probability(const CoefficientVector& alpha,
                               const CoefficientVector& beta, const DistributionSpec& spec,
                               std::uint64_t limit) {
  return enumerate(alpha, beta, 1.0, spec, limit, false);
}

ProbEstimate exact_probability_strict(const CoefficientVector& alpha,
                                      const CoefficientVector& beta,
                                      const DistributionSpec& spec, std::uint64_t limit) {
  return enumerate(alpha, beta, 1.0, spec, limit, true);
}

ProbEstimate exact_probability_scaled(const CoefficientVector& alpha,
                                      const CoefficientVector& beta, double c,
                                      const DistributionSpec& spec, std::uint64_t limit) {
  if (!(c >= 0.0)) throw config_error("exact_probability: scale must be nonnegative");
  return enumerate(alpha, beta, c, spec, limit, false);
}

ProbEstimate mc_probability(const CoefficientVector& alpha, const CoefficientVector& beta,
                            const DistributionSpec& spec, std::uint64_t n_samples,
                            std::uint64_t seed, double ci_level, int threads) {
  return mc_impl(alpha, beta, 1.0, spec, n_samples, seed, ci_level, threads);
}

ProbEstimate mc_probability_scaled(const CoefficientVector& alpha,
                                   const CoefficientVector& beta, double c,
                                   const DistributionSpec& spec, std::uint64_t n_samples,
                                   std::uint64_t seed, double ci_level, int threads) {
  if (!(c >= 0.0)) throw config_error("mc_probability: scale must be nonnegative");
  return mc_impl(alpha, beta, c, spec, n_samples, seed, ci_level, threads);
}

double concentration_fn(std::span<const double> s, double t) {
  if (s.empty()) throw config_error("concentration_fn: empty sample");
  if (!(t >= 0.0)) throw config_error("concentration_fn: t must be nonnegative");
  const std::size_t n = s.size();
  std::size_t best = 0, j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < i) j = i;
    while (j < n && s[j] <= s[i] + t) ++j;
    best = std::max(best, j - i);
  }
  return static_cast<double>(best) / static_cast<double>(n);
}

double tail_prob(std::span<const double> samples, double u) {
  if (samples.empty()) throw config_error("tail_prob: empty sample");
  std::size_t k = 0;
  for (double v : samples)
    if (std::abs(v) > u) ++k;
  return static_cast<double>(k) / static_cast<double>(samples.size());
}

}  // namespace relac
