#include "relac/stress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relac/errors.hpp"
#include "relac/rng.hpp"

namespace relac {

namespace {

ProbEstimate estimate_lhs(const CoefficientVector& alpha, const CoefficientVector& beta,
                          const DistributionSpec& spec, const EstimatorChoice& est,
                          std::uint64_t seed) {
  if (est.prefer_exact && spec.finite_support()) {
    const double s = static_cast<double>(spec.support_atoms().size());
    if (std::pow(s, static_cast<double>(alpha.dim())) <=
        static_cast<double>(est.enumeration_limit))
      return exact_probability(alpha, beta, spec, est.enumeration_limit);
  }
  return mc_probability(alpha, beta, spec, est.mc_samples, seed, est.ci_level);
}

}  // namespace

RatioResult ratio(const CoefficientVector& alpha, const CoefficientVector& beta,
                  const DistributionSpec& spec, TheoremId id,
                  const TheoremConstants& constants, const EstimatorChoice& est,
                  std::uint64_t seed) {
  RatioResult out;
  out.estimate = estimate_lhs(alpha, beta, spec, est, seed);
  out.bound = theorem_bound(id, alpha, beta, 0.0, constants);
  if (out.bound.rhs <= 0.0) {
    if (out.estimate.value > 0.0) {
      out.infinite = true;
      out.ratio = std::numeric_limits<double>::infinity();
    } else {
      out.ratio = 0.0;
    }
    return out;
  }
  out.ratio = out.estimate.value / out.bound.rhs;
  return out;
}

SearchResult search(const DistributionSpec& spec, std::size_t n, TheoremId id,
                    int restarts, int steps, std::uint64_t seed,
                    const TheoremConstants& constants, const EstimatorChoice& est) {
  if (n < 2) throw config_error("search: n must be >= 2");
  if (restarts < 1 || steps < 1) throw config_error("search: restarts and steps >= 1");

  static const double kFactors[] = {0.5, 0.9, 1.1, 2.0};
  SearchResult best;
  bool have_best = false;

  for (int r = 0; r < restarts; ++r) {
    RngStream rng(seed, 0x5eac0000ULL + static_cast<std::uint64_t>(r));
    CoefficientVector alpha = random_unit_vector(n, rng);
    CoefficientVector beta = random_unit_vector(n, rng).scaled(0.1);
    std::uint64_t est_seed = splitmix64(seed) + static_cast<std::uint64_t>(r) * 1000003ULL;

    RatioResult cur = ratio(alpha, beta, spec, id, constants, est, est_seed);
    SearchResult local;
    local.best_alpha = alpha;
    local.best_beta = beta;
    local.ratio = cur.ratio;
    local.estimate = cur.estimate;
    local.bound = cur.bound;
    local.trace.emplace_back(0, cur.ratio);

    for (int it = 1; it <= steps; ++it) {
      const bool move_alpha = rng.uniform01() < 0.5;
      const std::size_t coord =
          static_cast<std::size_t>(rng.uniform01() * static_cast<double>(n)) % n;
      const int move = static_cast<int>(rng.uniform01() * 5.0) % 5;

      std::vector<double> ae(alpha.entries().begin(), alpha.entries().end());
      std::vector<double> be(beta.entries().begin(), beta.entries().end());
      auto& target = move_alpha ? ae : be;
      if (move < 4)
        target[coord] *= kFactors[move];
      else
        target[coord] = -target[coord];

      CoefficientVector na(ae), nb(be);
      if (na.is_zero()) continue;
      // Joint scaling leaves the ratio invariant; keep alpha on the sphere.
      nb = nb.scaled(1.0 / na.norm());
      na = na.normalized();
      if (nb.norm() / na.norm() < 1e-4) continue;  // atom regime guard

      const std::uint64_t move_seed = est_seed + static_cast<std::uint64_t>(it);
      const RatioResult cand = ratio(na, nb, spec, id, constants, est, move_seed);

      bool accept;
      if (cand.infinite) {
        accept = !cur.infinite;
      } else if (cur.infinite) {
        accept = false;
      } else if (cand.estimate.method == EstimateMethod::exact &&
                 cur.estimate.method == EstimateMethod::exact) {
        accept = cand.ratio > cur.ratio;
      } else {
        // CI-aware: only accept when the candidate is distinguishably better.
        const double cand_lo = cand.estimate.ci_lo / cand.bound.rhs;
        const double cur_hi = cur.estimate.ci_hi / cur.bound.rhs;
        accept = cand.bound.rhs > 0.0 && cur.bound.rhs > 0.0 && cand_lo > cur_hi;
      }
      if (accept) {
        alpha = na;
        beta = nb;
        cur = cand;
        local.best_alpha = alpha;
        local.best_beta = beta;
        local.ratio = cur.ratio;
        local.estimate = cur.estimate;
        local.bound = cur.bound;
      }
      local.trace.emplace_back(it, cur.ratio);
    }

    if (!have_best || local.ratio > best.ratio) {
      best = local;
      have_best = true;
    }
    // Ties keep the earlier restart (lexicographic on restart index).
  }
  return best;
}

std::vector<SozeRow> soze_family(const std::vector<std::size_t>& ns,
                                 const DistributionSpec& spec,
                                 const EstimatorChoice& est, std::uint64_t seed) {
  std::vector<SozeRow> rows;
  for (std::size_t n : ns) {
    if (n < 1) throw config_error("soze_family: n must be >= 1");
    SozeRow row;
    row.n = n;
    const CoefficientVector alpha = arithmetic_vector(n);
    const CoefficientVector beta = ones_vector(n);
    row.estimate = estimate_lhs(alpha, beta, spec, est, seed + n);
    row.n_times_p = static_cast<double>(n) * row.estimate.value;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace relac
