#ifndef RELAC_STATS_HPP
#define RELAC_STATS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <functional>

namespace relac {

double normal_cdf(double x);

// Inverse of normal_cdf, accurate to ~1e-15 (rational approximation plus one
// Newton polish).
double normal_quantile(double p);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval for k successes out of n at the given two-sided level.
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double ci_level);

// One-sample Kolmogorov-Smirnov statistic of samples against a cdf.
double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov statistic (both inputs sorted ascending).
double ks_statistic_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace relac

#endif
