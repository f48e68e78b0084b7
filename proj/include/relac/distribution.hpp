#ifndef RELAC_DISTRIBUTION_HPP
#define RELAC_DISTRIBUTION_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "relac/rng.hpp"

namespace relac {

enum class Family {
  gaussian,
  rademacher,
  finite_discrete,
  laplace,
  exponential_power,
  uniform,
  scale_mixture,
  symm_diff,  // law of X - X' for X, X' i.i.d. from a continuous base
};

struct Atom {
  double value;
  double prob;
};

// A tagged description of a one-dimensional law: family, parameters, and
// capability flags derived from the family. Immutable value type.
class DistributionSpec {
 public:
  static DistributionSpec gaussian(double sigma);
  static DistributionSpec rademacher();
  static DistributionSpec finite_discrete(std::vector<Atom> atoms);
  static DistributionSpec laplace(double b);
  static DistributionSpec exponential_power(double p, double scale);
  static DistributionSpec uniform(double lo, double hi);
  static DistributionSpec scale_mixture(DistributionSpec base, DistributionSpec scale_law);

  Family family() const { return family_; }
  double sigma() const { return a_; }  // gaussian
  double b() const { return a_; }      // laplace
  double power() const { return a_; }  // exponential_power
  double scale() const { return b_; }  // exponential_power
  double lo() const { return a_; }     // uniform
  double hi() const { return b_; }     // uniform
  const std::vector<Atom>& atoms() const { return atoms_; }
  const DistributionSpec& base() const;
  const DistributionSpec& scale_law() const;

  bool sampleable() const;
  bool has_density() const;
  bool has_cdf() const;
  bool has_cf() const;
  bool has_mgf() const;                 // finite on some neighbourhood of 0
  bool mgf_finite_at(double t) const;
  bool finite_support() const;
  bool symmetric() const;

  // Finite-support law as an explicit atom list (rademacher included).
  std::vector<Atom> support_atoms() const;

  double density(double x) const;
  double cdf(double x) const;
  std::complex<double> cf(double lambda) const;
  double mgf(double t) const;

  double mean() const;
  double variance() const;

  double draw(RngStream& rng) const;
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

  // Scales the law: the distribution of c*X. Used by the pipeline rescaling.
  DistributionSpec scaled(double c) const;

  std::string name() const;

  // Key-value tree serialization (see README for the format).
  std::string to_config() const;
  static DistributionSpec from_config_text(const std::string& text);
  static DistributionSpec from_config_file(const std::string& path);
  // Inline shorthand like "gaussian(1)" or a config file path.
  static DistributionSpec parse(const std::string& inline_or_path);

  friend DistributionSpec symmetrized_difference(const DistributionSpec& spec);

 private:
  DistributionSpec() = default;

  Family family_ = Family::gaussian;
  double a_ = 0.0, b_ = 0.0;
  std::vector<Atom> atoms_;
  std::shared_ptr<const DistributionSpec> base_, scale_;
  double norm_const_ = 0.0;  // exponential_power: cached 1/integral
};

// Pointwise evaluation by functional name: density | cdf | cf | mgf.
std::complex<double> evaluate(const DistributionSpec& spec, const std::string& what,
                              double point);

// Law of X - X' for X, X' i.i.d. spec. Exact convolution for finite-support
// laws; gaussian stays gaussian; other continuous families are wrapped.
DistributionSpec symmetrized_difference(const DistributionSpec& spec);

// Exponentially reweighted law dF_t(x) = e^{tx} dF(x) / M(t).
class TiltedDistribution {
 public:
  TiltedDistribution(DistributionSpec base, double t);

  const DistributionSpec& base() const { return base_; }
  double t() const { return t_; }
  double normalizer() const { return m_; }  // M(t)

  bool discrete() const { return !atoms_.empty(); }
  const std::vector<Atom>& atoms() const { return atoms_; }

  double density(double x) const;
  std::complex<double> cf(double lambda) const;
  double mgf(double u) const;  // E_t[e^{uX}] = M(t+u)/M(t)
  TiltedDistribution tilt_further(double u) const;
  double draw(RngStream& rng) const;

  // Truncation radius beyond which the tilted density is negligible.
  double support_radius(double cutoff = 1e-16) const;

 private:
  DistributionSpec base_;
  double t_ = 0.0;
  double m_ = 1.0;
  std::vector<Atom> atoms_;
};

TiltedDistribution tilt(const DistributionSpec& spec, double t);

// Sub-exponential envelope: E[e^{lambda X}] <= e^{lambda^2 nu^2 / 2} for
// |lambda| <= 1/b.
struct SubExpParams {
  double nu = 0.0;
  double b = 0.0;
};

// Fits nu on a lambda-grid for a family-default b (or the supplied one).
SubExpParams fit_subexp_params(const DistributionSpec& spec);
SubExpParams fit_subexp_params(const DistributionSpec& spec, double b);

// Level-set representation of a symmetric unimodal density f: the length
// g(y) of {x : f(x) >= y} tabulated on (0, f(0)], plus the induced scale law
// xi = g(H) with H distributed with density g. xi * Uniform[-1/2,1/2]
// reproduces f.
struct ScaleLaw {
  std::vector<double> y;    // increasing level heights
  std::vector<double> g;    // level-set lengths, nonincreasing in y
  std::vector<double> cum;  // integral of g from y[0] to y[i]
  double f0 = 0.0;
  double mass = 0.0;  // integral of g over (0, f0]; should be ~1

  double g_at(double height) const;
  double sample_height(RngStream& rng) const;  // H ~ density g
  double sample_xi(RngStream& rng) const { return g_at(sample_height(rng)); }
  double sample_point(RngStream& rng) const;  // xi * Y, Y ~ Uniform[-1/2,1/2]
  double density_at(double x) const;          // reconstructs f(x)
  double xi_square_mean() const;               // E[xi^2]
  double xi_inverse_square_mean() const;       // E[xi^-2] (grid value; may be huge)
};

ScaleLaw mixture_decompose(const std::function<double(double)>& f, double x_max,
                           std::size_t levels = 4096);

}  // namespace relac

#endif
