#include <algorithm>
#include <cmath>
#include <complex>

#include "relac/distribution.hpp"
#include "relac/errors.hpp"
#include "relac/quadrature.hpp"

namespace relac {

namespace {

// M(t) for continuous families without a closed form.
double numeric_mgf(const DistributionSpec& base, double t) {
  const double radius = decay_radius(
      [&](double x) {
        return base.has_density() ? std::exp(t * x) * base.density(x) : 0.0;
      },
      1.0, 1e-18);
  return integrate([&](double x) { return std::exp(t * x) * base.density(x); }, -radius,
                   radius, {1e-10, 48, 64});
}

}  // namespace

TiltedDistribution::TiltedDistribution(DistributionSpec base, double t)
    : base_(std::move(base)), t_(t) {
  if (!base_.mgf_finite_at(t))
    throw capability_error("tilt: mgf diverges at t = " + std::to_string(t));
  if (base_.finite_support()) {
    atoms_ = base_.support_atoms();
    double m = 0.0;
    for (const auto& a : atoms_) m += a.prob * std::exp(t * a.value);
    m_ = m;
    for (auto& a : atoms_) a.prob = a.prob * std::exp(t * a.value) / m_;
  } else {
    switch (base_.family()) {
      case Family::gaussian:
      case Family::laplace:
      case Family::uniform:
        m_ = base_.mgf(t);
        break;
      default:
        // Adaptive quadrature, absolute tolerance 1e-10.
        m_ = base_.has_density() ? numeric_mgf(base_, t) : base_.mgf(t);
        break;
    }
  }
}

double TiltedDistribution::density(double x) const {
  if (discrete()) throw capability_error("tilted density: law is discrete");
  return std::exp(t_ * x) * base_.density(x) / m_;
}

std::complex<double> TiltedDistribution::cf(double lambda) const {
  using namespace std::complex_literals;
  if (discrete()) {
    std::complex<double> s = 0.0;
    for (const auto& a : atoms_) s += a.prob * std::exp(1i * (lambda * a.value));
    return s;
  }
  switch (base_.family()) {
    case Family::gaussian: {
      // Tilting a centered gaussian shifts the mean to t*sigma^2.
      const double s2 = base_.sigma() * base_.sigma();
      return std::exp(std::complex<double>(-0.5 * s2 * lambda * lambda, lambda * t_ * s2));
    }
    case Family::laplace: {
      const double b = base_.b();
      const std::complex<double> z(t_, lambda);
      return (1.0 / m_) / ((1.0 - b * z) * (1.0 + b * z));
    }
    case Family::uniform: {
      const std::complex<double> z(t_, lambda);
      const double lo = base_.lo(), hi = base_.hi();
      if (std::abs(z) < 1e-8) return 1.0;
      return (std::exp(z * hi) - std::exp(z * lo)) / (z * (hi - lo) * m_);
    }
    default: {
      const double radius = support_radius();
      const double re = integrate(
          [&](double x) { return density(x) * std::cos(lambda * x); }, -radius, radius,
          {1e-10, 48, 64});
      const double im = integrate(
          [&](double x) { return density(x) * std::sin(lambda * x); }, -radius, radius,
          {1e-10, 48, 64});
      return {re, im};
    }
  }
}

double TiltedDistribution::mgf(double u) const {
  if (discrete()) {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.prob * std::exp(u * a.value);
    return s;
  }
  return base_.mgf(t_ + u) / m_;
}

TiltedDistribution TiltedDistribution::tilt_further(double u) const {
  return TiltedDistribution(base_, t_ + u);
}

double TiltedDistribution::draw(RngStream& rng) const {
  if (discrete()) {
    double u = rng.uniform01();
    for (const auto& a : atoms_) {
      u -= a.prob;
      if (u < 0.0) return a.value;
    }
    return atoms_.back().value;
  }
  switch (base_.family()) {
    case Family::gaussian: {
      const double s = base_.sigma();
      return t_ * s * s + s * rng.normal();
    }
    case Family::laplace: {
      // e^{t x - |x|/b} splits into two exponential lobes.
      const double b = base_.b();
      const double rp = 1.0 / b - t_;  // decay rate on x > 0
      const double rm = 1.0 / b + t_;  // decay rate on x < 0
      const double wp = 1.0 / rp, wm = 1.0 / rm;
      if (rng.uniform01() < wp / (wp + wm)) return rng.exponential() / rp;
      return -rng.exponential() / rm;
    }
    case Family::uniform: {
      const double lo = base_.lo(), hi = base_.hi();
      if (std::abs(t_) < 1e-12) return rng.uniform(lo, hi);
      const double elo = std::exp(t_ * lo), ehi = std::exp(t_ * hi);
      const double u = rng.uniform01();
      return std::log(elo + u * (ehi - elo)) / t_;
    }
    default:
      throw capability_error("tilted sampling not implemented for " + base_.name());
  }
}

double TiltedDistribution::support_radius(double cutoff) const {
  if (discrete()) {
    double r = 1.0;
    for (const auto& a : atoms_) r = std::max(r, std::abs(a.value));
    return r;
  }
  return decay_radius([&](double x) { return density(x); }, 1.0, cutoff);
}

TiltedDistribution tilt(const DistributionSpec& spec, double t) {
  return TiltedDistribution(spec, t);
}

SubExpParams fit_subexp_params(const DistributionSpec& spec) {
  double b = 1.0;
  switch (spec.family()) {
    case Family::gaussian:
      b = spec.sigma();
      break;
    case Family::laplace:
      b = 2.0 * spec.b();
      break;
    case Family::exponential_power:
      b = spec.power() > 1.0 ? spec.scale() : 2.0 * spec.scale();
      break;
    case Family::uniform:
      b = std::max(std::abs(spec.lo()), std::abs(spec.hi()));
      break;
    case Family::rademacher:
      b = 1.0;
      break;
    case Family::finite_discrete: {
      b = 0.0;
      for (const auto& a : spec.atoms()) b = std::max(b, std::abs(a.value));
      if (b == 0.0) b = 1.0;
      break;
    }
    default:
      b = 1.0;
      break;
  }
  return fit_subexp_params(spec, b);
}

SubExpParams fit_subexp_params(const DistributionSpec& spec, double b) {
  if (!(b > 0.0)) throw config_error("fit_subexp_params: b must be positive");
  if (std::abs(spec.mean()) > 1e-9)
    throw config_error("fit_subexp_params: law must have zero mean");
  if (!spec.mgf_finite_at(1.0 / b) || !spec.mgf_finite_at(-1.0 / b))
    throw capability_error("fit_subexp_params: mgf not finite on [-1/b, 1/b]");
  double nu2 = spec.variance();  // lambda -> 0 limit
  const int grid = 128;
  for (int i = 1; i <= grid; ++i) {
    const double lam = (1.0 / b) * i / grid;
    nu2 = std::max(nu2, 2.0 * std::log(spec.mgf(lam)) / (lam * lam));
    nu2 = std::max(nu2, 2.0 * std::log(spec.mgf(-lam)) / (lam * lam));
  }
  // Small headroom so the envelope holds between grid nodes.
  return {std::sqrt(nu2) * (1.0 + 1e-9), b};
}

}  // namespace relac
