#include "relac/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "relac/errors.hpp"
#include "relac/quadrature.hpp"
#include "relac/stats.hpp"

namespace relac {

namespace {

constexpr double kAtomSumTol = 1e-12;

void validate_atoms(const std::vector<Atom>& atoms) {
  if (atoms.empty()) throw config_error("finite-discrete law needs at least one atom");
  double sum = 0.0;
  for (const auto& a : atoms) {
    if (!(a.prob > 0.0)) throw config_error("atom probabilities must be positive");
    if (!std::isfinite(a.value)) throw config_error("atom values must be finite");
    sum += a.prob;
  }
  if (std::abs(sum - 1.0) > 1e3 * kAtomSumTol)
    throw config_error("atom probabilities must sum to 1");
}

std::vector<Atom> sorted_merged(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.value < y.value; });
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    if (!out.empty() && a.value == out.back().value)
      out.back().prob += a.prob;
    else
      out.push_back(a);
  }
  return out;
}

double exppower_raw(double x, double p, double s) {
  return std::exp(-std::pow(std::abs(x) / s, p));
}

}  // namespace

DistributionSpec DistributionSpec::gaussian(double sigma) {
  if (!(sigma > 0.0)) throw config_error("gaussian: sigma must be positive");
  DistributionSpec d;
  d.family_ = Family::gaussian;
  d.a_ = sigma;
  return d;
}

DistributionSpec DistributionSpec::rademacher() {
  DistributionSpec d;
  d.family_ = Family::rademacher;
  return d;
}

DistributionSpec DistributionSpec::finite_discrete(std::vector<Atom> atoms) {
  validate_atoms(atoms);
  DistributionSpec d;
  d.family_ = Family::finite_discrete;
  d.atoms_ = sorted_merged(std::move(atoms));
  return d;
}

DistributionSpec DistributionSpec::laplace(double b) {
  if (!(b > 0.0)) throw config_error("laplace: b must be positive");
  DistributionSpec d;
  d.family_ = Family::laplace;
  d.a_ = b;
  return d;
}

DistributionSpec DistributionSpec::exponential_power(double p, double scale) {
  if (!(p >= 1.0)) throw config_error("exponential-power: p must be >= 1");
  if (!(scale > 0.0)) throw config_error("exponential-power: scale must be positive");
  DistributionSpec d;
  d.family_ = Family::exponential_power;
  d.a_ = p;
  d.b_ = scale;
  // Normalizing constant by quadrature; one code path for all p.
  const double radius = scale * std::pow(45.0, 1.0 / p) + scale;
  const double z = integrate([p, scale](double x) { return exppower_raw(x, p, scale); },
                             -radius, radius, {1e-12, 48, 64});
  d.norm_const_ = 1.0 / z;
  return d;
}

DistributionSpec DistributionSpec::uniform(double lo, double hi) {
  if (!(hi > lo)) throw config_error("uniform: hi must exceed lo");
  DistributionSpec d;
  d.family_ = Family::uniform;
  d.a_ = lo;
  d.b_ = hi;
  return d;
}

DistributionSpec DistributionSpec::scale_mixture(DistributionSpec base,
                                                 DistributionSpec scale_law) {
  // The scale law must be supported on positive reals.
  switch (scale_law.family_) {
    case Family::finite_discrete:
    case Family::rademacher: {
      for (const auto& a : scale_law.support_atoms())
        if (!(a.value > 0.0))
          throw config_error("scale-mixture: scale law must be supported on (0, inf)");
      break;
    }
    case Family::uniform:
      if (!(scale_law.lo() >= 0.0))
        throw config_error("scale-mixture: scale law must be supported on (0, inf)");
      break;
    default:
      throw config_error(
          "scale-mixture: scale law must be finite-discrete or uniform on positive reals");
  }
  DistributionSpec d;
  d.family_ = Family::scale_mixture;
  d.base_ = std::make_shared<DistributionSpec>(std::move(base));
  d.scale_ = std::make_shared<DistributionSpec>(std::move(scale_law));
  return d;
}

const DistributionSpec& DistributionSpec::base() const {
  if (!base_) throw config_error("spec has no base law");
  return *base_;
}

const DistributionSpec& DistributionSpec::scale_law() const {
  if (!scale_) throw config_error("spec has no scale law");
  return *scale_;
}

bool DistributionSpec::sampleable() const {
  switch (family_) {
    case Family::scale_mixture:
      return base().sampleable() && scale_law().sampleable();
    case Family::symm_diff:
      return base().sampleable();
    default:
      return true;
  }
}

bool DistributionSpec::has_density() const {
  switch (family_) {
    case Family::gaussian:
    case Family::laplace:
    case Family::exponential_power:
    case Family::uniform:
      return true;
    case Family::scale_mixture:
    case Family::symm_diff:
      return base().has_density();
    default:
      return false;
  }
}

bool DistributionSpec::has_cdf() const {
  switch (family_) {
    case Family::rademacher:
    case Family::finite_discrete:
      return true;
    default:
      return has_density();
  }
}

bool DistributionSpec::has_cf() const { return true; }

bool DistributionSpec::has_mgf() const {
  switch (family_) {
    case Family::scale_mixture:
      return base().has_mgf() && scale_law().finite_support();
    case Family::symm_diff:
      return base().has_mgf();
    default:
      return true;
  }
}

bool DistributionSpec::mgf_finite_at(double t) const {
  switch (family_) {
    case Family::gaussian:
    case Family::rademacher:
    case Family::finite_discrete:
    case Family::uniform:
      return true;
    case Family::laplace:
      return std::abs(t) < 1.0 / a_;
    case Family::exponential_power:
      return a_ > 1.0 || std::abs(t) < 1.0 / b_;
    case Family::scale_mixture: {
      if (!scale_law().finite_support()) return false;
      for (const auto& s : scale_law().support_atoms())
        if (!base().mgf_finite_at(t * s.value)) return false;
      return true;
    }
    case Family::symm_diff:
      return base().mgf_finite_at(t) && base().mgf_finite_at(-t);
  }
  return false;
}

bool DistributionSpec::finite_support() const {
  switch (family_) {
    case Family::rademacher:
    case Family::finite_discrete:
      return true;
    case Family::symm_diff:
      return base().finite_support();
    default:
      return false;
  }
}

bool DistributionSpec::symmetric() const {
  switch (family_) {
    case Family::gaussian:
    case Family::rademacher:
    case Family::laplace:
    case Family::exponential_power:
    case Family::symm_diff:
      return true;
    case Family::uniform:
      return std::abs(a_ + b_) <= 1e-12 * (std::abs(a_) + std::abs(b_));
    case Family::finite_discrete: {
      for (const auto& a : atoms_) {
        bool found = false;
        for (const auto& b : atoms_)
          if (std::abs(b.value + a.value) <= 1e-12 * (1.0 + std::abs(a.value)) &&
              std::abs(b.prob - a.prob) <= 1e-12) {
            found = true;
            break;
          }
        if (!found) return false;
      }
      return true;
    }
    case Family::scale_mixture:
      return base().symmetric();
  }
  return false;
}

std::vector<Atom> DistributionSpec::support_atoms() const {
  switch (family_) {
    case Family::rademacher:
      return {{-1.0, 0.5}, {1.0, 0.5}};
    case Family::finite_discrete:
      return atoms_;
    case Family::symm_diff: {
      if (!base().finite_support())
        throw capability_error("support_atoms: base law has infinite support");
      const auto b = base().support_atoms();
      std::vector<Atom> out;
      for (const auto& x : b)
        for (const auto& y : b) out.push_back({x.value - y.value, x.prob * y.prob});
      return sorted_merged(std::move(out));
    }
    default:
      throw capability_error("support_atoms: law does not have finite support");
  }
}

double DistributionSpec::density(double x) const {
  switch (family_) {
    case Family::gaussian: {
      const double z = x / a_;
      return std::exp(-0.5 * z * z) / (a_ * 2.5066282746310005024);
    }
    case Family::laplace:
      return std::exp(-std::abs(x) / a_) / (2.0 * a_);
    case Family::exponential_power:
      return norm_const_ * exppower_raw(x, a_, b_);
    case Family::uniform:
      return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0;
    case Family::scale_mixture: {
      if (!base().has_density())
        throw capability_error("density: base law has no density");
      double out = 0.0;
      if (scale_law().finite_support()) {
        for (const auto& s : scale_law().support_atoms())
          out += s.prob * base().density(x / s.value) / s.value;
      } else {
        const auto& sl = scale_law();
        out = integrate(
            [&](double s) {
              return s > 0 ? sl.density(s) * base().density(x / s) / s : 0.0;
            },
            sl.lo(), sl.hi(), {1e-10, 48, 32});
      }
      return out;
    }
    case Family::symm_diff: {
      if (!base().has_density())
        throw capability_error("density: base law has no density");
      const auto& f = base();
      const double r = decay_radius([&](double u) { return f.density(u); }, 1.0, 1e-14);
      return integrate([&](double u) { return f.density(u) * f.density(u - x); }, -r, r,
                       {1e-10, 48, 64});
    }
    default:
      throw capability_error("density: discrete law has no density");
  }
}

double DistributionSpec::cdf(double x) const {
  switch (family_) {
    case Family::gaussian:
      return normal_cdf(x / a_);
    case Family::laplace:
      return x < 0 ? 0.5 * std::exp(x / a_) : 1.0 - 0.5 * std::exp(-x / a_);
    case Family::uniform:
      return x <= a_ ? 0.0 : (x >= b_ ? 1.0 : (x - a_) / (b_ - a_));
    case Family::rademacher:
    case Family::finite_discrete: {
      double s = 0.0;
      for (const auto& a : support_atoms())
        if (a.value <= x) s += a.prob;
      return s;
    }
    case Family::exponential_power: {
      if (x <= 0.0) {
        const double radius = b_ * std::pow(45.0, 1.0 / a_) + b_;
        if (x <= -radius) return 0.0;
        return integrate([this](double u) { return density(u); }, -radius, x,
                         {1e-11, 48, 32});
      }
      return 1.0 - cdf(-x);
    }
    case Family::scale_mixture: {
      if (scale_law().finite_support()) {
        double out = 0.0;
        for (const auto& s : scale_law().support_atoms())
          out += s.prob * base().cdf(x / s.value);
        return out;
      }
      const auto& sl = scale_law();
      return integrate([&](double s) { return sl.density(s) * base().cdf(x / s); },
                       sl.lo(), sl.hi(), {1e-10, 48, 32});
    }
    case Family::symm_diff: {
      if (finite_support()) {
        double s = 0.0;
        for (const auto& a : support_atoms())
          if (a.value <= x) s += a.prob;
        return s;
      }
      if (!base().has_density())
        throw capability_error("cdf: base law has no density");
      const auto& f = base();
      const double r = decay_radius([&](double u) { return f.density(u); }, 1.0, 1e-14);
      // P{X - X' <= x} = E[F(X' + x)]
      return integrate([&](double u) { return f.density(u) * f.cdf(u + x); }, -r, r,
                       {1e-9, 48, 64});
    }
  }
  throw capability_error("cdf: unsupported family");
}

std::complex<double> DistributionSpec::cf(double lambda) const {
  using namespace std::complex_literals;
  switch (family_) {
    case Family::gaussian:
      return std::exp(-0.5 * a_ * a_ * lambda * lambda);
    case Family::rademacher:
      return std::cos(lambda);
    case Family::finite_discrete: {
      std::complex<double> s = 0.0;
      for (const auto& a : atoms_)
        s += a.prob * std::exp(1i * (lambda * a.value));
      return s;
    }
    case Family::laplace:
      return 1.0 / (1.0 + a_ * a_ * lambda * lambda);
    case Family::uniform: {
      if (std::abs(lambda) < 1e-8) {
        const double mid = 0.5 * (a_ + b_);
        return std::exp(1i * (lambda * mid)) *
               (1.0 - lambda * lambda * (b_ - a_) * (b_ - a_) / 24.0);
      }
      const std::complex<double> il = 1i * lambda;
      return (std::exp(il * b_) - std::exp(il * a_)) / (il * (b_ - a_));
    }
    case Family::exponential_power: {
      // Symmetric law: the cf is the real cosine transform.
      const double radius = b_ * std::pow(45.0, 1.0 / a_) + b_;
      const int panels = std::max(32, static_cast<int>(std::abs(lambda) * radius / 2.0));
      return integrate(
          [this, lambda](double x) { return density(x) * std::cos(lambda * x); },
          -radius, radius, {1e-11, 48, panels});
    }
    case Family::scale_mixture: {
      if (scale_law().finite_support()) {
        std::complex<double> s = 0.0;
        for (const auto& a : scale_law().support_atoms())
          s += a.prob * base().cf(lambda * a.value);
        return s;
      }
      const auto& sl = scale_law();
      const double re = integrate(
          [&](double s) { return sl.density(s) * base().cf(lambda * s).real(); },
          sl.lo(), sl.hi(), {1e-10, 48, 32});
      const double im = integrate(
          [&](double s) { return sl.density(s) * base().cf(lambda * s).imag(); },
          sl.lo(), sl.hi(), {1e-10, 48, 32});
      return {re, im};
    }
    case Family::symm_diff:
      return std::norm(base().cf(lambda));
  }
  throw capability_error("cf: unsupported family");
}

double DistributionSpec::mgf(double t) const {
  if (!mgf_finite_at(t)) throw capability_error("mgf diverges at t = " + std::to_string(t));
  switch (family_) {
    case Family::gaussian:
      return std::exp(0.5 * a_ * a_ * t * t);
    case Family::rademacher:
      return std::cosh(t);
    case Family::finite_discrete: {
      double s = 0.0;
      for (const auto& a : atoms_) s += a.prob * std::exp(t * a.value);
      return s;
    }
    case Family::laplace:
      return 1.0 / (1.0 - a_ * a_ * t * t);
    case Family::uniform: {
      if (std::abs(t) < 1e-9) return 1.0 + 0.5 * t * (a_ + b_);
      return (std::exp(t * b_) - std::exp(t * a_)) / (t * (b_ - a_));
    }
    case Family::exponential_power: {
      const double radius =
          decay_radius([this, t](double x) { return std::exp(t * x) *
                                                    exppower_raw(x, a_, b_); },
                       b_, 1e-18) ;
      return integrate(
          [this, t](double x) { return density(x) * std::exp(t * x); }, -radius, radius,
          {1e-11, 48, 64});
    }
    case Family::scale_mixture: {
      double s = 0.0;
      for (const auto& a : scale_law().support_atoms())
        s += a.prob * base().mgf(t * a.value);
      return s;
    }
    case Family::symm_diff:
      return base().mgf(t) * base().mgf(-t);
  }
  throw capability_error("mgf: unsupported family");
}

double DistributionSpec::mean() const {
  switch (family_) {
    case Family::gaussian:
    case Family::rademacher:
    case Family::laplace:
    case Family::exponential_power:
    case Family::symm_diff:
      return 0.0;
    case Family::uniform:
      return 0.5 * (a_ + b_);
    case Family::finite_discrete: {
      double s = 0.0;
      for (const auto& a : atoms_) s += a.prob * a.value;
      return s;
    }
    case Family::scale_mixture:
      return base().mean() * scale_law().mean();
  }
  return 0.0;
}

double DistributionSpec::variance() const {
  switch (family_) {
    case Family::gaussian:
      return a_ * a_;
    case Family::rademacher:
      return 1.0;
    case Family::laplace:
      return 2.0 * a_ * a_;
    case Family::uniform: {
      const double w = b_ - a_;
      return w * w / 12.0;
    }
    case Family::finite_discrete: {
      const double m = mean();
      double s = 0.0;
      for (const auto& a : atoms_) s += a.prob * (a.value - m) * (a.value - m);
      return s;
    }
    case Family::exponential_power: {
      const double radius = b_ * std::pow(45.0, 1.0 / a_) + b_;
      return integrate([this](double x) { return x * x * density(x); }, -radius, radius,
                       {1e-10, 48, 32});
    }
    case Family::scale_mixture: {
      // Var(SX) with S, X independent, E X = base mean.
      const double mb = base().mean();
      const double vb = base().variance();
      double es2 = 0.0, es = scale_law().mean();
      if (scale_law().finite_support()) {
        for (const auto& a : scale_law().support_atoms())
          es2 += a.prob * a.value * a.value;
      } else {
        es2 = scale_law().variance() + es * es;
      }
      return es2 * (vb + mb * mb) - es * es * mb * mb;
    }
    case Family::symm_diff:
      return 2.0 * base().variance();
  }
  return 0.0;
}

double DistributionSpec::draw(RngStream& rng) const {
  switch (family_) {
    case Family::gaussian:
      return a_ * rng.normal();
    case Family::rademacher:
      return rng.uniform01() < 0.5 ? -1.0 : 1.0;
    case Family::finite_discrete: {
      double u = rng.uniform01();
      for (const auto& a : atoms_) {
        u -= a.prob;
        if (u < 0.0) return a.value;
      }
      return atoms_.back().value;
    }
    case Family::laplace: {
      const double u = rng.uniform01() - 0.5;
      return -a_ * std::copysign(std::log1p(-2.0 * std::abs(u)), u);
    }
    case Family::exponential_power: {
      // |X| = scale * G^{1/p} with G ~ Gamma(1/p + 1)... via Gamma(1/p).
      const double g = rng.gamma(1.0 / a_);
      const double mag = b_ * std::pow(g, 1.0 / a_);
      return rng.uniform01() < 0.5 ? -mag : mag;
    }
    case Family::uniform:
      return rng.uniform(a_, b_);
    case Family::scale_mixture: {
      const double s = scale_law().draw(rng);
      return s * base().draw(rng);
    }
    case Family::symm_diff: {
      const double x = base().draw(rng);
      const double y = base().draw(rng);
      return x - y;
    }
  }
  throw capability_error("draw: unsupported family");
}

std::vector<double> DistributionSpec::sample(std::size_t n, std::uint64_t seed) const {
  if (n == 0) throw config_error("sample: n must be >= 1");
  if (!sampleable()) throw capability_error("sample: spec is not sampleable");
  RngStream rng(seed, 0);
  std::vector<double> out(n);
  for (auto& v : out) v = draw(rng);
  return out;
}

DistributionSpec DistributionSpec::scaled(double c) const {
  if (!(c > 0.0)) throw config_error("scaled: factor must be positive");
  if (c == 1.0) return *this;
  switch (family_) {
    case Family::gaussian:
      return gaussian(a_ * c);
    case Family::rademacher: {
      return finite_discrete({{-c, 0.5}, {c, 0.5}});
    }
    case Family::finite_discrete: {
      std::vector<Atom> out = atoms_;
      for (auto& a : out) a.value *= c;
      return finite_discrete(std::move(out));
    }
    case Family::laplace:
      return laplace(a_ * c);
    case Family::exponential_power:
      return exponential_power(a_, b_ * c);
    case Family::uniform:
      return uniform(a_ * c, b_ * c);
    case Family::scale_mixture:
      return scale_mixture(base().scaled(c), scale_law());
    case Family::symm_diff: {
      DistributionSpec d;
      d.family_ = Family::symm_diff;
      d.base_ = std::make_shared<DistributionSpec>(base().scaled(c));
      return d;
    }
  }
  throw capability_error("scaled: unsupported family");
}

std::complex<double> evaluate(const DistributionSpec& spec, const std::string& what,
                              double point) {
  if (what == "density") {
    if (!spec.has_density()) throw capability_error("spec has no density");
    return spec.density(point);
  }
  if (what == "cdf") {
    if (!spec.has_cdf()) throw capability_error("spec has no cdf");
    return spec.cdf(point);
  }
  if (what == "cf") return spec.cf(point);
  if (what == "mgf") return spec.mgf(point);
  throw config_error("evaluate: unknown functional '" + what + "'");
}

DistributionSpec symmetrized_difference(const DistributionSpec& spec) {
  if (spec.finite_support()) {
    const auto b = spec.support_atoms();
    std::vector<Atom> out;
    out.reserve(b.size() * b.size());
    for (const auto& x : b)
      for (const auto& y : b) out.push_back({x.value - y.value, x.prob * y.prob});
    return DistributionSpec::finite_discrete(std::move(out));
  }
  if (spec.family() == Family::gaussian)
    return DistributionSpec::gaussian(spec.sigma() * std::sqrt(2.0));
  if (!spec.sampleable())
    throw capability_error("symmetrized_difference: spec is not sampleable");
  DistributionSpec d;
  d.family_ = Family::symm_diff;
  d.base_ = std::make_shared<DistributionSpec>(spec);
  return d;
}

std::string DistributionSpec::name() const {
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return std::string(buf);
  };
  switch (family_) {
    case Family::gaussian:
      return "gaussian(" + num(a_) + ")";
    case Family::rademacher:
      return "rademacher";
    case Family::finite_discrete: {
      std::string s = "finite-discrete(";
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) s += ",";
        s += "(" + num(atoms_[i].value) + "," + num(atoms_[i].prob) + ")";
      }
      return s + ")";
    }
    case Family::laplace:
      return "laplace(" + num(a_) + ")";
    case Family::exponential_power:
      return "exponential-power(" + num(a_) + "," + num(b_) + ")";
    case Family::uniform:
      return "uniform(" + num(a_) + "," + num(b_) + ")";
    case Family::scale_mixture:
      return "scale-mixture(" + base().name() + ";" + scale_law().name() + ")";
    case Family::symm_diff:
      return "symm-diff(" + base().name() + ")";
  }
  return "?";
}

}  // namespace relac
