#include "relac/sodin.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "relac/errors.hpp"
#include "relac/quadrature.hpp"
#include "relac/stats.hpp"

namespace relac {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kE = 2.71828182845904523536;

// Law of W = Y - Y' where Y follows a tilted law: exact atoms for discrete
// bases, a convolution density table for continuous ones.
class WDiffTable {
 public:
  explicit WDiffTable(const TiltedDistribution& ty) : tilted_(ty) {
    if (ty.discrete()) {
      const auto& ya = ty.atoms();
      for (const auto& a : ya)
        for (const auto& b : ya) atoms_.push_back({a.value - b.value, a.prob * b.prob});
      std::sort(atoms_.begin(), atoms_.end(),
                [](const Atom& x, const Atom& y) { return x.value < y.value; });
      return;
    }
    const double r = ty.support_radius(1e-14);
    w_max_ = 2.0 * r;
    const int n = 1024;
    step_ = w_max_ / n;
    fw_.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
      const double w = i * step_;
      // Density of Y - Y' at w (even in w).
      fw_[i] = integrate([&](double x) { return ty.density(x) * ty.density(x - w); },
                         -r, r, {1e-11, 40, 48});
    }
  }

  bool discrete() const { return !atoms_.empty(); }

  double prob_abs_ge(double u) const {
    if (discrete()) {
      double s = 0.0;
      for (const auto& a : atoms_)
        if (std::abs(a.value) >= u - 1e-12) s += a.prob;
      return s;
    }
    // 1 - 2 int_0^u f_W, trapezoid on the table.
    return 1.0 - 2.0 * table_integral(0.0, u, [](double) { return 1.0; });
  }

  // E[1 - cos(sW)].
  double one_minus_cos(double s) const {
    if (discrete()) {
      double e = 0.0;
      for (const auto& a : atoms_) e += a.prob * (1.0 - std::cos(s * a.value));
      return e;
    }
    return 1.0 - std::norm(tilted_.cf(s));
  }

  // E[1 - cos(sW) ; |W| < u], for the conditional split.
  double one_minus_cos_below(double s, double u) const {
    if (discrete()) {
      double e = 0.0;
      for (const auto& a : atoms_)
        if (std::abs(a.value) < u - 1e-12) e += a.prob * (1.0 - std::cos(s * a.value));
      return e;
    }
    return 2.0 * table_integral(0.0, u, [s](double w) { return 1.0 - std::cos(s * w); });
  }

  double one_minus_cos_given_abs_ge(double s, double u) const {
    const double q = prob_abs_ge(u);
    if (!(q > 0.0)) throw numeric_error("conditional on a null event");
    return (one_minus_cos(s) - one_minus_cos_below(s, u)) / q;
  }

  // Quantile of |W| for building w-grids.
  double abs_quantile(double prob) const {
    if (discrete()) {
      double best = 0.0;
      for (const auto& a : atoms_) best = std::max(best, std::abs(a.value));
      return best;
    }
    double lo = 0.0, hi = w_max_;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (prob_abs_ge(mid) > 1.0 - prob)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  // Support points of |W| at or above u (discrete only).
  std::vector<double> abs_support_ge(double u) const {
    std::vector<double> out;
    for (const auto& a : atoms_) {
      const double v = std::abs(a.value);
      if (v >= u - 1e-12 &&
          std::find_if(out.begin(), out.end(), [v](double o) {
            return std::abs(o - v) < 1e-12;
          }) == out.end())
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  // int_a^b h(w) f_W(w) dw on [0, w_max], with sub-steps fine enough for h's
  // oscillation; f_W is interpolated linearly.
  template <typename H>
  double table_integral(double a, double b, H h) const {
    b = std::min(b, w_max_);
    if (b <= a) return 0.0;
    const int n = std::max(64, static_cast<int>((b - a) / step_) * 4);
    const double hstep = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double w = a + i * hstep;
      const double weight = (i == 0 || i == n) ? 0.5 : 1.0;
      s += weight * h(w) * fw_at(w);
    }
    return s * hstep;
  }

  double fw_at(double w) const {
    const double a = std::abs(w);
    if (a >= w_max_) return 0.0;
    const double idx = a / step_;
    const std::size_t i = static_cast<std::size_t>(idx);
    const double t = idx - static_cast<double>(i);
    if (i + 1 >= fw_.size()) return fw_.back();
    return fw_[i] * (1.0 - t) + fw_[i + 1] * t;
  }

  TiltedDistribution tilted_;
  std::vector<Atom> atoms_;
  std::vector<double> fw_;
  double w_max_ = 0.0, step_ = 0.0;
};

// Double integral of phi(x - x') against a law given as atoms or a density.
double phi_double_integral(const std::function<double(double)>& phi,
                           const std::vector<Atom>& atoms) {
  double s = 0.0;
  for (const auto& a : atoms)
    for (const auto& b : atoms) s += a.prob * b.prob * phi(a.value - b.value);
  return s;
}

double phi_double_integral(const std::function<double(double)>& phi,
                           const std::function<double(double)>& dens, double radius) {
  // Tensor quadrature: outer adaptive over x, inner adaptive over x'.
  return integrate(
      [&](double x) {
        return dens(x) * integrate([&](double xp) { return dens(xp) * phi(x - xp); },
                                   -radius, radius, {1e-11, 40, 32});
      },
      -radius, radius, {1e-9, 40, 32});
}

double lcd_value_of(const LcdResult& lr) {
  return lr.capped ? lr.search_cap : lr.theta_star;
}

// Initial panel count matched to the integrand's oscillation scale.
int osc_panels(double span, double max_freq) {
  const double per = span * max_freq / kPi;
  return std::clamp(static_cast<int>(per * 6.0) + 32, 64, 16384);
}

struct McCounts {
  std::uint64_t n = 0;
  std::uint64_t whole = 0;          // |U| <= eps |V|
  std::uint64_t head = 0;           // |U| <= eps
  std::uint64_t chain = 0;          // |U| < eps R and V > R
  std::vector<std::uint64_t> piece; // |U| <= 2^{k+1} eps, 2^k <= |V| <= 2^{k+1}
  std::uint64_t overflow = 0;       // |V| beyond the last shell
};

McCounts pipeline_mc(const PipelineScenario& sc, int k_max) {
  McCounts c;
  c.piece.assign(static_cast<std::size_t>(k_max) + 1, 0);
  const std::size_t n = sc.alpha.dim();
  constexpr std::uint64_t kChunk = 1u << 16;
  const std::uint64_t chunks = (sc.mc_samples + kChunk - 1) / kChunk;
  for (std::uint64_t ci = 0; ci < chunks; ++ci) {
    const std::uint64_t count = std::min(kChunk, sc.mc_samples - ci * kChunk);
    RngStream rng(sc.seed, ci);
    for (std::uint64_t s = 0; s < count; ++s) {
      double u = 0.0, v = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double x = sc.spec.draw(rng);
        u += sc.alpha[i] * x;
        v += sc.beta[i] * x;
      }
      const double au = std::abs(u), av = std::abs(v);
      if (au <= sc.epsilon * av) ++c.whole;
      if (au <= sc.epsilon) ++c.head;
      if (au < sc.epsilon * sc.R && v > sc.R) ++c.chain;
      if (av >= 1.0) {
        const int k = static_cast<int>(std::floor(std::log2(av)));
        if (k <= k_max) {
          if (au <= std::ldexp(sc.epsilon, k + 1) && av >= std::ldexp(1.0, k) &&
              av <= std::ldexp(1.0, k + 1))
            ++c.piece[static_cast<std::size_t>(k)];
        } else {
          ++c.overflow;
        }
      }
    }
  }
  c.n = sc.mc_samples;
  return c;
}

}  // namespace

PipelineScenario make_scenario(std::string id, const DistributionSpec& raw,
                               const CoefficientVector& alpha,
                               const CoefficientVector& beta, double epsilon, double R,
                               std::uint64_t seed, std::uint64_t mc_samples) {
  if (!(epsilon > 0.0)) throw config_error("scenario: epsilon must be positive");
  if (!(R >= 1.0)) throw config_error("scenario: R must be >= 1");
  if (alpha.dim() != beta.dim()) throw config_error("scenario: dimension mismatch");

  PipelineScenario sc;
  sc.id = std::move(id);
  sc.raw_spec = raw;
  const SubExpParams fitted = fit_subexp_params(raw);
  sc.rescale_b = fitted.b;
  sc.spec = raw.scaled(1.0 / fitted.b);
  sc.params = {fitted.nu / fitted.b, 1.0};
  sc.alpha = alpha.normalized();
  sc.beta = beta.normalized();
  sc.epsilon = epsilon;
  sc.R = R;
  sc.gamma = std::sqrt(static_cast<double>(alpha.dim()));
  sc.seed = seed;
  sc.mc_samples = mc_samples;
  sc.x_max = std::sqrt(-std::log(1e-16));

  // Symmetry certificate: the cf must be real on a grid.
  for (int i = 1; i <= 16; ++i) {
    const double lam = 0.5 * i;
    if (std::abs(sc.spec.cf(lam).imag()) > 1e-10)
      throw config_error("scenario: law must be symmetric about zero");
  }

  // delta: half the minimal support gap (discrete) or the interquartile
  // half-width (continuous); p is the measured concentration at delta.
  if (sc.spec.finite_support()) {
    const auto atoms = sc.spec.support_atoms();
    if (atoms.size() < 2) throw config_error("scenario: degenerate law");
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < atoms.size(); ++i)
      gap = std::min(gap, atoms[i].value - atoms[i - 1].value);
    sc.delta = 0.5 * gap;
    double q = 0.0;
    for (const auto& a : atoms) {
      double window = 0.0;
      for (const auto& b : atoms)
        if (b.value >= a.value - 1e-12 && b.value <= a.value + sc.delta + 1e-12)
          window += b.prob;
      q = std::max(q, window);
    }
    sc.p = q;
  } else {
    double lo = 0.0, hi = 64.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (sc.spec.cdf(mid) < 0.75)
        lo = mid;
      else
        hi = mid;
    }
    sc.delta = 0.5 * (lo + hi);  // symmetric law: q75 = IQR/2
    sc.p = sc.spec.cdf(sc.delta / 2.0) - sc.spec.cdf(-sc.delta / 2.0);
  }
  if (!(sc.p < 1.0)) throw config_error("scenario: concentration at delta must be < 1");

  sc.lcd = lcd(sc.alpha, sc.gamma);
  return sc;
}

CheckResult tilting_check(const DistributionSpec& spec, double t,
                          const std::function<double(double)>& phi) {
  if (!spec.symmetric()) throw config_error("tilting_check: law must be symmetric");
  if (!spec.mgf_finite_at(t)) throw capability_error("tilting_check: mgf diverges at t");
  const TiltedDistribution ft = tilt(spec, t);
  CheckResult out;
  if (spec.finite_support()) {
    out.lhs = phi_double_integral(phi, spec.support_atoms());
    out.rhs = ft.normalizer() * ft.normalizer() * phi_double_integral(phi, ft.atoms());
  } else {
    if (!spec.has_density())
      throw capability_error("tilting_check: law must be discrete or have a density");
    const double r0 = decay_radius([&](double x) { return spec.density(x); }, 1.0, 1e-14);
    const double rt = ft.support_radius(1e-14);
    out.lhs = phi_double_integral(phi, [&](double x) { return spec.density(x); }, r0);
    out.rhs = ft.normalizer() * ft.normalizer() *
              phi_double_integral(phi, [&](double x) { return ft.density(x); }, rt);
  }
  out.pass = out.lhs <= out.rhs + 1e-9 * (1.0 + std::abs(out.rhs));
  return out;
}

CheckResult corollary_check(const DistributionSpec& spec, double t, double delta) {
  if (!(delta > 0.0)) throw config_error("corollary_check: delta must be positive");
  if (!spec.symmetric()) throw config_error("corollary_check: law must be symmetric");
  const TiltedDistribution ft = tilt(spec, t);
  const TiltedDistribution f0 = tilt(spec, 0.0);
  const WDiffTable wt(ft);
  const WDiffTable w0(f0);
  CheckResult out;
  out.lhs = wt.prob_abs_ge(delta);
  out.rhs = w0.prob_abs_ge(delta) / (ft.normalizer() * ft.normalizer());
  out.pass = out.lhs >= out.rhs - 1e-9 * (1.0 + std::abs(out.rhs));
  return out;
}

CfIntegralResult cf_product_integral_at(const PipelineScenario& sc, double epsilon,
                                        double R) {
  const std::size_t n = sc.alpha.dim();
  std::vector<TiltedDistribution> tilts;
  tilts.reserve(n);
  double mgf_product = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    tilts.emplace_back(sc.spec, sc.beta[k]);
    mgf_product *= tilts.back().normalizer();
  }
  std::vector<double> tk(n);
  double max_t = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    tk[k] = 2.0 * sc.alpha[k] / (epsilon * R);
    max_t = std::max(max_t, std::abs(tk[k]));
  }
  const double scale = std::max(1.0, 3.0 * std::sqrt(sc.spec.variance()));
  const int panels = osc_panels(2.0 * sc.x_max, max_t * scale);

  auto integrand = [&](double x) {
    double prod = std::exp(-x * x);
    for (std::size_t k = 0; k < n; ++k) {
      prod *= std::abs(tilts[k].cf(tk[k] * x));
      if (prod == 0.0) break;
    }
    return prod;
  };
  CfIntegralResult out;
  out.integral =
      integrate(integrand, -sc.x_max, sc.x_max, {sc.quad_tol, 48, panels});
  out.mgf_product = mgf_product;
  out.mgf_bound = std::exp(0.5 * sc.params.nu * sc.params.nu);
  out.chain_bound = (kE / kSqrtPi) * mgf_product * std::exp(-R) * out.integral;
  return out;
}

CfIntegralResult cf_product_integral(const PipelineScenario& sc) {
  return cf_product_integral_at(sc, sc.epsilon, sc.R);
}

IdentityCheck gaussian_identity_check(std::span<const double> t_grid) {
  IdentityCheck out;
  for (double t : t_grid) {
    const long double q = gauss_weight_trapezoid(
        [t](long double x) { return std::cos(2.0L * t * x); }, 7.5L, 0.05L);
    const long double exact =
        1.77245385090551602730L * std::exp(-static_cast<long double>(t) * t);
    const double abs_err = static_cast<double>(std::fabs(q - exact));
    if (std::abs(static_cast<double>(exact)) >= 1e-8)
      out.max_abs_err = std::max(out.max_abs_err, abs_err);
    if (exact != 0.0L)
      out.max_rel_err =
          std::max(out.max_rel_err, static_cast<double>(std::fabs(q - exact) / exact));
  }
  return out;
}

double cosine_dist_check(int grid_points) {
  if (grid_points < 3) throw config_error("cosine_dist_check: grid too small");
  double min_slack = std::numeric_limits<double>::infinity();
  const double lo = -4.0 * kPi, hi = 4.0 * kPi;
  for (int i = 0; i < grid_points; ++i) {
    const double th = lo + (hi - lo) * i / (grid_points - 1);
    const double r = std::remainder(th / (2.0 * kPi), 1.0);
    const double slack = (1.0 - std::cos(th)) - 8.0 * r * r;
    min_slack = std::min(min_slack, slack);
  }
  return min_slack;
}

IntervalStructure interval_structure(const PipelineScenario& sc, double z, double w) {
  if (!(z >= 0.0)) throw config_error("interval_structure: z must be nonnegative");
  if (z > 0.5 * sc.gamma + 1e-12)
    throw config_error("interval_structure: z must be at most gamma/2");
  if (!(w >= sc.delta)) throw config_error("interval_structure: w must be >= delta");

  IntervalStructure out;
  const double c = w / (kPi * sc.epsilon * sc.R);  // x -> theta scale
  const double L = lcd_value_of(sc.lcd);
  out.lcd_value = L;
  out.lcd_capped = sc.lcd.capped;
  out.predicted_len = 20.0 * z / c;
  out.predicted_gap = L / c;

  const int n = sc.structure_grid;
  const double h = 2.0 * sc.x_max / (n - 1);
  out.cell = h;
  if (z > 0.0 && out.predicted_len < 8.0 * h)
    throw resolution_error(
        "interval_structure: grid too coarse for the predicted component length");

  // z = 0 still needs one cell of admission slack: exact lattice hits fall
  // between grid points. The distance along x moves at rate at most c.
  const double z_eff = std::max(z, 0.5001 * c * h);

  // Collect admissible runs.
  bool in_run = false;
  double run_lo = 0.0, run_hi = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -sc.x_max + i * h;
    const double theta = c * x;
    double dist;
    if (theta == 0.0) {
      dist = 0.0;
    } else {
      long double s = 0.0L;
      for (double a : sc.alpha.entries()) {
        const double rr = std::remainder(theta * a, 1.0);
        s += static_cast<long double>(rr) * rr;
      }
      dist = static_cast<double>(std::sqrt(s));
    }
    if (dist <= z_eff) {
      if (!in_run) {
        in_run = true;
        run_lo = x;
      }
      run_hi = x;
    } else if (in_run) {
      in_run = false;
      out.runs.emplace_back(run_lo, run_hi);
    }
  }
  if (in_run) out.runs.emplace_back(run_lo, run_hi);

  // Merge runs into clusters: the dichotomy forbids separations between
  // 20 z and L (in theta units), so any split threshold inside that window
  // classifies identically; we use the geometric mean.
  double thr;
  if (z > 0.0 && 20.0 * z < L)
    thr = std::sqrt(20.0 * z * L) / c;
  else
    thr = 0.5 * L / c;
  for (const auto& r : out.runs) {
    if (!out.clusters.empty() && r.first - out.clusters.back().second <= thr)
      out.clusters.back().second = r.second;
    else
      out.clusters.push_back(r);
  }

  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < out.clusters.size(); ++i) {
    out.max_len = std::max(out.max_len, out.clusters[i].second - out.clusters[i].first);
    if (i > 0)
      out.min_gap =
          std::min(out.min_gap, out.clusters[i].first - out.clusters[i - 1].second);
  }
  out.len_ok = out.max_len <= out.predicted_len + 2.0 * h;
  out.gap_ok =
      out.clusters.size() < 2 || out.min_gap >= out.predicted_gap - 2.0 * h;
  return out;
}

MuBound mu_measure_bound(const PipelineScenario& sc, double z, double w) {
  const IntervalStructure st = interval_structure(sc, z, w);
  MuBound out;
  double mu = 0.0;
  const double half = 0.5 * st.cell;
  for (const auto& r : st.runs) {
    mu += 0.5 * kSqrtPi *
          (std::erf(r.second + half) - std::erf(r.first - half));
  }
  out.mu = mu;
  const double L = st.lcd_value;
  out.bound = 70.0 * z * (sc.epsilon * sc.R / w + 1.0 / L);
  if (z <= 0.5 * sc.gamma)
    out.pass = mu <= out.bound + 1e-9 && mu <= out.trivial + 1e-9;
  else
    out.pass = mu <= out.trivial + 1e-9;
  return out;
}

TiltUniformity measure_tilt_uniformity(const PipelineScenario& sc) {
  const std::size_t n = sc.beta.dim();
  const double u = 2.0 * sc.delta;
  const WDiffTable base(tilt(sc.spec, 0.0));
  const double q0 = base.prob_abs_ge(u);
  if (!(q0 > 0.0)) throw numeric_error("tilt uniformity: P{|W| >= 2 delta} vanishes");

  TiltUniformity out;
  out.q = 1.0;
  out.tau = std::numeric_limits<double>::infinity();

  // s-grid: log-spaced through the oscillation scales that matter.
  std::vector<double> sgrid;
  const double s_lo = 0.05 / sc.delta, s_hi = 40.0 / sc.delta;
  for (int i = 0; i < 33; ++i)
    sgrid.push_back(s_lo * std::pow(s_hi / s_lo, i / 32.0));

  // Distinct tilts only (repeated beta_k values are common).
  std::vector<double> tilts;
  for (std::size_t k = 0; k < n; ++k) {
    bool seen = false;
    for (double t : tilts)
      if (std::abs(t - sc.beta[k]) < 1e-12) seen = true;
    if (!seen) tilts.push_back(sc.beta[k]);
  }

  for (double t : tilts) {
    const WDiffTable wt(tilt(sc.spec, t));
    out.q = std::min(out.q, wt.prob_abs_ge(u));
    for (double s : sgrid) {
      const double denom = base.one_minus_cos_given_abs_ge(s, u);
      if (denom < 1e-12) continue;
      const double ratio = wt.one_minus_cos_given_abs_ge(s, u) / denom;
      out.tau = std::min(out.tau, ratio);
    }
  }
  if (!std::isfinite(out.tau)) out.tau = 1.0;
  out.tau = std::max(out.tau, 1e-6);
  return out;
}

CosineChainCheck exp_cosine_bound_check(const PipelineScenario& sc) {
  const TiltUniformity tu = measure_tilt_uniformity(sc);
  const std::size_t n = sc.alpha.dim();
  std::vector<double> tk(n);
  double max_t = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    tk[k] = 2.0 * sc.alpha[k] / (sc.epsilon * sc.R);
    max_t = std::max(max_t, std::abs(tk[k]));
  }
  double mgf_product = 1.0;
  for (std::size_t k = 0; k < n; ++k)
    mgf_product *= tilt(sc.spec, sc.beta[k]).normalizer();

  // w-grid over |w| >= 2 delta: the exact support points for discrete laws,
  // a quantile-spanned grid for continuous ones.
  const WDiffTable base(tilt(sc.spec, 0.0));
  std::vector<double> wgrid;
  if (sc.spec.finite_support()) {
    wgrid = base.abs_support_ge(2.0 * sc.delta);
  } else {
    const double w_lo = 2.0 * sc.delta;
    const double w_hi = std::max(w_lo * 1.5, base.abs_quantile(0.999));
    for (int i = 0; i < 25; ++i) wgrid.push_back(w_lo + (w_hi - w_lo) * i / 24.0);
  }
  if (wgrid.empty()) throw numeric_error("exp_cosine_bound_check: empty w-grid");

  CosineChainCheck out;
  out.q = tu.q;
  out.tau = tu.tau;
  double sup = 0.0;
  for (double w : wgrid) {
    const int panels = osc_panels(2.0 * sc.x_max, max_t * w);
    const double val = integrate(
        [&](double x) {
          double sum = 0.0;
          for (std::size_t k = 0; k < n; ++k) sum += 1.0 - std::cos(tk[k] * x * w);
          return std::exp(-0.5 * tu.q * tu.tau * sum - x * x);
        },
        -sc.x_max, sc.x_max, {sc.quad_tol, 48, panels});
    if (val > sup) {
      sup = val;
      out.sup_w = w;
    }
  }
  out.rhs = (kE / kSqrtPi) * mgf_product * std::exp(-sc.R) * sup;

  const McCounts mc = pipeline_mc(sc, 2);
  const Interval iv = wilson_interval(mc.chain, mc.n, 0.99);
  out.mc_value = static_cast<double>(mc.chain) / static_cast<double>(mc.n);
  out.mc_hi = iv.hi;
  const double se = std::sqrt(std::max(out.mc_value * (1.0 - out.mc_value),
                                       1.0 / static_cast<double>(mc.n)) /
                              static_cast<double>(mc.n));
  out.pass = out.mc_value <= out.rhs + 4.0 * se;
  return out;
}

double scenario_tail_bound(const PipelineScenario& sc, double u) {
  const double nu2 = sc.params.nu * sc.params.nu;
  if (u <= nu2) return std::exp(-u * u / (2.0 * nu2));
  return std::exp(-u / 2.0);
}

DyadicReport dyadic_decomposition_check(const PipelineScenario& sc) {
  int k_max = 2;
  while (k_max < 12 && scenario_tail_bound(sc, std::ldexp(1.0, k_max)) > 1e-12) ++k_max;

  const McCounts mc = pipeline_mc(sc, k_max);
  const double N = static_cast<double>(mc.n);

  DyadicReport rep;
  rep.whole = static_cast<double>(mc.whole) / N;
  {
    const Interval iv = wilson_interval(mc.whole, mc.n, 0.99);
    rep.whole_hi = iv.hi;
    rep.whole_se = std::sqrt(std::max(rep.whole * (1.0 - rep.whole), 1.0 / N) / N);
  }
  rep.head = static_cast<double>(mc.head) / N;
  rep.head_hi = wilson_interval(mc.head, mc.n, 0.99).hi;

  const double L = lcd_value_of(sc.lcd);
  const double c_p = 0.01;
  rep.head_shape = sc.epsilon + 1.0 / L + std::exp(-c_p * sc.gamma * sc.gamma);
  rep.C_p_calibrated = rep.head_hi / rep.head_shape;

  double sum_pieces = 0.0;
  double sum_bounds = 0.0;
  std::uint64_t piece_hits_total = 0;
  bool pieces_ok = true;
  double C_cal = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    DyadicPiece piece;
    piece.k = k;
    piece.R = std::ldexp(1.0, k);
    const std::uint64_t hits = mc.piece[static_cast<std::size_t>(k)];
    piece_hits_total += hits;
    piece.mc_value = static_cast<double>(hits) / N;
    piece.mc_hi = wilson_interval(hits, mc.n, 0.99).hi;
    piece.std_err =
        std::sqrt(std::max(piece.mc_value * (1.0 - piece.mc_value), 1.0 / N) / N);
    // Both V-signs of the chain bound at (2 eps, 2^k); symmetry makes the
    // negative side identical.
    const CfIntegralResult cf = cf_product_integral_at(sc, 2.0 * sc.epsilon, piece.R);
    piece.explicit_bound = 2.0 * cf.chain_bound;
    piece.shape = std::exp(-piece.R) *
                  (2.0 * sc.epsilon * piece.R + 1.0 / L +
                   std::exp(-sc.gamma * sc.gamma));
    sum_pieces += piece.mc_value;
    sum_bounds += piece.explicit_bound;
    if (piece.mc_value > piece.explicit_bound + 4.0 * piece.std_err) pieces_ok = false;
    if (piece.shape > 0.0) C_cal = std::max(C_cal, piece.mc_hi / piece.shape);
    rep.pieces.push_back(piece);
  }
  rep.sum_pieces = sum_pieces;
  rep.C_calibrated = C_cal;
  rep.pieces_bounded = pieces_ok;

  // The decomposition is a per-sample set inclusion, so with shared samples
  // the counts obey it exactly (overflow counts the samples beyond the last
  // shell).
  rep.whole_le_sum = mc.whole <= mc.head + piece_hits_total + mc.overflow;
  rep.tail_residual_bound = scenario_tail_bound(sc, std::ldexp(1.0, k_max + 1));
  rep.assembled = rep.C_p_calibrated * rep.head_shape + sum_bounds +
                  rep.tail_residual_bound;
  rep.assembled_dominates = rep.whole <= rep.assembled + 1e-12;
  return rep;
}

}  // namespace relac
