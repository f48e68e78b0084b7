// relac: a numerical laboratory for relative anti-concentration inequalities.
// One binary, subcommand style; config via flags, JSON reports on stdout or
// --out. Exit codes: 0 ok, 1 inequality violation, 2 config error,
// 3 capability error, 4 resolution/numeric error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "relac/bounds.hpp"
#include "relac/catalog.hpp"
#include "relac/coefficients.hpp"
#include "relac/distribution.hpp"
#include "relac/errors.hpp"
#include "relac/estimators.hpp"
#include "relac/json_io.hpp"
#include "relac/lcd.hpp"
#include "relac/logconcave.hpp"
#include "relac/sodin.hpp"
#include "relac/stress.hpp"

namespace relac {
namespace {

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    write_json(j, std::cout);
  } else {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw config_error("cannot open output file: " + out_path);
    write_json(j, os);
  }
}

json estimate_json(const ProbEstimate& e) {
  json j;
  j["value"] = e.value;
  j["method"] = e.method == EstimateMethod::exact ? "exact" : "monte-carlo";
  j["ci_level"] = e.ci_level;
  j["ci_lo"] = e.ci_lo;
  j["ci_hi"] = e.ci_hi;
  j["n_samples"] = e.n_samples;
  if (e.seed) j["seed"] = *e.seed;
  if (!e.rng.empty()) j["rng"] = e.rng;
  return j;
}

json bound_json(const BoundReport& b) {
  json j;
  j["statement"] = theorem_name(b.id);
  j["rhs"] = b.rhs;
  json terms;
  for (const auto& [k, v] : b.terms) terms[k] = v;
  j["terms"] = terms;
  json consts;
  for (const auto& [k, v] : b.constants) consts[k] = v;
  j["constants"] = consts;
  j["vacuous"] = b.vacuous;
  j["applicable"] = b.applicable;
  return j;
}

json lcd_json(const LcdResult& r) {
  json j;
  j["theta_star"] = r.theta_star;
  j["achieved_dist"] = r.achieved_dist;
  j["gamma"] = r.gamma;
  j["capped"] = r.capped;
  j["search_cap"] = r.search_cap;
  return j;
}

struct ConstantFlags {
  TheoremConstants k;
  void attach(CLI::App* cmd) {
    cmd->add_option("--C", k.C, "conjecture leading constant");
    cmd->add_option("--C-prime", k.C_prime, "sub-gaussian/exponential constant");
    cmd->add_option("--c-prime", k.c_prime, "gamma exponent constant");
    cmd->add_option("--C-p", k.C_p, "small-ball constant");
    cmd->add_option("--c-p", k.c_p, "small-ball gamma exponent");
    cmd->add_option("--C-logconcave", k.C_logconcave, "log-concave constant");
    cmd->add_flag_callback(
        "--no-lcd-term", [this] { k.conjecture_lcd_term = false; },
        "evaluate the conjecture without the LCD term");
    cmd->add_option("--lcd-cap", k.lcd_cap, "LCD search cap (0 = default)");
    cmd->add_option("--lcd-tol", k.lcd_tol, "LCD refinement tolerance");
  }
};

json constants_json(const TheoremConstants& k) {
  json j;
  j["C"] = k.C;
  j["C_prime"] = k.C_prime;
  j["c_prime"] = k.c_prime;
  j["C_p"] = k.C_p;
  j["c_p"] = k.c_p;
  j["C_logconcave"] = k.C_logconcave;
  j["conjecture_lcd_term"] = k.conjecture_lcd_term;
  j["lcd_cap"] = k.lcd_cap;
  j["lcd_tol"] = k.lcd_tol;
  return j;
}

json check_json(const std::string& id, double lhs, double rhs, bool pass) {
  json j;
  j["id"] = id;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["slack"] = rhs - lhs;
  j["pass"] = pass;
  return j;
}

// ---------------------------------------------------------------- verify --

struct VerifyOutcome {
  json report;
  bool pass = true;
};

VerifyOutcome run_verify(const std::string& catalog_path, bool quick,
                         std::uint64_t seed, int threads) {
  VerifyOutcome out;
  json checks = json::array();
  auto add_check = [&](const std::string& id, double lhs, double rhs, bool pass) {
    checks.push_back(check_json(id, lhs, rhs, pass));
    out.pass = out.pass && pass;
  };

  // Pointwise identities and dominations independent of the catalog.
  {
    const double slack = cosine_dist_check(quick ? 100001 : 400001);
    add_check("cosine-dist", -slack, 1e-12, slack >= -1e-12);

    std::vector<double> tg;
    for (double t = 0.0; t <= 3.0; t += 0.25) tg.push_back(t);
    const IdentityCheck idc = gaussian_identity_check(tg);
    add_check("gaussian-identity", idc.max_abs_err, 1e-10, idc.max_abs_err < 1e-10);

    RngStream rng(seed, 0xca0c);
    bool dom = true;
    double worst = 0.0;
    for (int i = 0; i < (quick ? 200 : 1000); ++i) {
      const double a = rng.uniform(-8.0, 8.0);
      const double ell = std::exp(rng.uniform(std::log(1e-3), std::log(2.0)));
      const double mass = cauchy_interval_mass(a, ell);
      const double bound = cauchy_interval_bound(a, ell);
      worst = std::max(worst, mass - bound);
      dom = dom && mass <= bound + 1e-12;
    }
    add_check("cauchy-interval-domination", worst, 0.0, dom);

    const LcdResult l1 = lcd(CoefficientVector({1.0, 0.0}), 0.2);
    add_check("lcd-closed-case-1", std::abs(l1.theta_star - 10.0 / 11.0), 1e-6,
              std::abs(l1.theta_star - 10.0 / 11.0) < 1e-6);
    const LcdResult l2 = lcd(ones_vector(9, 1.0 / 3.0), 0.2);
    add_check("lcd-closed-case-2", std::abs(l2.theta_star - 2.8), 1e-6,
              std::abs(l2.theta_star - 2.8) < 1e-6);

    const CheckResult tc = tilting_check(
        DistributionSpec::rademacher(), 0.5,
        [](double w) { return std::abs(w) > 1.0 ? 1.0 : 0.0; });
    add_check("tilting-two-point", tc.lhs, tc.rhs, tc.pass);
    const CheckResult cc = corollary_check(DistributionSpec::rademacher(), 0.5, 1.0);
    add_check("tilt-corollary-two-point", cc.rhs, cc.lhs, cc.pass);
  }

  // Catalog rows: estimates against every listed theorem.
  const Catalog cat = load_catalog(catalog_path);
  struct Row {
    std::string scenario;
    TheoremId theorem = TheoremId::conjecture;
    double lhs = 0.0, lhs_hi = 0.0, rhs = 0.0, shape = 0.0, constant = 1.0;
  };
  std::vector<Row> rows;
  TheoremConstants base_constants;
  for (const auto& sc : cat.scenarios) {
    const std::uint64_t samples = quick ? sc.mc_samples / 10 + 1000 : sc.mc_samples;
    ProbEstimate est;
    if (sc.exact_feasible)
      est = exact_probability(sc.alpha, sc.beta, sc.spec);
    else
      est = mc_probability(sc.alpha, sc.beta, sc.spec, samples, seed + sc.seed,
                           sc.ci_level, threads);
    for (TheoremId id : sc.theorems) {
      const BoundReport b = theorem_bound(id, sc.alpha, sc.beta, 0.0, base_constants);
      Row row;
      row.scenario = sc.id;
      row.theorem = id;
      row.lhs = est.value;
      row.lhs_hi = est.ci_hi;
      row.rhs = b.rhs;
      double c_used = 1.0;
      for (const auto& [k, v] : b.constants)
        if (k == "C" || k == "C'") c_used = v;
      row.constant = c_used;
      row.shape = c_used != 0.0 ? b.rhs / c_used : 0.0;
      rows.push_back(row);
    }
  }

  // Calibration: smallest leading constant per theorem that clears every
  // scenario's ci_hi.
  json calibration;
  std::vector<TheoremId> seen;
  for (const auto& r : rows)
    if (std::find(seen.begin(), seen.end(), r.theorem) == seen.end())
      seen.push_back(r.theorem);
  std::vector<double> calibrated(seen.size(), 0.0);
  for (std::size_t t = 0; t < seen.size(); ++t) {
    double c_min = 0.0;
    for (const auto& r : rows)
      if (r.theorem == seen[t] && r.shape > 0.0)
        c_min = std::max(c_min, r.lhs_hi / r.shape);
    calibrated[t] = c_min;
    calibration[theorem_name(seen[t])] = c_min;
  }

  json row_json = json::array();
  for (const auto& r : rows) {
    std::size_t t = 0;
    while (seen[t] != r.theorem) ++t;
    const double rhs_cal = calibrated[t] * r.shape;
    const bool pass = r.lhs_hi <= rhs_cal + 1e-12;
    out.pass = out.pass && pass;
    json j;
    j["scenario"] = r.scenario;
    j["theorem"] = theorem_name(r.theorem);
    j["lhs"] = r.lhs;
    j["lhs_ci_hi"] = r.lhs_hi;
    j["rhs_default"] = r.rhs;
    j["rhs_calibrated"] = rhs_cal;
    j["ratio"] = rhs_cal > 0.0 ? r.lhs / rhs_cal : 0.0;
    j["pass"] = pass;
    row_json.push_back(j);
  }

  // LCD-term necessity: all-equal coefficients against a vanishing ratio.
  json necessity = json::array();
  {
    double c_conj = 1.0;
    for (std::size_t t = 0; t < seen.size(); ++t)
      if (seen[t] == TheoremId::conjecture) c_conj = std::max(calibrated[t], 1e-12);
    for (std::size_t n : {4u, 8u, 12u, 16u}) {
      const CoefficientVector alpha =
          ones_vector(n, 1.0 / std::sqrt(static_cast<double>(n)));
      const CoefficientVector beta = ones_vector(n, 1e-6 / std::sqrt(static_cast<double>(n)));
      const ProbEstimate est = exact_probability(alpha, beta,
                                                 DistributionSpec::rademacher());
      TheoremConstants with = base_constants;
      with.C = c_conj;
      TheoremConstants without = with;
      without.conjecture_lcd_term = false;
      const BoundReport b_with = theorem_bound(TheoremId::conjecture, alpha, beta, 0.0, with);
      const BoundReport b_without =
          theorem_bound(TheoremId::conjecture, alpha, beta, 0.0, without);
      const bool violated_without = est.value > b_without.rhs;
      const bool satisfied_with = est.value <= b_with.rhs + 1e-12;
      out.pass = out.pass && violated_without && satisfied_with;
      json j;
      j["n"] = n;
      j["exact_p"] = est.value;
      j["rhs_without_lcd"] = b_without.rhs;
      j["rhs_with_lcd"] = b_with.rhs;
      j["violated_without_lcd"] = violated_without;
      j["satisfied_with_lcd"] = satisfied_with;
      necessity.push_back(j);
    }
  }

  json cfg;
  cfg["catalog"] = catalog_path;
  cfg["quick"] = quick;
  cfg["seed"] = seed;
  cfg["threads"] = threads;
  cfg["constants"] = constants_json(base_constants);
  out.report["meta"] = meta_block("verify", cfg);
  out.report["checks"] = checks;
  out.report["calibration"] = calibration;
  out.report["rows"] = row_json;
  out.report["lcd_necessity"] = necessity;
  out.report["pass"] = out.pass;
  return out;
}

// ----------------------------------------------------------------- sodin --

json sodin_report(const PipelineScenario& sc) {
  json steps = json::array();
  bool all_pass = true;
  auto push = [&](const std::string& id, double lhs, double rhs, bool pass) {
    steps.push_back(check_json(id, lhs, rhs, pass));
    all_pass = all_pass && pass;
  };

  // The rescaled law has its envelope on |t| <= 1; probe the tilt midway.
  const double tilt_t = 0.5;
  const double phi_cut = sc.delta;
  const CheckResult tc = tilting_check(
      sc.spec, tilt_t, [phi_cut](double w) { return std::abs(w) > phi_cut ? 1.0 : 0.0; });
  push("tilting", tc.lhs, tc.rhs, tc.pass);
  const CheckResult cc = corollary_check(sc.spec, tilt_t, 2.0 * sc.delta);
  push("tilt-corollary", cc.rhs, cc.lhs, cc.pass);

  std::vector<double> tg;
  for (double t = 0.0; t <= 3.0; t += 0.5) tg.push_back(t);
  const IdentityCheck idc = gaussian_identity_check(tg);
  push("gaussian-identity", idc.max_abs_err, 1e-10, idc.max_abs_err < 1e-10);

  const double cslack = cosine_dist_check(200001);
  push("cosine-dist", -cslack, 1e-12, cslack >= -1e-12);

  const CfIntegralResult cf = cf_product_integral(sc);
  push("mgf-product", cf.mgf_product, cf.mgf_bound,
       cf.mgf_product <= cf.mgf_bound * (1 + 1e-9));

  const CosineChainCheck ec = exp_cosine_bound_check(sc);
  push("exp-cosine-chain", ec.mc_value, ec.rhs, ec.pass);

  const double L = sc.lcd.capped ? sc.lcd.search_cap : sc.lcd.theta_star;
  const double z1 = std::min(0.45 * sc.gamma, L / 45.0);
  const double w1 = std::max(2.0 * sc.delta, 1.0);
  const IntervalStructure st = interval_structure(sc, z1, w1);
  push("interval-length", st.max_len, st.predicted_len + 2.0 * st.cell, st.len_ok);
  push("interval-gap", st.clusters.size() < 2 ? 0.0 : st.predicted_gap - 2.0 * st.cell,
       st.clusters.size() < 2 ? 1.0 : st.min_gap, st.gap_ok);

  const MuBound mu = mu_measure_bound(sc, z1, w1);
  push("mu-measure", mu.mu, std::min(mu.bound, mu.trivial), mu.pass);

  const DyadicReport dy = dyadic_decomposition_check(sc);
  push("dyadic-subadditivity", dy.whole,
       dy.head + dy.sum_pieces + dy.tail_residual_bound, dy.whole_le_sum);
  push("dyadic-pieces-bounded", dy.pieces_bounded ? 0.0 : 1.0, 0.5, dy.pieces_bounded);
  push("assembled-dominates", dy.whole, dy.assembled, dy.assembled_dominates);

  json j;
  j["id"] = sc.id;
  j["law"] = sc.raw_spec.name();
  j["rescale_b"] = sc.rescale_b;
  j["nu"] = sc.params.nu;
  j["epsilon"] = sc.epsilon;
  j["R"] = sc.R;
  j["gamma"] = sc.gamma;
  j["delta"] = sc.delta;
  j["p"] = sc.p;
  j["lcd"] = lcd_json(sc.lcd);
  j["q"] = ec.q;
  j["tau"] = ec.tau;
  j["C_p_calibrated"] = dy.C_p_calibrated;
  j["C_calibrated"] = dy.C_calibrated;
  j["steps"] = steps;
  j["pass"] = all_pass;
  return j;
}

}  // namespace
}  // namespace relac

int main(int argc, char** argv) {
  using namespace relac;
  CLI::App app{"relative anti-concentration laboratory"};
  app.require_subcommand(1);
  std::string out_path;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--threads", threads, "parallelism degree (does not affect results)");

  // lcd
  auto* cmd_lcd = app.add_subcommand("lcd", "essential least common denominator");
  std::string lcd_vector_file;
  double lcd_gamma = 0.2, lcd_cap = 0.0, lcd_tol = 1e-9;
  cmd_lcd->add_option("--vector", lcd_vector_file, "vector file, one real per line")
      ->required();
  cmd_lcd->add_option("--gamma", lcd_gamma, "admissible lattice distance")->required();
  cmd_lcd->add_option("--cap", lcd_cap, "search cap (0 = default)");
  cmd_lcd->add_option("--tol", lcd_tol, "refinement tolerance");

  // estimate
  auto* cmd_est = app.add_subcommand("estimate", "P{|<a,X>| <= |<b,X>|}");
  std::string est_alpha, est_beta, est_dist, est_method = "mc";
  std::uint64_t est_samples = 100000, est_seed = 1;
  double est_ci = 0.99;
  cmd_est->add_option("--alpha-file", est_alpha)->required();
  cmd_est->add_option("--beta-file", est_beta)->required();
  cmd_est->add_option("--dist", est_dist, "distribution (shorthand or config path)")
      ->required();
  cmd_est->add_option("--method", est_method, "exact | mc");
  cmd_est->add_option("--samples", est_samples);
  cmd_est->add_option("--seed", est_seed);
  cmd_est->add_option("--ci", est_ci, "confidence level");

  // bounds
  auto* cmd_bounds = app.add_subcommand("bounds", "inequality right-hand sides");
  std::string b_alpha, b_beta, b_dist, b_theorem = "conjecture";
  double b_gamma = 0.0;
  ConstantFlags b_flags;
  cmd_bounds->add_option("--alpha-file", b_alpha)->required();
  cmd_bounds->add_option("--beta-file", b_beta)->required();
  cmd_bounds->add_option("--theorem", b_theorem)->required();
  cmd_bounds->add_option("--dist", b_dist, "law (needed by mix_uniform)");
  cmd_bounds->add_option("--gamma", b_gamma, "0 selects sqrt(n)");
  b_flags.attach(cmd_bounds);

  // levelset
  auto* cmd_level = app.add_subcommand("levelset", "half-peak level-set constants");
  std::string lv_density = "gaussian";
  int lv_resolution = 2001;
  std::vector<double> lv_thetas;
  cmd_level->add_option("--density", lv_density, "gaussian | uniform-disk | laplace-product");
  cmd_level->add_option("--resolution", lv_resolution);
  cmd_level->add_option("--sector-theta", lv_thetas, "sector angles to check");

  // sodin
  auto* cmd_sodin = app.add_subcommand("sodin", "sub-exponential pipeline replay");
  std::string sodin_config;
  cmd_sodin->add_option("--scenario", sodin_config, "scenario json file")->required();

  // stress
  auto* cmd_stress = app.add_subcommand("stress", "adversarial ratio search");
  std::string st_dist, st_theorem = "conjecture", st_trace_csv;
  std::size_t st_n = 8;
  int st_restarts = 4, st_steps = 200;
  std::uint64_t st_seed = 1, st_samples = 100000;
  ConstantFlags st_flags;
  cmd_stress->add_option("--dist", st_dist)->required();
  cmd_stress->add_option("--n", st_n);
  cmd_stress->add_option("--theorem", st_theorem);
  cmd_stress->add_option("--restarts", st_restarts);
  cmd_stress->add_option("--steps", st_steps);
  cmd_stress->add_option("--seed", st_seed);
  cmd_stress->add_option("--samples", st_samples);
  cmd_stress->add_option("--trace-csv", st_trace_csv, "write the trace as CSV");
  st_flags.attach(cmd_stress);

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "full invariant suite");
  std::string v_catalog = "data/catalog.json";
  bool v_quick = false;
  std::uint64_t v_seed = 1;
  cmd_verify->add_option("--catalog", v_catalog);
  cmd_verify->add_flag("--quick", v_quick, "smaller sample sizes");
  cmd_verify->add_option("--seed", v_seed);

  // report
  auto* cmd_report = app.add_subcommand("report", "aggregate prior outputs to CSV");
  std::vector<std::string> rp_inputs;
  cmd_report->add_option("inputs", rp_inputs, "json outputs to aggregate")->required();

  try {
    app.parse(argc, argv);

    if (cmd_lcd->parsed()) {
      const CoefficientVector v = read_vector_file(lcd_vector_file);
      const LcdResult r = lcd(v, lcd_gamma, lcd_cap, lcd_tol);
      json cfg;
      cfg["vector"] = lcd_vector_file;
      cfg["gamma"] = lcd_gamma;
      cfg["cap"] = lcd_cap;
      cfg["tol"] = lcd_tol;
      json j;
      j["meta"] = meta_block("lcd", cfg);
      const json lj = lcd_json(r);
      for (const auto& [k, v2] : lj.items()) j[k] = v2;
      emit(j, out_path);
      return 0;
    }

    if (cmd_est->parsed()) {
      const CoefficientVector a = read_vector_file(est_alpha);
      const CoefficientVector b = read_vector_file(est_beta);
      const DistributionSpec spec = DistributionSpec::parse(est_dist);
      ProbEstimate e;
      if (est_method == "exact")
        e = exact_probability(a, b, spec);
      else if (est_method == "mc")
        e = mc_probability(a, b, spec, est_samples, est_seed, est_ci, threads);
      else
        throw config_error("estimate: --method must be 'exact' or 'mc'");
      json cfg;
      cfg["alpha_file"] = est_alpha;
      cfg["beta_file"] = est_beta;
      cfg["dist"] = spec.name();
      cfg["method"] = est_method;
      cfg["samples"] = est_samples;
      cfg["seed"] = est_seed;
      cfg["ci"] = est_ci;
      json j;
      j["meta"] = meta_block("estimate", cfg);
      j["estimate"] = estimate_json(e);
      emit(j, out_path);
      return 0;
    }

    if (cmd_bounds->parsed()) {
      const CoefficientVector a = read_vector_file(b_alpha);
      const CoefficientVector b = read_vector_file(b_beta);
      const TheoremId id = theorem_from_name(b_theorem);
      BoundReport rep;
      if (id == TheoremId::mix_uniform) {
        if (b_dist.empty()) throw config_error("bounds: mix_uniform needs --dist");
        rep = mixture_bound_uniform(DistributionSpec::parse(b_dist), a, b,
                                    b_flags.k.C_logconcave)
                  .report;
      } else {
        rep = theorem_bound(id, a, b, b_gamma, b_flags.k);
      }
      json cfg;
      cfg["alpha_file"] = b_alpha;
      cfg["beta_file"] = b_beta;
      cfg["theorem"] = b_theorem;
      cfg["gamma"] = b_gamma;
      cfg["constants"] = constants_json(b_flags.k);
      json j;
      j["meta"] = meta_block("bounds", cfg);
      j["bound"] = bound_json(rep);
      emit(j, out_path);
      return 0;
    }

    if (cmd_level->parsed()) {
      const PlanarDensity d = catalog_density(lv_density, lv_resolution);
      const LevelsetReport rep = verify_levelset(d);
      json cfg;
      cfg["density"] = lv_density;
      cfg["resolution"] = lv_resolution;
      json j;
      j["meta"] = meta_block("levelset", cfg);
      j["p00"] = rep.p00;
      j["peak"] = rep.peak;
      j["measured_a"] = rep.measured_a;
      j["measured_A"] = rep.measured_A;
      j["contains_a_disk"] = rep.contains_a_disk;
      j["within_A_disk"] = rep.within_A_disk;
      j["peak_in_range"] = rep.peak_in_range;
      j["isotropy_ok"] = rep.isotropy_ok;
      j["logconcavity_ok"] = rep.logconcavity_ok;
      j["total_mass"] = rep.total_mass;
      j["cells_inside"] = rep.cells_inside;
      if (!lv_thetas.empty()) {
        json sectors = json::array();
        for (double th : lv_thetas) {
          const SectorResult s = sector_mass_bound(d, th, rep);
          json sj;
          sj["theta"] = s.theta;
          sj["mass"] = s.mass;
          sj["bound"] = s.bound;
          sj["pass"] = s.pass;
          sectors.push_back(sj);
        }
        j["sectors"] = sectors;
      }
      const bool ok = rep.all_pass();
      j["pass"] = ok;
      emit(j, out_path);
      return ok ? 0 : 1;
    }

    if (cmd_sodin->parsed()) {
      std::ifstream in(sodin_config);
      if (!in) throw config_error("cannot open scenario file: " + sodin_config);
      json sj = json::parse(in);
      SodinScenarioConfig cfg;
      cfg.id = sj.value("id", "scenario");
      cfg.spec = DistributionSpec::parse(sj.at("dist").get<std::string>());
      cfg.n = sj.value("n", 8);
      cfg.vector_seed = sj.value("vector_seed", 1);
      cfg.alpha_ones = sj.value("alpha_ones", true);
      cfg.epsilon = sj.value("epsilon", 0.1);
      cfg.R = sj.value("R", 1.0);
      cfg.seed = sj.value("seed", 1);
      cfg.mc_samples = sj.value("mc_samples", 200000);
      const PipelineScenario sc = instantiate_sodin(cfg);
      json j;
      j["meta"] = meta_block("sodin", sj);
      j["scenario"] = sodin_report(sc);
      const bool ok = j["scenario"]["pass"].get<bool>();
      j["pass"] = ok;
      emit(j, out_path);
      return ok ? 0 : 1;
    }

    if (cmd_stress->parsed()) {
      const DistributionSpec spec = DistributionSpec::parse(st_dist);
      EstimatorChoice est;
      est.mc_samples = st_samples;
      const SearchResult r = search(spec, st_n, theorem_from_name(st_theorem),
                                    st_restarts, st_steps, st_seed, st_flags.k, est);
      json cfg;
      cfg["dist"] = spec.name();
      cfg["n"] = st_n;
      cfg["theorem"] = st_theorem;
      cfg["restarts"] = st_restarts;
      cfg["steps"] = st_steps;
      cfg["seed"] = st_seed;
      cfg["constants"] = constants_json(st_flags.k);
      json j;
      j["meta"] = meta_block("stress", cfg);
      j["ratio"] = r.ratio;
      j["best_alpha"] = std::vector<double>(r.best_alpha.entries().begin(),
                                            r.best_alpha.entries().end());
      j["best_beta"] = std::vector<double>(r.best_beta.entries().begin(),
                                           r.best_beta.entries().end());
      j["estimate"] = estimate_json(r.estimate);
      j["bound"] = bound_json(r.bound);
      json trace = json::array();
      for (const auto& [it, val] : r.trace)
        trace.push_back(json{{"iteration", it}, {"ratio", val}});
      j["trace"] = trace;
      emit(j, out_path);
      if (!st_trace_csv.empty()) {
        std::ofstream cs(st_trace_csv);
        if (!cs) throw config_error("cannot open trace csv: " + st_trace_csv);
        cs << "iteration,ratio\n";
        for (const auto& [it, val] : r.trace) {
          char buf[48];
          std::snprintf(buf, sizeof buf, "%d,%.17g\n", it, val);
          cs << buf;
        }
      }
      return 0;
    }

    if (cmd_verify->parsed()) {
      VerifyOutcome v = run_verify(v_catalog, v_quick, v_seed, threads);
      emit(v.report, out_path);
      return v.pass ? 0 : 1;
    }

    if (cmd_report->parsed()) {
      // Aggregate rows with scenario/lhs/rhs fields into one CSV.
      std::ostringstream csv;
      csv << "scenario,lhs,rhs,ratio,pass\n";
      auto add_row = [&](const std::string& id, double lhs, double rhs, bool pass) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%d\n", id.c_str(), lhs, rhs,
                      rhs > 0 ? lhs / rhs : 0.0, pass ? 1 : 0);
        csv << buf;
      };
      for (const auto& path : rp_inputs) {
        std::ifstream in(path);
        if (!in) throw config_error("cannot open report input: " + path);
        json j = json::parse(in);
        if (j.contains("rows"))
          for (const auto& r : j["rows"])
            add_row(r["scenario"].get<std::string>() + ":" +
                        r["theorem"].get<std::string>(),
                    r["lhs"].get<double>(), r["rhs_calibrated"].get<double>(),
                    r["pass"].get<bool>());
        if (j.contains("checks"))
          for (const auto& c : j["checks"])
            add_row(c["id"].get<std::string>(), c["lhs"].get<double>(),
                    c["rhs"].get<double>(), c["pass"].get<bool>());
        if (j.contains("scenario") && j["scenario"].contains("steps"))
          for (const auto& c : j["scenario"]["steps"])
            add_row(j["scenario"]["id"].get<std::string>() + ":" +
                        c["id"].get<std::string>(),
                    c["lhs"].get<double>(), c["rhs"].get<double>(),
                    c["pass"].get<bool>());
      }
      if (out_path.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream os(out_path, std::ios::binary);
        if (!os) throw config_error("cannot open output file: " + out_path);
        os << csv.str();
      }
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const config_error& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const capability_error& e) {
    std::cerr << "error: capability: " << e.what() << "\n";
    return 3;
  } catch (const resolution_error& e) {
    std::cerr << "error: resolution: " << e.what() << "\n";
    return 4;
  } catch (const numeric_error& e) {
    std::cerr << "error: numeric: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
