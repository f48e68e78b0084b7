#include "relac/catalog.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "relac/errors.hpp"
#include "relac/rng.hpp"

namespace relac {

namespace {

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw config_error("catalog: unknown key '" + it.key() + "' in " + where);
}

}  // namespace

CoefficientVector build_vector(const json& j, const CoefficientVector* relative_to) {
  if (!j.is_object()) throw config_error("catalog: vector spec must be an object");
  const std::string kind = j.value("kind", "values");
  if (kind == "values") {
    require_keys(j, {"kind", "values"}, "vector");
    if (!j.contains("values")) throw config_error("catalog: vector 'values' missing");
    return CoefficientVector(j["values"].get<std::vector<double>>());
  }
  if (kind == "ones") {
    require_keys(j, {"kind", "n", "scale"}, "vector");
    return ones_vector(j.at("n").get<std::size_t>(), j.value("scale", 1.0));
  }
  if (kind == "arithmetic") {
    require_keys(j, {"kind", "n"}, "vector");
    return arithmetic_vector(j.at("n").get<std::size_t>());
  }
  if (kind == "random-unit") {
    require_keys(j, {"kind", "n", "seed"}, "vector");
    RngStream rng(j.at("seed").get<std::uint64_t>(), 0xa1fa);
    return random_unit_vector(j.at("n").get<std::size_t>(), rng);
  }
  if (kind == "orthogonal") {
    require_keys(j, {"kind", "ratio", "seed"}, "vector");
    if (!relative_to)
      throw config_error("catalog: 'orthogonal' vector needs an alpha to refer to");
    RngStream rng(j.at("seed").get<std::uint64_t>(), 0xbe7a);
    return random_orthogonal_unit(*relative_to, rng)
        .scaled(j.at("ratio").get<double>() * relative_to->norm());
  }
  if (kind == "ones-ratio") {
    require_keys(j, {"kind", "ratio"}, "vector");
    if (!relative_to)
      throw config_error("catalog: 'ones-ratio' vector needs an alpha to refer to");
    const std::size_t n = relative_to->dim();
    const double ratio = j.at("ratio").get<double>();
    const double scale = ratio * relative_to->norm() / std::sqrt(static_cast<double>(n));
    return ones_vector(n, scale);
  }
  throw config_error("catalog: unknown vector kind '" + kind + "'");
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open catalog: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception& e) {
    throw config_error(std::string("catalog: bad json: ") + e.what());
  }
  require_keys(j, {"estimator_defaults", "scenarios", "sodin_scenarios"}, "catalog root");

  std::uint64_t default_samples = 200000;
  double default_ci = 0.99;
  if (j.contains("estimator_defaults")) {
    const auto& d = j["estimator_defaults"];
    require_keys(d, {"mc_samples", "ci_level"}, "estimator_defaults");
    default_samples = d.value("mc_samples", default_samples);
    default_ci = d.value("ci_level", default_ci);
  }

  Catalog cat;
  for (const auto& s : j.value("scenarios", json::array())) {
    require_keys(s,
                 {"id", "dist", "alpha", "beta", "theorems", "mc_samples", "seed",
                  "ci_level", "exact"},
                 "scenario");
    CatalogScenario sc;
    sc.id = s.at("id").get<std::string>();
    sc.spec = DistributionSpec::parse(s.at("dist").get<std::string>());
    sc.alpha = build_vector(s.at("alpha"), nullptr);
    sc.beta = build_vector(s.at("beta"), &sc.alpha);
    for (const auto& t : s.at("theorems"))
      sc.theorems.push_back(theorem_from_name(t.get<std::string>()));
    sc.mc_samples = s.value("mc_samples", default_samples);
    sc.seed = s.value("seed", 1);
    sc.ci_level = s.value("ci_level", default_ci);
    sc.exact_feasible = s.value("exact", false);
    cat.scenarios.push_back(std::move(sc));
  }
  for (const auto& s : j.value("sodin_scenarios", json::array())) {
    require_keys(s,
                 {"id", "dist", "n", "vector_seed", "alpha_ones", "epsilon", "R", "seed",
                  "mc_samples"},
                 "sodin scenario");
    SodinScenarioConfig cfg;
    cfg.id = s.at("id").get<std::string>();
    cfg.spec = DistributionSpec::parse(s.at("dist").get<std::string>());
    cfg.n = s.at("n").get<std::size_t>();
    cfg.vector_seed = s.value("vector_seed", 1);
    cfg.alpha_ones = s.value("alpha_ones", true);
    cfg.epsilon = s.value("epsilon", 0.1);
    cfg.R = s.value("R", 1.0);
    cfg.seed = s.value("seed", 1);
    cfg.mc_samples = s.value("mc_samples", default_samples);
    cat.sodin_scenarios.push_back(std::move(cfg));
  }
  return cat;
}

PipelineScenario instantiate_sodin(const SodinScenarioConfig& cfg) {
  RngStream rng(cfg.vector_seed, 0x50d1);
  CoefficientVector alpha = cfg.alpha_ones
                                ? ones_vector(cfg.n, 1.0 / std::sqrt(double(cfg.n)))
                                : random_unit_vector(cfg.n, rng);
  CoefficientVector beta = random_orthogonal_unit(alpha, rng);
  return make_scenario(cfg.id, cfg.spec, alpha, beta, cfg.epsilon, cfg.R, cfg.seed,
                       cfg.mc_samples);
}

}  // namespace relac
