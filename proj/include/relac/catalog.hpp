#ifndef RELAC_CATALOG_HPP
#define RELAC_CATALOG_HPP

#include <string>
#include <vector>

#include "relac/bounds.hpp"
#include "relac/coefficients.hpp"
#include "relac/distribution.hpp"
#include "relac/json_io.hpp"
#include "relac/sodin.hpp"

namespace relac {

// One dominance scenario from the data catalog: a law, a coefficient pair,
// and the theorems whose right-hand sides it exercises.
struct CatalogScenario {
  std::string id;
  DistributionSpec spec = DistributionSpec::gaussian(1.0);
  CoefficientVector alpha{std::vector<double>{1.0}};
  CoefficientVector beta{std::vector<double>{1.0}};
  std::vector<TheoremId> theorems;
  bool exact_feasible = false;
  std::uint64_t mc_samples = 200000;
  std::uint64_t seed = 1;
  double ci_level = 0.99;
};

struct SodinScenarioConfig {
  std::string id;
  DistributionSpec spec = DistributionSpec::gaussian(1.0);
  std::size_t n = 8;
  std::uint64_t vector_seed = 1;
  bool alpha_ones = true;  // else random unit
  double epsilon = 0.1;
  double R = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t mc_samples = 200000;
};

struct Catalog {
  std::vector<CatalogScenario> scenarios;
  std::vector<SodinScenarioConfig> sodin_scenarios;
};

Catalog load_catalog(const std::string& path);

// Vector builder shared by the catalog and the CLI: kinds are
// values | ones | arithmetic | random-unit | orthogonal | ones-ratio.
// `relative_to` supplies alpha when beta is defined relative to it.
CoefficientVector build_vector(const json& spec_json,
                               const CoefficientVector* relative_to);

PipelineScenario instantiate_sodin(const SodinScenarioConfig& cfg);

}  // namespace relac

#endif
