#ifndef RELAC_LOGCONCAVE_HPP
#define RELAC_LOGCONCAVE_HPP

#include <functional>
#include <string>
#include <vector>

namespace relac {

// A planar density with the grid used for all numerical work on it. The
// evaluator must be a closed form; log-concavity is a caller-supplied
// certificate that verify_levelset rechecks on random segments.
struct PlanarDensity {
  std::function<double(double, double)> p;
  double extent = 6.0;    // grid covers [-extent, extent]^2
  int resolution = 2001;  // cells per axis
  bool isotropic_flag = true;
  std::string name;
};

// Half-peak level set constants: the set L = {p >= p(0,0)/2} must contain
// D(0, 1/9), sit inside D(0, 9*2^16), and the peak must lie in
// [2^-14, 2/(pi (1/9)^2)].
struct LevelsetReport {
  bool contains_a_disk = false;
  bool within_A_disk = false;
  bool peak_in_range = false;
  double measured_a = 0.0;  // inradius of L
  double measured_A = 0.0;  // circumradius of L
  double peak = 0.0;
  double p00 = 0.0;
  double total_mass = 0.0;
  double mean_x = 0.0, mean_y = 0.0;
  double cov_xx = 0.0, cov_yy = 0.0, cov_xy = 0.0;
  bool isotropy_ok = false;
  bool logconcavity_ok = false;
  int cells_inside = 0;
  double cell = 0.0;  // grid step

  bool all_pass() const {
    return contains_a_disk && within_A_disk && peak_in_range;
  }
};

inline constexpr double kLevelsetInradius = 1.0 / 9.0;
inline constexpr double kLevelsetCircumradius = 9.0 * 65536.0;
inline constexpr double kPeakLower = 1.0 / 16384.0;
// 2 / (pi a^2) with a = 1/9
inline constexpr double kPeakUpper = 162.0 / 3.14159265358979323846;

LevelsetReport verify_levelset(const PlanarDensity& density);

// Mass of the double sector {|u| <= tan(theta)|v|} against the shell bound
// 2 pi theta B A^2 sum k^2 2^-k (= 12 pi theta B A^2) evaluated with the
// measured half-peak constants (A, B) of this density.
struct SectorResult {
  double theta = 0.0;
  double mass = 0.0;
  double bound = 0.0;
  double measured_A = 0.0;
  double measured_B = 0.0;
  bool pass = false;  // mass <= bound
};

SectorResult sector_mass_bound(const PlanarDensity& density, double theta);
// Reuses a precomputed level-set report (for theta sweeps).
SectorResult sector_mass_bound(const PlanarDensity& density, double theta,
                               const LevelsetReport& report);

// Built-in isotropic catalog: "gaussian", "uniform-disk", "laplace-product".
PlanarDensity catalog_density(const std::string& name, int resolution = 2001);
std::vector<std::string> catalog_density_names();

}  // namespace relac

#endif
