#include "relac/logconcave.hpp"

#include <algorithm>
#include <cmath>

#include "relac/errors.hpp"
#include "relac/rng.hpp"

namespace relac {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Midpoint log-concavity spot check on random segments inside the support.
bool logconcavity_check(const PlanarDensity& d, int pairs = 10000) {
  RngStream rng(0x10c5ca7eULL);
  int checked = 0;
  while (checked < pairs) {
    const double x1 = rng.uniform(-d.extent, d.extent);
    const double y1 = rng.uniform(-d.extent, d.extent);
    const double x2 = rng.uniform(-d.extent, d.extent);
    const double y2 = rng.uniform(-d.extent, d.extent);
    const double p1 = d.p(x1, y1), p2 = d.p(x2, y2);
    if (p1 <= 0.0 || p2 <= 0.0) continue;
    ++checked;
    const double pm = d.p(0.5 * (x1 + x2), 0.5 * (y1 + y2));
    const double lhs = std::log(pm);
    const double rhs = 0.5 * (std::log(p1) + std::log(p2));
    if (lhs < rhs - 1e-9 * (1.0 + std::abs(rhs))) return false;
  }
  return true;
}

}  // namespace

LevelsetReport verify_levelset(const PlanarDensity& d) {
  if (d.resolution < 3) throw config_error("verify_levelset: resolution too small");
  const int n = d.resolution;
  const double h = 2.0 * d.extent / (n - 1);

  LevelsetReport rep;
  rep.cell = h;
  rep.p00 = d.p(0.0, 0.0);
  if (!(rep.p00 > 0.0))
    throw config_error("verify_levelset: density must be positive at the origin");
  const double half_peak = rep.p00 / 2.0;

  double mass = 0.0, mx = 0.0, my = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  double peak = 0.0;
  double min_out = d.extent * 2.0;  // nearest non-member cell center
  double max_in = 0.0;              // farthest member cell center
  int inside = 0;
  for (int iy = 0; iy < n; ++iy) {
    const double y = -d.extent + iy * h;
    for (int ix = 0; ix < n; ++ix) {
      const double x = -d.extent + ix * h;
      const double v = d.p(x, y);
      const double w = v * h * h;
      mass += w;
      mx += x * w;
      my += y * w;
      sxx += x * x * w;
      syy += y * y * w;
      sxy += x * y * w;
      peak = std::max(peak, v);
      const double r = std::hypot(x, y);
      if (v >= half_peak) {
        ++inside;
        max_in = std::max(max_in, r);
      } else {
        min_out = std::min(min_out, r);
      }
    }
  }
  if (inside < 100)
    throw resolution_error("verify_levelset: grid too coarse to resolve the level set");

  rep.total_mass = mass;
  rep.mean_x = mx;
  rep.mean_y = my;
  rep.cov_xx = sxx;
  rep.cov_yy = syy;
  rep.cov_xy = sxy;
  rep.cells_inside = inside;
  rep.peak = peak;
  rep.measured_a = min_out;
  rep.measured_A = max_in;

  const double diag = h * 1.4142135623730951;
  rep.contains_a_disk = min_out >= kLevelsetInradius - diag;
  rep.within_A_disk = max_in <= kLevelsetCircumradius;
  rep.peak_in_range = peak >= kPeakLower && peak <= kPeakUpper;

  rep.isotropy_ok = std::abs(mass - 1.0) <= 1e-3 && std::abs(mx) <= 1e-2 &&
                    std::abs(my) <= 1e-2 && std::abs(sxx - 1.0) <= 1e-2 &&
                    std::abs(syy - 1.0) <= 1e-2 && std::abs(sxy) <= 1e-2;
  rep.logconcavity_ok = logconcavity_check(d);
  return rep;
}

SectorResult sector_mass_bound(const PlanarDensity& d, double theta,
                               const LevelsetReport& rep) {
  if (!(theta > 0.0 && theta <= kPi / 4.0 + 1e-12))
    throw config_error("sector_mass_bound: theta must be in (0, pi/4]");
  const int n = d.resolution;
  const double h = 2.0 * d.extent / (n - 1);
  const double tan_theta = std::tan(theta);
  double mass = 0.0;
  for (int iy = 0; iy < n; ++iy) {
    const double y = -d.extent + iy * h;
    for (int ix = 0; ix < n; ++ix) {
      const double x = -d.extent + ix * h;
      if (std::abs(x) <= tan_theta * std::abs(y)) mass += d.p(x, y) * h * h;
    }
  }

  SectorResult out;
  out.theta = theta;
  out.mass = mass;
  out.measured_A = rep.measured_A;
  out.measured_B = rep.peak;
  // sum_{k>=1} k^2 2^-k = 6
  out.bound = 2.0 * kPi * theta * rep.peak * rep.measured_A * rep.measured_A * 6.0;
  out.pass = mass <= out.bound;
  return out;
}

SectorResult sector_mass_bound(const PlanarDensity& d, double theta) {
  return sector_mass_bound(d, theta, verify_levelset(d));
}

PlanarDensity catalog_density(const std::string& name, int resolution) {
  PlanarDensity d;
  d.resolution = resolution;
  d.isotropic_flag = true;
  d.name = name;
  if (name == "gaussian") {
    d.extent = 6.5;
    d.p = [](double x, double y) {
      return std::exp(-0.5 * (x * x + y * y)) / (2.0 * kPi);
    };
    return d;
  }
  if (name == "uniform-disk") {
    // Radius 2 gives identity covariance; density 1/(4 pi).
    d.extent = 2.5;
    d.p = [](double x, double y) {
      return (x * x + y * y <= 4.0) ? 1.0 / (4.0 * kPi) : 0.0;
    };
    return d;
  }
  if (name == "laplace-product") {
    // Product of two centered Laplace(1/sqrt2) coordinates: unit variance each.
    d.extent = 12.0;
    d.p = [](double x, double y) {
      const double b = 0.7071067811865475244;
      return std::exp(-(std::abs(x) + std::abs(y)) / b) / (4.0 * b * b);
    };
    return d;
  }
  throw config_error("unknown catalog density: '" + name + "'");
}

std::vector<std::string> catalog_density_names() {
  return {"gaussian", "uniform-disk", "laplace-product"};
}

}  // namespace relac
