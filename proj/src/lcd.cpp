#include "relac/lcd.hpp"

#include <cmath>
#include <deque>

#include "relac/errors.hpp"

namespace relac {

double dist_to_lattice(double theta, const CoefficientVector& alpha) {
  if (!(theta > 0.0)) throw config_error("dist_to_lattice: theta must be positive");
  long double s = 0.0L;
  for (double a : alpha.entries()) {
    const double r = std::remainder(theta * a, 1.0);  // ties to even
    s += static_cast<long double>(r) * r;
  }
  return static_cast<double>(std::sqrt(s));
}

double default_search_cap(const CoefficientVector& alpha) {
  if (alpha.is_zero()) throw config_error("lcd: zero vector");
  return 1e3 * std::max<double>(1.0, static_cast<double>(alpha.dim())) / alpha.norm();
}

namespace {

// Admissibility gap: g(theta) <= 0 iff theta qualifies.
inline double gap(double theta, const CoefficientVector& alpha, double gamma) {
  return dist_to_lattice(theta, alpha) -
         std::min(gamma, 0.1 * theta * alpha.norm());
}

}  // namespace

LcdResult lcd(const CoefficientVector& alpha, double gamma, double search_cap,
              double tol) {
  if (alpha.is_zero()) throw config_error("lcd: zero vector");
  if (!(gamma > 0.0)) throw config_error("lcd: gamma must be positive");
  if (!(tol > 0.0)) throw config_error("lcd: tol must be positive");
  if (search_cap == 0.0) search_cap = default_search_cap(alpha);
  if (!(search_cap > 0.0)) throw config_error("lcd: search_cap must be positive");

  const double norm = alpha.norm();
  const double lipschitz = 1.1 * norm;  // dist is norm-Lipschitz, threshold norm/10
  // Smallest interval width the search resolves; admissible components
  // narrower than this (in theta) can be missed, consistent with locating
  // the infimum to tol.
  const double floor_width = std::min(tol, tol / norm);

  LcdResult res;
  res.gamma = gamma;
  res.search_cap = search_cap;

  struct Seg {
    double a, b, ga, gb;
  };
  // Work left to right so the first admissible point found is the leftmost.
  std::deque<Seg> work;
  {
    // Initial panels no wider than the scale on which the gap can swing sign.
    const double panel = std::max(floor_width, 0.5 / std::max(1.0, lipschitz));
    double x = panel * 0.5;  // theta must stay positive
    double gx = gap(x, alpha, gamma);
    double lo = x;
    while (lo < search_cap) {
      const double hi = std::min(lo + panel, search_cap);
      const double ghi = gap(hi, alpha, gamma);
      work.push_back({lo, hi, gx, ghi});
      lo = hi;
      gx = ghi;
    }
  }

  // Everything below the first probe is inadmissible: admissibility forces
  // |theta*alpha| >= 10/11, and the probe starts below that.
  double left_certified = 0.0;
  double found = -1.0;
  while (!work.empty()) {
    const Seg s = work.front();
    work.pop_front();
    if (s.ga <= 0.0) {
      found = s.a;
      break;
    }
    if (s.gb <= 0.0 && s.b - s.a <= floor_width) {
      left_certified = s.a;
      found = s.b;
      break;
    }
    // Lower envelope of g on [a,b] under the Lipschitz bound.
    const double min_possible = 0.5 * (s.ga + s.gb) - 0.5 * lipschitz * (s.b - s.a);
    if (min_possible > 0.0 || s.b - s.a <= floor_width) {
      // Certified inadmissible, or a sub-floor graze below resolution.
      left_certified = s.b;
      continue;
    }
    const double m = 0.5 * (s.a + s.b);
    const double gm = gap(m, alpha, gamma);
    // Push right half first so the left half is processed first.
    work.push_front({m, s.b, gm, s.gb});
    work.push_front({s.a, m, s.ga, gm});
  }

  if (found < 0.0) {
    res.capped = true;
    res.theta_star = search_cap;
    res.achieved_dist = dist_to_lattice(search_cap, alpha);
    return res;
  }

  // Bisect the left edge of the admissible region inside
  // [left_certified, found]; gap > 0 at left_certified, <= 0 at found.
  double lo = left_certified, hi = found;
  if (lo <= 0.0 || gap(lo, alpha, gamma) <= 0.0) {
    res.theta_star = std::max(lo, floor_width);
  } else {
    while (hi - lo > 0.5 * tol) {
      const double m = 0.5 * (lo + hi);
      if (gap(m, alpha, gamma) <= 0.0)
        hi = m;
      else
        lo = m;
    }
    res.theta_star = hi;
  }
  res.achieved_dist = dist_to_lattice(res.theta_star, alpha);
  return res;
}

LcdResult lcd_normalized(const CoefficientVector& alpha, double gamma, double search_cap,
                         double tol) {
  return lcd(alpha.normalized(), gamma, search_cap, tol);
}

}  // namespace relac
