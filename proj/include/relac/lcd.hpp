#ifndef RELAC_LCD_HPP
#define RELAC_LCD_HPP

#include "relac/coefficients.hpp"

namespace relac {

// Result of the essential least-common-denominator search: the smallest
// theta > 0 with dist(theta*alpha, Z^n) <= min(gamma, |theta*alpha|/10),
// located within tol, or `capped` when nothing qualifies below search_cap.
struct LcdResult {
  double theta_star = 0.0;
  double achieved_dist = 0.0;
  double gamma = 0.0;
  bool capped = false;
  double search_cap = 0.0;
};

// Euclidean distance from theta*alpha to the integer lattice. Half-integer
// coordinates round to even; the distance itself is tie-invariant.
double dist_to_lattice(double theta, const CoefficientVector& alpha);

double default_search_cap(const CoefficientVector& alpha);

// Leftmost admissible theta in (0, search_cap] by Lipschitz-pruned interval
// search (the admissibility gap function has Lipschitz constant 1.1*|alpha|,
// so subintervals whose endpoint values are large enough cannot contain
// admissible points and are discarded whole), refined by bisection to tol.
// search_cap <= 0 selects the default cap.
LcdResult lcd(const CoefficientVector& alpha, double gamma, double search_cap = 0.0,
              double tol = 1e-9);

// On the unit-normalized vector, as the theorem statements use it.
LcdResult lcd_normalized(const CoefficientVector& alpha, double gamma,
                         double search_cap = 0.0, double tol = 1e-9);

}  // namespace relac

#endif
