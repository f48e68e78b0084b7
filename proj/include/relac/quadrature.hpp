#ifndef RELAC_QUADRATURE_HPP
#define RELAC_QUADRATURE_HPP

#include <functional>

namespace relac {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 48;
  int initial_panels = 16;
};

// Adaptive Simpson on [a, b]. Throws numeric_error if the tolerance cannot be
// met within max_depth.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

// Integral over the whole line of a function decaying at infinity: the domain
// is grown by doubling until the boundary contribution is negligible.
double integrate_line(const std::function<double(double)>& f, double start_radius,
                      const QuadratureOptions& opt = {});

// Radius r >= start with |f| < cutoff on a coarse probe beyond r; used to
// truncate integrals of rapidly decaying integrands.
double decay_radius(const std::function<double(double)>& f, double start, double cutoff);

// Trapezoid rule in long double for entire integrands against the e^{-x^2}
// weight; geometrically convergent in the step, immune to the cancellation
// that defeats adaptive rules at tiny magnitudes.
long double gauss_weight_trapezoid(const std::function<long double(long double)>& f,
                                   long double x_max = 8.0L, long double step = 0.05L);

}  // namespace relac

#endif
