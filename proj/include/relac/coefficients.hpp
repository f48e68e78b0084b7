#ifndef RELAC_COEFFICIENTS_HPP
#define RELAC_COEFFICIENTS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace relac {

class RngStream;

// A fixed real coefficient vector with its Euclidean norm cached.
class CoefficientVector {
 public:
  explicit CoefficientVector(std::vector<double> entries);

  std::size_t dim() const { return entries_.size(); }
  std::span<const double> entries() const { return entries_; }
  double operator[](std::size_t i) const { return entries_[i]; }
  double norm() const { return norm_; }
  double max_abs() const { return max_abs_; }
  bool is_zero() const { return norm_ == 0.0; }

  CoefficientVector normalized() const;  // throws config_error on the zero vector
  CoefficientVector scaled(double c) const;

 private:
  std::vector<double> entries_;
  double norm_ = 0.0;
  double max_abs_ = 0.0;
};

double dot(const CoefficientVector& a, const CoefficientVector& b);

// Random unit vector (i.i.d. normal entries, normalized).
CoefficientVector random_unit_vector(std::size_t n, RngStream& rng);

// Unit vector orthogonal to alpha (Gram-Schmidt on a random draw).
CoefficientVector random_orthogonal_unit(const CoefficientVector& alpha, RngStream& rng);

CoefficientVector ones_vector(std::size_t n, double scale = 1.0);
CoefficientVector arithmetic_vector(std::size_t n);  // entries 1, 2, ..., n

// One decimal value per line; '#' starts a comment.
CoefficientVector read_vector_file(const std::string& path);

}  // namespace relac

#endif
