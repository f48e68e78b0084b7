#include "relac/coefficients.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "relac/errors.hpp"
#include "relac/rng.hpp"

namespace relac {

CoefficientVector::CoefficientVector(std::vector<double> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw config_error("coefficient vector must be non-empty");
  long double s = 0.0L;
  for (double v : entries_) {
    if (!std::isfinite(v)) throw config_error("coefficient vector entries must be finite");
    s += static_cast<long double>(v) * v;
    max_abs_ = std::max(max_abs_, std::abs(v));
  }
  norm_ = static_cast<double>(std::sqrt(s));
}

CoefficientVector CoefficientVector::normalized() const {
  if (norm_ == 0.0) throw config_error("cannot normalize the zero vector");
  return scaled(1.0 / norm_);
}

CoefficientVector CoefficientVector::scaled(double c) const {
  std::vector<double> e(entries_);
  for (double& v : e) v *= c;
  return CoefficientVector(std::move(e));
}

double dot(const CoefficientVector& a, const CoefficientVector& b) {
  if (a.dim() != b.dim()) throw config_error("dimension mismatch in dot product");
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.dim(); ++i)
    s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s);
}

CoefficientVector random_unit_vector(std::size_t n, RngStream& rng) {
  if (n == 0) throw config_error("random_unit_vector: n must be positive");
  std::vector<double> e(n);
  for (;;) {
    for (auto& v : e) v = rng.normal();
    CoefficientVector c(e);
    if (c.norm() > 1e-8) return c.normalized();
  }
}

CoefficientVector random_orthogonal_unit(const CoefficientVector& alpha, RngStream& rng) {
  if (alpha.dim() < 2) throw config_error("orthogonal complement needs dimension >= 2");
  const CoefficientVector a = alpha.normalized();
  for (;;) {
    CoefficientVector g = random_unit_vector(alpha.dim(), rng);
    const double proj = dot(g, a);
    std::vector<double> e(g.entries().begin(), g.entries().end());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= proj * a[i];
    CoefficientVector c(e);
    if (c.norm() > 1e-6) return c.normalized();
  }
}

CoefficientVector ones_vector(std::size_t n, double scale) {
  if (n == 0) throw config_error("ones_vector: n must be positive");
  return CoefficientVector(std::vector<double>(n, scale));
}

CoefficientVector arithmetic_vector(std::size_t n) {
  if (n == 0) throw config_error("arithmetic_vector: n must be positive");
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<double>(i + 1);
  return CoefficientVector(std::move(e));
}

CoefficientVector read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open vector file: " + path);
  std::vector<double> e;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double v;
    if (ss >> v) e.push_back(v);
  }
  if (e.empty()) throw config_error("vector file is empty: " + path);
  return CoefficientVector(std::move(e));
}

}  // namespace relac
