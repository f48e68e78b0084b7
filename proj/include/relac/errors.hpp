#ifndef RELAC_ERRORS_HPP
#define RELAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relac {

// Error taxonomy mirrored by the CLI exit codes:
//   config_error -> 2, capability_error -> 3, resolution/numeric -> 4,
//   assertion failures in verification suites -> 1.

// Bad input: malformed config, domain violations (zero vector, negative gamma, ...).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested functional the distribution cannot provide (divergent MGF,
// sampling an unsupported family, exact enumeration past the size limit).
struct capability_error : std::runtime_error {
  explicit capability_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Grid too coarse to resolve the object under study.
struct resolution_error : std::runtime_error {
  explicit resolution_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature non-convergence and similar numeric breakdowns.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input density fails a shape precondition (e.g. not unimodal on the grid).
struct shape_error : config_error {
  explicit shape_error(const std::string& msg) : config_error(msg) {}
};

}  // namespace relac

#endif
