#pragma once

#include <stdexcept>
#include <string>

namespace pulsejitter {

// Argument outside the physical domain of an operation (negative loss, zero dispersion, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid scenario or run configuration (bad grid, malformed file, step too coarse).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite field encountered during propagation.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double z_m)
      : std::runtime_error(what + " at z = " + std::to_string(z_m) + " m"), z_m_(z_m) {}

  double z_m() const noexcept { return z_m_; }

 private:
  double z_m_;
};

}  // namespace pulsejitter
