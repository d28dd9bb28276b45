#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qclab {

/// Precondition violation by the caller (bad sizes, inadmissible partitions, ...).
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not deliver its postcondition
/// (singular equilibrium system, certificate that fails to cancel).
class NumericalFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration. Carries every problem found, in input order.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
  std::vector<std::string> problems_;
};

}  // namespace qclab
