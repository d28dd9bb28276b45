#include "qclab/witness.hpp"

#include <cmath>
#include <numbers>

#include "qclab/error.hpp"

namespace qclab {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

Witness default_witness() { return witness_by_name("sin_phase"); }

Witness witness_by_name(const std::string& name) {
  if (name == "sin_phase") return {name, [](double x) { return std::sin(two_pi * x + 0.3); }};
  if (name == "sin") return {name, [](double x) { return std::sin(two_pi * x); }};
  if (name == "cos2") return {name, [](double x) { return std::cos(2.0 * two_pi * x); }};
  if (name == "bump") return {name, [](double x) { return std::exp(std::cos(two_pi * x)); }};
  throw InvalidArgument("unknown witness '" + name + "'");
}

std::vector<std::string> witness_names() { return {"sin_phase", "sin", "cos2", "bump"}; }

}  // namespace qclab
