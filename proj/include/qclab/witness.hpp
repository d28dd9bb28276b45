#pragma once

#include <string>
#include <vector>

#include "qclab/chain.hpp"

namespace qclab {

/// Smooth 1-periodic test displacement.
struct Witness {
  std::string name;
  PeriodicFunction function;
};

/// sin(2 pi x + 0.3): curvature is nonzero at every default interface.
Witness default_witness();

/// Known names: sin_phase (default), sin, cos2, bump.
Witness witness_by_name(const std::string& name);
std::vector<std::string> witness_names();

}  // namespace qclab
