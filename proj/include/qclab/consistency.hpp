#pragma once

// Consistency of an operator against the atomistic one: local polynomial
// moment tests, ghost forces, and smooth-field residual sweeps.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qclab/fit.hpp"
#include "qclab/models.hpp"
#include "qclab/witness.hpp"

namespace qclab {

/// Per-row residuals sum_j (L - L_ref)_ij p(j) for p = 1, j, j^2 in eps^2
/// units, with j = i + offset - origin taken unwrapped on each row's local
/// stencil.
struct MomentReport {
  std::vector<std::array<double, 3>> residuals;  // row i = 1..N at index i-1

  double max_abs(int moment) const;
  /// Rows (1-based) where |residual| > tolerance for the given moment.
  std::vector<long> rows_above(int moment, double tolerance) const;
};

/// Rejects operators of different size and chains too short for the
/// unwrapped moments: N >= 4 (reach + 2) with reach the larger stencil reach.
MomentReport moment_residuals(const LinearChainOperator& op, const LinearChainOperator& reference, long origin = 0);

/// Same residuals in exact rational arithmetic (coefficients are converted
/// exactly from their binary values), rounded to double at the end.
MomentReport moment_residuals_exact(const LinearChainOperator& op, const LinearChainOperator& reference,
                                    long origin = 0);

struct GhostForceReport {
  PeriodicField field;
  double sup_norm = 0.0;
};

/// Scaled force of the model at u = 0.
GhostForceReport ghost_force(const Model& model, const ChainConfig& config);

struct SweepPoint {
  long atoms = 0;
  double epsilon = 0.0;
  double residual = 0.0;
};

struct SweepResult {
  std::string model;
  std::vector<SweepPoint> points;
  /// Slope of log(residual) against log(eps); absent when some residual is 0.
  std::optional<SlopeFit> fit;
};

/// ||apply(L_model, u) - apply(L_atomistic, u)||_inf for u sampled from the
/// witness at every N in `atoms` (strictly increasing), with a log-log fit.
SweepResult consistency_sweep(const Model& model, const ChainConfig& base, const Witness& witness,
                              const std::vector<long>& atoms);

}  // namespace qclab
