#pragma once

// Periodic equilibrium solves on the mean-zero subspace and the convergence
// experiments built on them.

#include <optional>
#include <string>
#include <vector>

#include "qclab/fit.hpp"
#include "qclab/models.hpp"
#include "qclab/witness.hpp"

namespace qclab {

struct EquilibriumSolution {
  PeriodicField displacement;  ///< mean-zero
  /// ||apply_linear(op, u) - f_projected||_inf
  double residual = 0.0;
  /// f_projected = f - removed * y with y the left null vector (y = 1 for
  /// symmetric operators, so `removed` is then the mean of f).
  double removed = 0.0;
};

/// Solves apply_linear(op, u) = f_projected for the unique mean-zero u.
/// The operator must annihilate constants; a kernel of dimension larger
/// than one raises NumericalFailure.
EquilibriumSolution solve_equilibrium(const LinearChainOperator& op, const PeriodicField& f);

/// Left null vector of the linear part, normalized to sum 1.
PeriodicField left_null_vector(const LinearChainOperator& op);

struct ConvergenceRow {
  std::string model;
  long atoms = 0;
  double epsilon = 0.0;
  NormOrder p = NormOrder::infinity();
  double error_norm = 0.0;  ///< ||D e||_p
  /// Slope against the previous N for the same p; absent on the first N.
  std::optional<double> slope_running;
};

/// Per-N quantities of the lower-bound argument.
struct ConvergenceCheck {
  long atoms = 0;
  double strain_sup = 0.0;     ///< ||D e||_inf
  double force_sup = 0.0;      ///< ||L e||_inf (linear part)
  double strain_bound = 0.0;   ///< bound_C of the strain form; NaN if none exists
  double solver_residual = 0.0;
  double rhs_sup = 0.0;
  /// ||D e||_p >= eps^(1/p) ||D e||_inf for every requested p.
  bool norm_equivalence_holds = true;
  /// ||L e||_inf <= (bound_C / eps) ||D e||_inf; true when no strain form exists.
  bool strain_bound_holds = true;
};

struct ConvergenceTable {
  std::string model;
  std::string witness;
  std::vector<ConvergenceRow> rows;  ///< ordered by N, then by p as requested
  std::vector<std::pair<NormOrder, std::optional<SlopeFit>>> fits;
  std::vector<ConvergenceCheck> checks;

  std::optional<SlopeFit> fit_for(NormOrder p) const;
};

/// For each N: u = witness samples, u_qc solves L_model u_qc = L_a u (ghost of
/// L_model on the left), e = u - u_qc; records ||D e||_p and fits log-log
/// slopes per p. The error is obtained from L_model e = (L_model - L_a) u,
/// which is the same equation rearranged and keeps e accurate when it is
/// tiny compared with u.
ConvergenceTable convergence_study(const Model& model, const ChainConfig& base, const Witness& witness,
                                   const std::vector<long>& atoms, const std::vector<NormOrder>& orders);

}  // namespace qclab
