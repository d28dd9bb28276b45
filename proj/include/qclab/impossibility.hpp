#pragma once

// The consistency equations for an m x m symmetric interface block and the
// exact weighted-sum certificate showing they have no solution.
//
// Block rows i = 1..m carry three equations each,
//   sum_j (L_ij - La_ij) p(j) = 0   for p(j) = 1, j, j^2,
// over columns j in [1 - reach, m + reach]. Columns left of the block are
// pinned to the continuum row values and columns right of it to the atomistic
// ones. Everything is in L2 units: atomistic row (-1, 0, 2, 0, -1), continuum
// row (-4, 8, -4).

#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qclab/models.hpp"

namespace qclab {

using Rational = boost::multiprecision::cpp_rational;

/// Equations matrix * x + constant = 0, one row per (block row i, moment),
/// at index 3 (i - 1) + moment.
struct ConstraintSystem {
  int width = 0;
  int reach = 2;
  bool symmetric = true;
  /// Block entry (a, b) behind each unknown; a <= b when symmetric.
  std::vector<std::pair<int, int>> unknowns;
  std::vector<std::vector<Rational>> matrix;
  std::vector<Rational> constant;

  std::size_t equations() const noexcept { return matrix.size(); }
  /// Right-hand side of matrix * x = rhs, i.e. -constant.
  std::vector<Rational> rhs() const;
};

/// Rejects m < 1 and reach < 2.
ConstraintSystem build_constraint_system(int width, int reach = 2, bool symmetric = true);

struct Certificate {
  int width = 0;
  /// i^2 on the p = j equation of row i, -i on its p = j^2 equation, 0 on p = 1.
  std::vector<Rational> weights;
  /// weights . constant; the unknowns cancel exactly in weights . matrix.
  Rational value;

  double weight_norm() const;
  /// |value| / ||weights||_2, a lower bound on every residual of the system.
  double residual_lower_bound() const;
};

/// Throws NumericalFailure if the unknown coefficients do not cancel exactly.
Certificate certificate(int width);

struct LeastSquaresResult {
  double residual = 0.0;
  std::vector<double> solution;           ///< one value per unknown
  std::vector<double> residual_vector;    ///< matrix * x + constant
};

/// Least-squares minimum of ||matrix x + constant||_2 (minimum-norm minimizer).
LeastSquaresResult solve_least_squares(const ConstraintSystem& system);

struct MinResidual {
  double residual = 0.0;
  InterfaceStencil argmin;
  std::vector<double> residual_vector;
};

/// Best achievable consistency defect over symmetric m x m blocks.
MinResidual min_residual(int width, int reach = 2);

/// Diagnostic: same minimum with the symmetry constraint dropped (m^2 free
/// entries). Returns the residual and the row-major block.
std::pair<double, std::vector<double>> min_residual_unsymmetric(int width, int reach = 2);

/// The force-based block: continuum rows on the first k = max(2, m/2)
/// local rows, atomistic rows on the rest. It satisfies the unsymmetric
/// system exactly. A continuum row needs i + 2 <= m and an atomistic row
/// needs i >= 3, so m >= 4. Row-major.
std::vector<double> qcf_witness_block(int width);

/// ||matrix x + constant||_2 for an arbitrary assignment of the unknowns.
double residual_of(const ConstraintSystem& system, const std::vector<double>& x);

/// Exact residual vector for a rational assignment of the unknowns.
std::vector<Rational> exact_residual(const ConstraintSystem& system, const std::vector<Rational>& x);

/// Values of the unknowns read from a row-major m x m block.
std::vector<double> unknowns_from_block(const ConstraintSystem& system, const std::vector<double>& block);

}  // namespace qclab
