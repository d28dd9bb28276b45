#pragma once

// Energies and linearized force operators of the atomistic, continuum and
// coupled chain models.
//
// Operators are stored in eps^2-scaled units: a row holds the integer-like
// coefficients c_o and application computes (L u)_i = N^2 sum_o c_o u_{i+o}
// plus the affine ghost term. The linear part is (1/eps) times the energy
// Hessian and the ghost field is (1/eps) times the energy gradient at u = 0,
// which makes the atomistic interior row (-1, -1, 4, -1, -1) for unit moduli.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qclab/chain.hpp"
#include "qclab/partition.hpp"
#include "qclab/potentials.hpp"

namespace qclab {

/// Symmetric m x m block of second-neighbour coefficients (L2 units) on the
/// interface rows and columns. Local indices run 1..m from the continuum side.
class InterfaceStencil {
public:
  /// Row-major m*m entries; must be exactly symmetric.
  InterfaceStencil(int width, std::vector<double> block);
  /// Builds the block from the upper triangle (a <= b), row by row.
  static InterfaceStencil from_upper(int width, const std::vector<double>& upper);

  int width() const noexcept { return width_; }
  double operator()(int i, int j) const noexcept {
    return block_[static_cast<std::size_t>((i - 1) * width_ + (j - 1))];
  }
  const std::vector<double>& entries() const noexcept { return block_; }

private:
  int width_;
  std::vector<double> block_;
};

enum class ModelFamily { Atomistic, Continuum, Qce, Qnl, Qcf, Custom };

class ModelKind {
public:
  static ModelKind atomistic() { return ModelKind(ModelFamily::Atomistic); }
  static ModelKind continuum() { return ModelKind(ModelFamily::Continuum); }
  static ModelKind qce() { return ModelKind(ModelFamily::Qce); }
  static ModelKind qnl() { return ModelKind(ModelFamily::Qnl); }
  static ModelKind qcf() { return ModelKind(ModelFamily::Qcf); }
  static ModelKind custom(InterfaceStencil stencil);

  ModelFamily family() const noexcept { return family_; }
  /// Present only for Custom.
  const std::optional<InterfaceStencil>& stencil() const noexcept { return stencil_; }

  bool is_coupled() const noexcept;
  bool is_energy_based() const noexcept;
  std::string name() const;

private:
  explicit ModelKind(ModelFamily family) : family_(family) {}
  ModelFamily family_;
  std::optional<InterfaceStencil> stencil_;
};

/// A model family together with its region decomposition and potential.
/// The partition is ignored by Atomistic and Continuum.
struct Model {
  ModelKind kind = ModelKind::atomistic();
  RegionPartition partition;
  PairPotential potential;
};

/// phi'(rF) and phi''(rF) for shells r = 1..R: everything the linearized
/// operators depend on.
struct Linearization {
  std::vector<double> slope;
  std::vector<double> curvature;

  static Linearization of(const PairPotential& potential, const ChainConfig& config);
};

/// Local row stencil: coefficient k sits at offset first_offset + k.
struct Stencil {
  int first_offset = 0;
  std::vector<double> coefficients;

  int last_offset() const noexcept { return first_offset + static_cast<int>(coefficients.size()) - 1; }
  double at(int offset) const noexcept;
  double sum() const noexcept;
  double abs_sum() const noexcept;

  friend bool operator==(const Stencil&, const Stencil&) = default;
};

class LinearChainOperator {
public:
  LinearChainOperator(ChainConfig config, std::vector<Stencil> rows, PeriodicField ghost);

  const ChainConfig& config() const noexcept { return config_; }
  long atoms() const noexcept { return config_.atoms(); }
  /// Periodic, 1-based.
  const Stencil& row(long i) const noexcept { return rows_[ghost_.wrap(i)]; }
  const std::vector<Stencil>& rows() const noexcept { return rows_; }
  const PeriodicField& ghost() const noexcept { return ghost_; }

  /// Largest |offset| over all rows.
  int max_reach() const noexcept;

  /// Linear part in eps^2 units with periodic wrap.
  Eigen::SparseMatrix<double> sparse() const;
  Eigen::MatrixXd dense() const;

private:
  ChainConfig config_;
  std::vector<Stencil> rows_;
  PeriodicField ghost_;
};

/// Strain form L u = Ltilde D u of a shift-invariant operator. Row i holds the
/// coefficients t_q of eps * Ltilde, so (L u)_i = (1/eps) sum_q t_q (Du)_{i+q}.
struct StrainFormOperator {
  ChainConfig config;
  std::vector<Stencil> rows;
  /// sup over rows of sum_q |t_q|; N-independent for a fixed model family.
  double bound = 0.0;
};

/// Scaled total energy sum eps * w * phi(.) over the model's bonds.
/// Rejects QCF and Custom (no energy).
double total_energy(const Model& model, const ChainConfig& config, const PeriodicField& u);

LinearChainOperator assemble_operator(const Model& model, const ChainConfig& config);
/// Same, with the moduli supplied directly instead of derived from the
/// potential.
LinearChainOperator assemble_operator(const Model& model, const ChainConfig& config,
                                      const Linearization& linearization);

/// (1/eps^2) sum_o c_o u_{i+o} + ghost_i.
PeriodicField apply(const LinearChainOperator& op, const PeriodicField& u);
/// Same without the ghost term.
PeriodicField apply_linear(const LinearChainOperator& op, const PeriodicField& u);

/// Rejects operators with nonzero row sums or a nonzero ghost field.
StrainFormOperator to_strain_form(const LinearChainOperator& op);
/// (1/eps) sum_q t_q s_{i+q} for a strain field s = D u.
PeriodicField apply_strain(const StrainFormOperator& op, const PeriodicField& strain);

/// Largest deviation (eps^2 units) between the assembled linear part and a
/// finite-difference Hessian of total_energy scaled by 1/eps. `step` is the
/// displacement increment; the second derivatives use a fourth-order
/// five-point rule along e_k and e_k +- e_l. Energy-based models only.
double hessian_consistency_check(const Model& model, const ChainConfig& config, double step = 1e-5);

/// max |L_ij - L_ji| over the linear part, in eps^2 units.
double symmetry_defect(const LinearChainOperator& op);

}  // namespace qclab
