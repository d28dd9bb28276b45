#include "qclab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SparseLU>

#include "qclab/detail/parallel.hpp"
#include "qclab/error.hpp"

namespace qclab {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// [[A, 1], [1^T, 0]]: nonsingular exactly when the kernel of A is the
/// constants and 1 is not in its range.
SparseMatrix bordered(const SparseMatrix& a) {
  const auto n = a.rows();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(a.nonZeros() + 2 * n));
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) triplets.emplace_back(it.row(), it.col(), it.value());
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    triplets.emplace_back(i, n, 1.0);
    triplets.emplace_back(n, i, 1.0);
  }
  SparseMatrix b(n + 1, n + 1);
  b.setFromTriplets(triplets.begin(), triplets.end());
  b.makeCompressed();
  return b;
}

Eigen::VectorXd solve_bordered(const SparseMatrix& b, const Eigen::VectorXd& rhs) {
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(b);
  if (lu.info() != Eigen::Success) {
    throw NumericalFailure("equilibrium system is singular beyond the constant kernel: " + lu.lastErrorMessage());
  }
  Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) {
    throw NumericalFailure("equilibrium solve failed (rank deficiency)");
  }
  return x;
}

bool is_symmetric(const LinearChainOperator& op) {
  double scale = 0.0;
  for (const auto& row : op.rows()) scale = std::max(scale, row.abs_sum());
  return symmetry_defect(op) <= 1e-14 * std::max(1.0, scale);
}

/// ||apply_linear(op, u) - f||_inf accumulated in extended precision.
double residual_sup(const LinearChainOperator& op, const PeriodicField& u, const PeriodicField& f) {
  const long n = op.atoms();
  const long double scale = static_cast<long double>(n) * static_cast<long double>(n);
  long double worst = 0.0L;
  for (long i = 1; i <= n; ++i) {
    const auto& row = op.row(i);
    long double s = 0.0L;
    for (std::size_t k = 0; k < row.coefficients.size(); ++k) {
      s += static_cast<long double>(row.coefficients[k]) *
           static_cast<long double>(u(i + row.first_offset + static_cast<long>(k)));
    }
    worst = std::max(worst, std::abs(scale * s - static_cast<long double>(f(i))));
  }
  return static_cast<double>(worst);
}

}  // namespace

PeriodicField left_null_vector(const LinearChainOperator& op) {
  const long n = op.atoms();
  if (is_symmetric(op)) return PeriodicField(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
  // B^T [y; mu] = [0; 1] gives A^T y = 0 with sum(y) = 1 (mu vanishes because
  // A annihilates constants).
  const SparseMatrix bt = SparseMatrix(bordered(op.sparse()).transpose());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  const Eigen::VectorXd x = solve_bordered(bt, rhs);
  return PeriodicField(std::vector<double>(x.data(), x.data() + n));
}

EquilibriumSolution solve_equilibrium(const LinearChainOperator& op, const PeriodicField& f) {
  const long n = op.atoms();
  if (f.size() != n) throw InvalidArgument("right-hand side length differs from operator size");
  for (const auto& row : op.rows()) {
    if (std::abs(row.sum()) > 1e-12 * std::max(1.0, row.abs_sum())) {
      throw InvalidArgument("equilibrium solve needs an operator that annihilates constants");
    }
  }

  const PeriodicField y = left_null_vector(op);
  double yf = 0.0;
  double yy = 0.0;
  for (long i = 1; i <= n; ++i) {
    yf += y(i) * f(i);
    yy += y(i) * y(i);
  }
  const double removed = yf / yy;
  PeriodicField projected = f;
  for (long i = 1; i <= n; ++i) projected.at(i) -= removed * y(i);

  const double eps2 = op.config().epsilon() * op.config().epsilon();
  Eigen::VectorXd rhs(n + 1);
  for (long i = 1; i <= n; ++i) rhs(i - 1) = eps2 * projected(i);
  rhs(n) = 0.0;
  const Eigen::VectorXd x = solve_bordered(bordered(op.sparse()), rhs);

  PeriodicField u(std::vector<double>(x.data(), x.data() + n));
  const double mean = u.mean();
  for (double& v : u.values()) v -= mean;

  EquilibriumSolution solution{std::move(u), 0.0, removed};
  solution.residual = residual_sup(op, solution.displacement, projected);
  const double f_scale = lp_norm(f, NormOrder::infinity());
  if (solution.residual > 1e-6 * f_scale) {
    throw NumericalFailure("equilibrium residual " + std::to_string(solution.residual) +
                           " indicates a singular operator");
  }
  return solution;
}

std::optional<SlopeFit> ConvergenceTable::fit_for(NormOrder p) const {
  for (const auto& [order, fit] : fits) {
    if (order == p) return fit;
  }
  return std::nullopt;
}

ConvergenceTable convergence_study(const Model& model, const ChainConfig& base, const Witness& witness,
                                   const std::vector<long>& atoms, const std::vector<NormOrder>& orders) {
  for (std::size_t k = 1; k < atoms.size(); ++k) {
    if (atoms[k] <= atoms[k - 1]) throw InvalidArgument("convergence N values must be strictly increasing");
  }
  if (orders.empty()) throw InvalidArgument("convergence study needs at least one norm order");
  const Model reference{ModelKind::atomistic(), {}, model.potential};

  struct Cell {
    std::vector<double> norms;
    ConvergenceCheck check;
  };
  auto run = [&](long n) {
    const ChainConfig config = base.with_atoms(n);
    const auto op = assemble_operator(model, config);
    const auto atomistic = assemble_operator(reference, config);
    const PeriodicField u = sample_field(witness.function, config);
    const PeriodicField rhs = apply(op, u) - apply(atomistic, u);
    const EquilibriumSolution sol = solve_equilibrium(op, rhs);
    // e = u - u_qc = e0 + mean(u); the constant drops out of D e.
    const PeriodicField strain = difference(sol.displacement, 1, 1);

    Cell cell;
    cell.check.atoms = n;
    cell.check.strain_sup = lp_norm(strain, NormOrder::infinity());
    cell.check.force_sup = lp_norm(apply_linear(op, sol.displacement), NormOrder::infinity());
    cell.check.solver_residual = sol.residual;
    cell.check.rhs_sup = lp_norm(rhs, NormOrder::infinity());
    const double eps = config.epsilon();
    for (const auto& p : orders) {
      const double norm = lp_norm(strain, p);
      cell.norms.push_back(norm);
      if (norm < std::pow(eps, p.reciprocal()) * cell.check.strain_sup) cell.check.norm_equivalence_holds = false;
    }
    try {
      const auto strain_form = to_strain_form(op);
      cell.check.strain_bound = strain_form.bound;
      cell.check.strain_bound_holds = cell.check.force_sup <= strain_form.bound / eps * cell.check.strain_sup;
    } catch (const InvalidArgument&) {
      cell.check.strain_bound = std::numeric_limits<double>::quiet_NaN();
    }
    return cell;
  };
  const auto cells = detail::ordered_parallel_map(atoms, run);

  ConvergenceTable table;
  table.model = model.kind.name();
  table.witness = witness.name;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double eps = 1.0 / static_cast<double>(atoms[k]);
    for (std::size_t q = 0; q < orders.size(); ++q) {
      ConvergenceRow row{table.model, atoms[k], eps, orders[q], cells[k].norms[q], std::nullopt};
      if (k > 0) {
        const double prev = cells[k - 1].norms[q];
        const double prev_eps = 1.0 / static_cast<double>(atoms[k - 1]);
        if (prev > 0.0 && row.error_norm > 0.0) {
          row.slope_running = std::log(row.error_norm / prev) / std::log(eps / prev_eps);
        }
      }
      table.rows.push_back(row);
    }
    table.checks.push_back(cells[k].check);
  }
  for (std::size_t q = 0; q < orders.size(); ++q) {
    std::vector<std::pair<double, double>> xy;
    bool positive = true;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const double v = cells[k].norms[q];
      positive = positive && v > 0.0;
      xy.emplace_back(1.0 / static_cast<double>(atoms[k]), v);
    }
    std::optional<SlopeFit> fit;
    if (positive && xy.size() >= 2) fit = fit_slope(xy);
    table.fits.emplace_back(orders[q], fit);
  }
  return table;
}

}  // namespace qclab
