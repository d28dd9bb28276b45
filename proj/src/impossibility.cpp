#include "qclab/impossibility.hpp"

#include <cmath>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "qclab/error.hpp"

namespace qclab {

namespace {

int atomistic_entry(int i, int j) {
  const int d = j - i;
  if (d == 0) return 2;
  if (d == 2 || d == -2) return -1;
  return 0;
}

int continuum_entry(int i, int j) {
  const int d = j - i;
  if (d == 0) return 8;
  if (d == 1 || d == -1) return -4;
  return 0;
}

Rational moment(int j, int power) {
  Rational v = 1;
  for (int k = 0; k < power; ++k) v *= j;
  return v;
}

Eigen::MatrixXd to_dense(const ConstraintSystem& system) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(system.equations()), static_cast<Eigen::Index>(system.unknowns.size()));
  for (std::size_t r = 0; r < system.equations(); ++r) {
    for (std::size_t c = 0; c < system.unknowns.size(); ++c) {
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = system.matrix[r][c].convert_to<double>();
    }
  }
  return a;
}

Eigen::VectorXd constant_vector(const ConstraintSystem& system) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(system.equations()));
  for (std::size_t r = 0; r < system.equations(); ++r) {
    c(static_cast<Eigen::Index>(r)) = system.constant[r].convert_to<double>();
  }
  return c;
}

}  // namespace

std::vector<Rational> ConstraintSystem::rhs() const {
  std::vector<Rational> out;
  out.reserve(constant.size());
  for (const auto& c : constant) out.push_back(-c);
  return out;
}

ConstraintSystem build_constraint_system(int width, int reach, bool symmetric) {
  if (width < 1) throw InvalidArgument("interface width m must be at least 1, got " + std::to_string(width));
  if (reach < 2) throw InvalidArgument("reach must be at least 2 (the atomistic stencil range)");
  const int m = width;

  ConstraintSystem system;
  system.width = m;
  system.reach = reach;
  system.symmetric = symmetric;
  std::map<std::pair<int, int>, std::size_t> index;
  for (int a = 1; a <= m; ++a) {
    for (int b = symmetric ? a : 1; b <= m; ++b) {
      index[{a, b}] = system.unknowns.size();
      system.unknowns.emplace_back(a, b);
    }
  }

  for (int i = 1; i <= m; ++i) {
    for (int power = 0; power <= 2; ++power) {
      std::vector<Rational> row(system.unknowns.size(), Rational(0));
      Rational constant = 0;
      for (int j = 1 - reach; j <= m + reach; ++j) {
        const Rational p = moment(j, power);
        const int reference = atomistic_entry(i, j);
        if (j < 1) {
          constant += (continuum_entry(i, j) - reference) * p;
        } else if (j > m) {
          // Pinned to the atomistic value: no contribution.
        } else {
          const auto key = symmetric ? std::pair{std::min(i, j), std::max(i, j)} : std::pair{i, j};
          row[index.at(key)] += p;
          constant -= reference * p;
        }
      }
      system.matrix.push_back(std::move(row));
      system.constant.push_back(constant);
    }
  }
  return system;
}

double Certificate::weight_norm() const {
  double s = 0.0;
  for (const auto& w : weights) {
    const double v = w.convert_to<double>();
    s += v * v;
  }
  return std::sqrt(s);
}

double Certificate::residual_lower_bound() const {
  return std::abs(value.convert_to<double>()) / weight_norm();
}

Certificate certificate(int width) {
  const ConstraintSystem system = build_constraint_system(width);
  Certificate cert;
  cert.width = width;
  cert.weights.assign(system.equations(), Rational(0));
  for (int i = 1; i <= width; ++i) {
    const auto base = static_cast<std::size_t>(3 * (i - 1));
    cert.weights[base + 1] = Rational(i * i);
    cert.weights[base + 2] = Rational(-i);
  }
  for (std::size_t c = 0; c < system.unknowns.size(); ++c) {
    Rational combination = 0;
    for (std::size_t r = 0; r < system.equations(); ++r) combination += cert.weights[r] * system.matrix[r][c];
    if (combination != 0) {
      const auto [a, b] = system.unknowns[c];
      throw NumericalFailure("certificate does not cancel unknown (" + std::to_string(a) + "," + std::to_string(b) +
                             "): coefficient " + combination.str());
    }
  }
  cert.value = 0;
  for (std::size_t r = 0; r < system.equations(); ++r) cert.value += cert.weights[r] * system.constant[r];
  return cert;
}

LeastSquaresResult solve_least_squares(const ConstraintSystem& system) {
  const Eigen::MatrixXd a = to_dense(system);
  const Eigen::VectorXd c = constant_vector(system);
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  const Eigen::VectorXd x = cod.solve(-c);
  const Eigen::VectorXd r = a * x + c;
  return {r.norm(), std::vector<double>(x.data(), x.data() + x.size()),
          std::vector<double>(r.data(), r.data() + r.size())};
}

MinResidual min_residual(int width, int reach) {
  const ConstraintSystem system = build_constraint_system(width, reach, true);
  LeastSquaresResult ls = solve_least_squares(system);
  return {ls.residual, InterfaceStencil::from_upper(width, ls.solution), std::move(ls.residual_vector)};
}

std::pair<double, std::vector<double>> min_residual_unsymmetric(int width, int reach) {
  const ConstraintSystem system = build_constraint_system(width, reach, false);
  LeastSquaresResult ls = solve_least_squares(system);
  return {ls.residual, std::move(ls.solution)};
}

std::vector<double> qcf_witness_block(int width) {
  if (width < 4) throw InvalidArgument("the force-based witness needs m >= 4");
  const int m = width;
  const int continuum_rows = std::max(2, m / 2);
  std::vector<double> block(static_cast<std::size_t>(m * m), 0.0);
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      const int v = i <= continuum_rows ? continuum_entry(i, j) : atomistic_entry(i, j);
      block[static_cast<std::size_t>((i - 1) * m + (j - 1))] = v;
    }
  }
  return block;
}

std::vector<double> unknowns_from_block(const ConstraintSystem& system, const std::vector<double>& block) {
  const int m = system.width;
  if (block.size() != static_cast<std::size_t>(m * m)) throw InvalidArgument("block needs m*m entries");
  std::vector<double> x;
  x.reserve(system.unknowns.size());
  for (const auto& [a, b] : system.unknowns) x.push_back(block[static_cast<std::size_t>((a - 1) * m + (b - 1))]);
  return x;
}

double residual_of(const ConstraintSystem& system, const std::vector<double>& x) {
  if (x.size() != system.unknowns.size()) throw InvalidArgument("assignment size differs from unknown count");
  const Eigen::MatrixXd a = to_dense(system);
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  return (a * xv + constant_vector(system)).norm();
}

std::vector<Rational> exact_residual(const ConstraintSystem& system, const std::vector<Rational>& x) {
  if (x.size() != system.unknowns.size()) throw InvalidArgument("assignment size differs from unknown count");
  std::vector<Rational> out = system.constant;
  for (std::size_t r = 0; r < system.equations(); ++r) {
    for (std::size_t c = 0; c < x.size(); ++c) out[r] += system.matrix[r][c] * x[c];
  }
  return out;
}

}  // namespace qclab
