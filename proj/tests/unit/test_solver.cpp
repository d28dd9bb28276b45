#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "generators.hpp"
#include "qclab/error.hpp"
#include "qclab/fit.hpp"
#include "qclab/solver.hpp"

using namespace qclab;

namespace {

Model make(ModelKind kind) {
  Model model;
  model.kind = std::move(kind);
  model.partition.atomistic = {{0.25, 0.75}};
  return model;
}

std::vector<long> powers(int lo, int hi) {
  std::vector<long> out;
  for (int k = lo; k <= hi; ++k) out.push_back(1L << k);
  return out;
}

const std::vector<NormOrder> kOrders{NormOrder::finite(1), NormOrder::finite(2), NormOrder::infinity()};

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("zero load") {
    for (const auto& kind : {ModelKind::atomistic(), ModelKind::qnl(), ModelKind::qcf()}) {
      const auto op = assemble_operator(make(kind), ChainConfig(64, 1.2));
      const auto sol = solve_equilibrium(op, PeriodicField::zeros(64));
      for (double v : sol.displacement.values()) CHECK(v == 0.0);
    }
  }

  TEST_CASE("recovers a mean-zero field from its load") {
    for (const auto& kind : {ModelKind::atomistic(), ModelKind::continuum(), ModelKind::qnl(), ModelKind::qcf()}) {
      for (long n : {32L, 128L, 512L}) {
        const auto op = assemble_operator(make(kind), ChainConfig(n, 1.2));
        const PeriodicField v = testing::random_mean_zero(n);
        const auto sol = solve_equilibrium(op, apply_linear(op, v));
        for (long i = 1; i <= n; ++i) CHECK(std::abs(sol.displacement(i) - v(i)) <= 1e-10);
        CHECK(std::abs(sol.removed) <= 1e-6);
      }
    }
  }

  TEST_CASE("agrees with a dense factorization") {
    const long n = 1024;
    const auto op = assemble_operator(make(ModelKind::atomistic()), ChainConfig(n, 1.2));
    const auto f = sample_field([](double x) { return std::exp(std::sin(2 * std::numbers::pi * x)) + x; },
                                ChainConfig(n, 1.2));
    const auto sol = solve_equilibrium(op, f);

    // Dense oracle: minimum-norm solution of A u = eps^2 (f - mean f).
    const Eigen::MatrixXd a = op.dense();
    Eigen::VectorXd rhs(n);
    for (long i = 1; i <= n; ++i) rhs(i - 1) = (f(i) - f.mean()) / static_cast<double>(n * n);
    const Eigen::VectorXd u = a.completeOrthogonalDecomposition().solve(rhs);
    for (long i = 1; i <= n; ++i) CHECK(std::abs(sol.displacement(i) - u(i - 1)) <= 1e-9);
  }

  TEST_CASE("property: solutions are mean-zero with small residuals") {
    for (int trial = 0; trial < 40; ++trial) {
      const long n = 16 * testing::uniform_int(2, 40);
      const ModelKind kinds[] = {ModelKind::atomistic(), ModelKind::continuum(), ModelKind::qce(), ModelKind::qnl(),
                                 ModelKind::qcf()};
      const auto& kind = kinds[trial % 5];
      const auto op = assemble_operator(make(kind), ChainConfig(n, 1.2));
      const PeriodicField f = testing::random_field(n, testing::uniform(0.1, 100.0));
      const auto sol = solve_equilibrium(op, f);
      CHECK(std::abs(sol.displacement.mean()) <= 1e-12);
      CHECK(sol.residual <= 1e-10 * lp_norm(f, NormOrder::infinity()));
    }
  }

  TEST_CASE("left null vector") {
    const auto sym = assemble_operator(make(ModelKind::qnl()), ChainConfig(64, 1.2));
    const PeriodicField ones = left_null_vector(sym);
    for (double v : ones.values()) CHECK(v == doctest::Approx(1.0 / 64));

    const auto qcf = assemble_operator(make(ModelKind::qcf()), ChainConfig(64, 1.2));
    const PeriodicField y = left_null_vector(qcf);
    const Eigen::VectorXd yt = qcf.dense().transpose() * Eigen::Map<const Eigen::VectorXd>(y.values().data(), 64);
    CHECK(yt.cwiseAbs().maxCoeff() <= 1e-12);
    double sum = 0.0;
    for (double v : y.values()) sum += v;
    CHECK(sum == doctest::Approx(1.0));

    // Solvability: the projected load of a force-based solve is orthogonal to y.
    const PeriodicField f = testing::random_field(64);
    const auto sol = solve_equilibrium(qcf, f);
    double yf = 0.0;
    for (long i = 1; i <= 64; ++i) yf += y(i) * (f(i) - sol.removed * y(i));
    CHECK(std::abs(yf) <= 1e-12);
  }

  TEST_CASE("singular and mismatched systems") {
    // Second-neighbour springs alone decouple even and odd atoms.
    const ChainConfig chain(64, 1.2);
    const auto split = assemble_operator(make(ModelKind::atomistic()), chain, {{0.0, 0.0}, {0.0, 1.0}});
    CHECK_THROWS_AS(solve_equilibrium(split, testing::random_field(64)), NumericalFailure);
    const auto op = assemble_operator(make(ModelKind::atomistic()), chain);
    CHECK_THROWS_AS(solve_equilibrium(op, PeriodicField::zeros(32)), InvalidArgument);
  }

  TEST_CASE("fit_slope") {
    std::vector<std::pair<double, double>> pts;
    for (int k = 6; k <= 10; ++k) {
      const double eps = std::ldexp(1.0, -k);
      pts.emplace_back(eps, 3.0 * std::pow(eps, 1.5));
    }
    const SlopeFit fit = fit_slope(pts);
    CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(std::abs(fit.r_squared - 1.0) <= 1e-12);
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));

    const std::vector<std::pair<double, double>> flat{{0.1, 2.0}, {0.01, 2.0}, {0.001, 2.0}};
    CHECK(std::abs(fit_slope(flat).slope) <= 1e-14);
    CHECK(fit_slope(flat).r_squared == 1.0);

    const std::vector<std::pair<double, double>> one{{0.1, 2.0}};
    CHECK_THROWS_AS(fit_slope(one), InvalidArgument);
    const std::vector<std::pair<double, double>> negative{{0.1, 2.0}, {0.2, -1.0}};
    CHECK_THROWS_AS(fit_slope(negative), InvalidArgument);
    const std::vector<std::pair<double, double>> same_x{{0.1, 2.0}, {0.1, 3.0}};
    CHECK_THROWS_AS(fit_slope(same_x), InvalidArgument);
  }

  TEST_CASE("atomistic study has no error") {
    const auto table =
        convergence_study(make(ModelKind::atomistic()), ChainConfig(64, 1.2), default_witness(), powers(6, 10), kOrders);
    CHECK(table.rows.size() == 5 * 3);
    for (const auto& row : table.rows) CHECK(row.error_norm <= 1e-12);
    for (const auto& [p, fit] : table.fits) CHECK_FALSE(fit);
  }

  TEST_CASE("QNL rates") {
    const auto table =
        convergence_study(make(ModelKind::qnl()), ChainConfig(64, 1.2), default_witness(), powers(6, 13), kOrders);
    REQUIRE(table.fit_for(NormOrder::infinity()));
    CHECK(std::abs(table.fit_for(NormOrder::finite(1))->slope - 2.0) <= 0.1);
    CHECK(std::abs(table.fit_for(NormOrder::finite(2))->slope - 1.5) <= 0.1);
    CHECK(std::abs(table.fit_for(NormOrder::infinity())->slope - 1.0) <= 0.1);
    for (const auto& [p, fit] : table.fits) CHECK(fit->slope <= 1.0 + p.reciprocal() + 0.1);

    // Rows come ordered by N and then by p, with running slopes after the first N.
    CHECK(table.rows.front().atoms == 64);
    CHECK_FALSE(table.rows.front().slope_running);
    CHECK(table.rows[3].atoms == 128);
    CHECK(table.rows[3].slope_running);
    CHECK(table.model == "qnl");
    CHECK(table.witness == "sin_phase");

    REQUIRE(table.checks.size() == 8);
    for (const auto& check : table.checks) {
      CHECK(check.norm_equivalence_holds);
      CHECK(check.strain_bound_holds);
      CHECK(check.strain_sup > 0.0);
      CHECK(check.force_sup <= check.strain_bound / (1.0 / static_cast<double>(check.atoms)) * check.strain_sup);
      CHECK(check.solver_residual <= 1e-10 * check.rhs_sup);
    }
  }

  TEST_CASE("force-based and energy-based studies") {
    for (const auto& kind : {ModelKind::qce(), ModelKind::qcf()}) {
      const auto table = convergence_study(make(kind), ChainConfig(64, 1.2), default_witness(), powers(6, 9), kOrders);
      CHECK(table.rows.size() == 12);
      for (const auto& check : table.checks) CHECK(check.norm_equivalence_holds);
    }
    CHECK_THROWS_AS(convergence_study(make(ModelKind::qnl()), ChainConfig(64, 1.2), default_witness(), {128, 64},
                                      kOrders),
                    InvalidArgument);
    CHECK_THROWS_AS(
        convergence_study(make(ModelKind::qnl()), ChainConfig(64, 1.2), default_witness(), {64, 128}, {}),
        InvalidArgument);
  }
}
