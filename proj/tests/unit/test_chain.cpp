#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "generators.hpp"
#include "qclab/chain.hpp"
#include "qclab/error.hpp"

using namespace qclab;
using qclab::testing::random_field;

namespace {

// Dense circulant realization of D_r^(order), built entry by entry.
Eigen::MatrixXd circulant_difference(long n, int r, int order) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  const double eps = 1.0 / static_cast<double>(n);
  auto idx = [n](long i) { return ((i % n) + n) % n; };
  for (long i = 0; i < n; ++i) {
    if (order == 1) {
      d(i, idx(i)) += 1.0 / (r * eps);
      d(i, idx(i - r)) -= 1.0 / (r * eps);
    } else {
      const double s = 1.0 / (r * r * eps * eps);
      d(i, idx(i + r)) += s;
      d(i, idx(i)) -= 2.0 * s;
      d(i, idx(i - r)) += s;
    }
  }
  return d;
}

Eigen::VectorXd as_vector(const PeriodicField& u) {
  return Eigen::Map<const Eigen::VectorXd>(u.values().data(), u.size());
}

}  // namespace

TEST_SUITE("chain") {
  TEST_CASE("config derives epsilon from N") {
    for (long n : {1L, 3L, 7L, 64L, 1000L}) {
      const ChainConfig c(n, 1.2);
      CHECK(c.epsilon() == doctest::Approx(1.0 / static_cast<double>(n)).epsilon(1e-15));
      CHECK(c.cutoff() == 2);
    }
    CHECK_THROWS_AS(ChainConfig(0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(ChainConfig(8, 1.0, 0), InvalidArgument);
    CHECK_THROWS_AS(ChainConfig(8, std::nan("")), InvalidArgument);
    CHECK_NOTHROW(ChainConfig(12, 1.0).require_stencil_room());
    CHECK_THROWS_AS(ChainConfig(11, 1.0).require_stencil_room(), InvalidArgument);
  }

  TEST_CASE("periodic one-based indexing") {
    const PeriodicField u({10.0, 20.0, 30.0, 40.0});
    CHECK(u(1) == 10.0);
    CHECK(u(4) == 40.0);
    CHECK(u(0) == 40.0);
    CHECK(u(5) == 10.0);
    CHECK(u(-3) == 10.0);
    CHECK(u(-4) == 40.0);
    CHECK(u(9) == 10.0);
    CHECK(u.mean() == 25.0);
    CHECK_THROWS_AS(PeriodicField(std::vector<double>{}), InvalidArgument);
    CHECK_THROWS_AS(u + PeriodicField::zeros(3), InvalidArgument);
  }

  TEST_CASE("sample_field") {
    const auto s = sample_field([](double x) { return std::sin(2.0 * std::numbers::pi * x); }, ChainConfig(4, 1.0));
    const double expected[] = {1.0, 0.0, -1.0, 0.0};
    for (long i = 1; i <= 4; ++i) CHECK(std::abs(s(i) - expected[i - 1]) <= 1e-15);

    const auto c = sample_field([](double) { return 3.25; }, ChainConfig(17, 1.0));
    for (double v : c.values()) CHECK(v == 3.25);

    // Oracle: the same samples in extended precision.
    const long n = 64;
    const auto u = sample_field([](double x) { return std::sin(2.0 * std::numbers::pi * x); }, ChainConfig(n, 1.0));
    for (long i = 1; i <= n; ++i) {
      const long double x = static_cast<long double>(i) / n;
      const long double ref = std::sin(2.0L * std::numbers::pi_v<long double> * x);
      CHECK(std::abs(static_cast<long double>(u(i)) - ref) <= 1e-15L);
    }
  }

  TEST_CASE("difference examples") {
    const PeriodicField u({1.0, 0.0, -1.0, 0.0});
    const auto d = difference(u, 1, 1);
    const double expected[] = {4.0, -4.0, -4.0, 4.0};
    for (long i = 1; i <= 4; ++i) CHECK(d(i) == expected[i - 1]);

    const PeriodicField c(std::vector<double>(10, 2.5));
    for (int r : {1, 2, 3, 5}) {
      for (int order : {1, 2}) {
        if (order == 2 && 2 * r > 10) continue;
        const PeriodicField d = difference(c, r, order);
        for (double v : d.values()) CHECK(v == 0.0);
      }
    }
    CHECK_THROWS_AS(difference(u, 3, 1), InvalidArgument);
    CHECK_THROWS_AS(difference(u, 1, 3), InvalidArgument);
    CHECK_THROWS_AS(difference(u, 0, 1), InvalidArgument);
  }

  TEST_CASE("difference matches dense circulant oracle") {
    for (long n : {8L, 33L, 64L}) {
      const PeriodicField u = random_field(n);
      for (int r : {1, 2, 3}) {
        for (int order : {1, 2}) {
          const Eigen::VectorXd expected = circulant_difference(n, r, order) * as_vector(u);
          const PeriodicField d = difference(u, r, order);
          // Entries scale like N^order; compare relative to that scale.
          const double scale = std::pow(static_cast<double>(n), order);
          for (long i = 1; i <= n; ++i) CHECK(std::abs(d(i) - expected(i - 1)) <= 1e-13 * scale);
        }
      }
    }
  }

  TEST_CASE("norm examples") {
    const PeriodicField ones(std::vector<double>(4, 1.0));
    for (auto p : {NormOrder::finite(1), NormOrder::finite(2), NormOrder::finite(3.5), NormOrder::infinity()}) {
      CHECK(lp_norm(ones, p) == doctest::Approx(1.0).epsilon(1e-15));
    }
    const PeriodicField e({1.0, 0.0, 0.0, 0.0});
    CHECK(lp_norm(e, NormOrder::finite(1)) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(lp_norm(e, NormOrder::finite(2)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lp_norm(e, NormOrder::infinity()) == 1.0);
    CHECK_THROWS_AS(NormOrder::finite(0.5), InvalidArgument);
    CHECK(NormOrder::infinity().is_infinite());
    CHECK(NormOrder::infinity().reciprocal() == 0.0);
    CHECK(NormOrder::finite(2).reciprocal() == 0.5);
  }

  TEST_CASE("property: differences are linear") {
    for (int trial = 0; trial < 50; ++trial) {
      const long n = testing::uniform_int(8, 80);
      const PeriodicField u = random_field(n), v = random_field(n);
      const double a = testing::uniform(-2, 2), b = testing::uniform(-2, 2);
      const int r = static_cast<int>(testing::uniform_int(1, 3));
      for (int order : {1, 2}) {
        const auto lhs = difference(a * u + b * v, r, order);
        const auto rhs = a * difference(u, r, order) + b * difference(v, r, order);
        const double scale = std::pow(static_cast<double>(n), order);
        for (long i = 1; i <= n; ++i) CHECK(std::abs(lhs(i) - rhs(i)) <= 1e-13 * scale);
      }
    }
  }

  TEST_CASE("property: periodic differences telescope to zero") {
    for (int trial = 0; trial < 50; ++trial) {
      const long n = 1L << testing::uniform_int(3, 10);
      const PeriodicField u = testing::random_integer_field(n);
      const auto d = difference(u, 1, 1);
      double sum = 0.0;
      for (double v : d.values()) sum += v / static_cast<double>(n);
      CHECK(sum == 0.0);
    }
  }

  TEST_CASE("property: second difference is the difference of first differences") {
    for (int trial = 0; trial < 50; ++trial) {
      const long n = testing::uniform_int(6, 100);
      const PeriodicField u = random_field(n);
      const auto d1 = difference(u, 1, 1);
      const auto d2 = difference(u, 1, 2);
      const double eps = 1.0 / static_cast<double>(n);
      for (long i = 1; i <= n; ++i) {
        const double composed = (d1(i + 1) - d1(i)) / eps;
        CHECK(std::abs(d2(i) - composed) <= 1e-13 * static_cast<double>(n * n));
      }
    }
  }

  TEST_CASE("property: norm equivalence") {
    const NormOrder orders[] = {NormOrder::finite(1), NormOrder::finite(1.5), NormOrder::finite(2),
                                NormOrder::finite(4)};
    for (int trial = 0; trial < 1000; ++trial) {
      const long n = testing::uniform_int(1, 300);
      const PeriodicField u = random_field(n, testing::uniform(1e-3, 1e3));
      const double sup = lp_norm(u, NormOrder::infinity());
      for (auto p : orders) {
        const double norm = lp_norm(u, p);
        const double low = std::pow(1.0 / static_cast<double>(n), p.reciprocal()) * sup;
        CHECK(norm >= low * (1.0 - 1e-14));
        CHECK(norm <= sup * (1.0 + 1e-14));
      }
    }
  }
}
