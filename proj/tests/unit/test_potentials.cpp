#include <doctest.h>

#include <cmath>
#include <vector>

#include "qclab/error.hpp"
#include "qclab/potentials.hpp"

using namespace qclab;

TEST_SUITE("potentials") {
  TEST_CASE("harmonic values") {
    const auto h = PairPotential::harmonic(1.0, 1.0);
    CHECK(h.evaluate(2.0, 0) == 0.5);
    CHECK(h.evaluate(2.0, 1) == 1.0);
    CHECK(h.evaluate(2.0, 2) == 1.0);
    const auto stiff = PairPotential::harmonic(3.0, 0.5);
    CHECK(stiff.value(1.5) == doctest::Approx(1.5));
    CHECK(stiff.slope(1.5) == doctest::Approx(3.0));
    CHECK(h.name() == "harmonic");
    CHECK_THROWS_AS(h.evaluate(1.0, 3), InvalidArgument);
  }

  TEST_CASE("Lennard-Jones values") {
    const auto lj = PairPotential::lennard_jones();
    CHECK(lj.evaluate(1.0, 0) == -1.0);
    CHECK(lj.evaluate(1.0, 1) == 0.0);
    CHECK(lj.evaluate(1.0, 2) == doctest::Approx(72.0));
    CHECK(lj.name() == "lennard_jones");
    CHECK_THROWS_AS(lj.value(0.0), InvalidArgument);
    CHECK_THROWS_AS(lj.value(-1.0), InvalidArgument);

    const double h = 1e-6;
    const double fd = (lj.value(1.1 + h) - lj.value(1.1 - h)) / (2 * h);
    CHECK(std::abs(lj.slope(1.1) - fd) <= 1e-6 * std::abs(fd));
  }

  TEST_CASE("derivative_check") {
    const std::vector<double> hs{0.5, 1.0, 2.0};
    CHECK(derivative_check(PairPotential::harmonic(1.0, 1.0), hs) <= 1e-9);
    const std::vector<double> ls{0.9, 1.0, 1.2};
    CHECK(derivative_check(PairPotential::lennard_jones(), ls) <= 1e-5);
    CHECK(derivative_check(PairPotential::lennard_jones(), {}) == 0.0);
  }

  TEST_CASE("property: curvature is the second difference of the value") {
    for (const auto& pot : {PairPotential::harmonic(2.0, 0.8), PairPotential::lennard_jones()}) {
      for (double s = 0.85; s <= 2.5; s += 0.05) {
        const double h = 1e-4;
        const double fd = (pot.value(s + h) - 2.0 * pot.value(s) + pot.value(s - h)) / (h * h);
        const double exact = pot.curvature(s);
        CHECK(std::abs(fd - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
      }
    }
  }

  TEST_CASE("property: harmonic curvature is constant") {
    const auto h = PairPotential::harmonic(1.7, 1.0);
    for (double s = -3.0; s <= 3.0; s += 0.25) CHECK(h.curvature(s) == 1.7);
  }
}
