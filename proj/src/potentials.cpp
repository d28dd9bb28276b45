#include "qclab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qclab/error.hpp"

namespace qclab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double harmonic_derivative(const Harmonic& h, double s, int order) {
  const double stretch = s - h.rest_length;
  switch (order) {
    case 0: return 0.5 * h.stiffness * stretch * stretch;
    case 1: return h.stiffness * stretch;
    default: return h.stiffness;
  }
}

double lennard_jones_derivative(double s, int order) {
  if (!(s > 0.0)) throw InvalidArgument("Lennard-Jones potential is singular at s <= 0");
  const double inv = 1.0 / s;
  const double inv6 = std::pow(inv, 6);
  const double inv12 = inv6 * inv6;
  switch (order) {
    case 0: return inv12 - 2.0 * inv6;
    case 1: return 12.0 * inv * (inv6 - inv12);
    default: return inv * inv * (156.0 * inv12 - 84.0 * inv6);
  }
}

}  // namespace

double PairPotential::evaluate(double s, int order) const {
  if (order < 0 || order > 2) throw InvalidArgument("potential derivative order must be 0, 1 or 2");
  return std::visit(overloaded{[&](const Harmonic& h) { return harmonic_derivative(h, s, order); },
                               [&](const LennardJones&) { return lennard_jones_derivative(s, order); }},
                    kind_);
}

std::string PairPotential::name() const {
  return std::visit(overloaded{[](const Harmonic&) { return std::string("harmonic"); },
                               [](const LennardJones&) { return std::string("lennard_jones"); }},
                    kind_);
}

double derivative_check(const PairPotential& potential, std::span<const double> samples) {
  constexpr double step = 1e-6;
  double worst = 0.0;
  for (double s : samples) {
    for (int order = 1; order <= 2; ++order) {
      const double analytic = potential.evaluate(s, order);
      const double fd =
          (potential.evaluate(s + step, order - 1) - potential.evaluate(s - step, order - 1)) / (2.0 * step);
      worst = std::max(worst, std::abs(analytic - fd) / std::max(1.0, std::abs(analytic)));
    }
  }
  return worst;
}

}  // namespace qclab
