#pragma once

#include <span>
#include <string>
#include <variant>

namespace qclab {

/// phi(s) = (k/2)(s - s0)^2.
struct Harmonic {
  double stiffness = 1.0;
  double rest_length = 1.0;
};

/// phi(s) = s^-12 - 2 s^-6: unit well depth, minimum at s = 1.
struct LennardJones {};

/// Pair interaction potential with analytic derivatives up to second order.
class PairPotential {
public:
  using Kind = std::variant<Harmonic, LennardJones>;

  PairPotential(Kind kind = Harmonic{}) : kind_(kind) {}  // NOLINT(google-explicit-constructor)

  static PairPotential harmonic(double stiffness = 1.0, double rest_length = 1.0) {
    return PairPotential(Harmonic{stiffness, rest_length});
  }
  static PairPotential lennard_jones() { return PairPotential(LennardJones{}); }

  /// phi, phi' or phi'' at s (order 0, 1, 2). Lennard-Jones rejects s <= 0.
  double evaluate(double s, int order) const;

  double value(double s) const { return evaluate(s, 0); }
  double slope(double s) const { return evaluate(s, 1); }
  double curvature(double s) const { return evaluate(s, 2); }

  const Kind& kind() const noexcept { return kind_; }
  std::string name() const;

private:
  Kind kind_;
};

/// Worst mixed relative error |analytic - fd| / max(1, |analytic|) of the
/// first and second derivatives against central differences (step 1e-6) of
/// the next-lower order. Zero for an empty sample list.
double derivative_check(const PairPotential& potential, std::span<const double> samples);

}  // namespace qclab
