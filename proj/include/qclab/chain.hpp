#pragma once

// Periodic chain bookkeeping: configuration, periodic fields, difference
// quotients and the discrete l^p_eps norms.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qclab {

/// Parameters of a periodic chain with N atoms per unit period.
///
/// The lattice spacing is always derived as 1/N. The cutoff R is the
/// interaction range (in neighbour shells) used by the energies; the stencil
/// room requirement N >= 4R + 4 is only enforced where operators are built,
/// so small chains remain usable for the difference calculus.
class ChainConfig {
public:
  ChainConfig(long atoms, double deformation, int cutoff = 2);

  long atoms() const noexcept { return atoms_; }
  double epsilon() const noexcept { return 1.0 / static_cast<double>(atoms_); }
  double deformation() const noexcept { return deformation_; }
  int cutoff() const noexcept { return cutoff_; }

  /// Throws InvalidArgument unless N >= 4R + 4.
  void require_stencil_room() const;

  ChainConfig with_atoms(long atoms) const { return {atoms, deformation_, cutoff_}; }

  friend bool operator==(const ChainConfig&, const ChainConfig&) = default;

private:
  long atoms_;
  double deformation_;
  int cutoff_;
};

/// N values indexed 1..N; reads at any integer index wrap periodically.
class PeriodicField {
public:
  PeriodicField() = default;
  explicit PeriodicField(std::vector<double> values);
  static PeriodicField zeros(long atoms);

  long size() const noexcept { return static_cast<long>(values_.size()); }
  double epsilon() const noexcept { return 1.0 / static_cast<double>(values_.size()); }

  /// Periodic, 1-based access: (*this)(i + N) == (*this)(i).
  double operator()(long i) const noexcept { return values_[wrap(i)]; }
  double& at(long i) noexcept { return values_[wrap(i)]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  /// 0-based storage slot of 1-based periodic index i.
  std::size_t wrap(long i) const noexcept {
    const long n = size();
    long r = (i - 1) % n;
    if (r < 0) r += n;
    return static_cast<std::size_t>(r);
  }

  PeriodicField& operator+=(const PeriodicField& other);
  PeriodicField& operator-=(const PeriodicField& other);
  PeriodicField& operator*=(double factor);

  friend PeriodicField operator+(PeriodicField a, const PeriodicField& b) { return a += b; }
  friend PeriodicField operator-(PeriodicField a, const PeriodicField& b) { return a -= b; }
  friend PeriodicField operator*(double s, PeriodicField a) { return a *= s; }

  double mean() const noexcept;

private:
  std::vector<double> values_;
};

/// Order p of a discrete norm; p = infinity is its own state, not a sentinel.
class NormOrder {
public:
  static NormOrder finite(double p);
  static NormOrder infinity() noexcept { return NormOrder{}; }

  bool is_infinite() const noexcept { return infinite_; }
  /// Exponent for finite orders; only meaningful when !is_infinite().
  double exponent() const noexcept { return p_; }
  /// 1/p, zero for p = infinity.
  double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / p_; }

  friend bool operator==(const NormOrder&, const NormOrder&) = default;

private:
  NormOrder() = default;
  bool infinite_ = true;
  double p_ = 0.0;
};

using PeriodicFunction = std::function<double(double)>;

/// u_i = f(i/N), i = 1..N.
PeriodicField sample_field(const PeriodicFunction& f, const ChainConfig& config);

/// Backward difference quotient D_r (order 1) or centred second difference
/// D_r^2 (order 2). Rejects r > N/2 and orders other than 1 and 2.
PeriodicField difference(const PeriodicField& u, int r, int order);

/// (eps * sum |u_j|^p)^(1/p), or max |u_j| for p = infinity.
double lp_norm(const PeriodicField& u, NormOrder p);

}  // namespace qclab
