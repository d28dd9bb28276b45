#include "qclab/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qclab/error.hpp"

namespace qclab {

ChainConfig::ChainConfig(long atoms, double deformation, int cutoff)
    : atoms_(atoms), deformation_(deformation), cutoff_(cutoff) {
  if (atoms < 1) throw InvalidArgument("chain needs at least one atom, got N=" + std::to_string(atoms));
  if (cutoff < 1) throw InvalidArgument("cutoff R must be positive, got " + std::to_string(cutoff));
  if (!std::isfinite(deformation)) throw InvalidArgument("deformation gradient F must be finite");
}

void ChainConfig::require_stencil_room() const {
  if (atoms_ < 4L * cutoff_ + 4) {
    throw InvalidArgument("N=" + std::to_string(atoms_) + " too small for cutoff R=" + std::to_string(cutoff_) +
                          " (need N >= 4R+4)");
  }
}

PeriodicField::PeriodicField(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("periodic field must have at least one value");
}

PeriodicField PeriodicField::zeros(long atoms) {
  if (atoms < 1) throw InvalidArgument("periodic field must have at least one value");
  return PeriodicField(std::vector<double>(static_cast<std::size_t>(atoms), 0.0));
}

namespace {

void require_same_size(const PeriodicField& a, const PeriodicField& b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("field sizes differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

}  // namespace

PeriodicField& PeriodicField::operator+=(const PeriodicField& other) {
  require_same_size(*this, other);
  std::transform(values_.begin(), values_.end(), other.values_.begin(), values_.begin(), std::plus<>{});
  return *this;
}

PeriodicField& PeriodicField::operator-=(const PeriodicField& other) {
  require_same_size(*this, other);
  std::transform(values_.begin(), values_.end(), other.values_.begin(), values_.begin(), std::minus<>{});
  return *this;
}

PeriodicField& PeriodicField::operator*=(double factor) {
  for (double& v : values_) v *= factor;
  return *this;
}

double PeriodicField::mean() const noexcept {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

NormOrder NormOrder::finite(double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidArgument("norm order must satisfy p >= 1");
  if (std::isinf(p)) return infinity();
  NormOrder order;
  order.infinite_ = false;
  order.p_ = p;
  return order;
}

PeriodicField sample_field(const PeriodicFunction& f, const ChainConfig& config) {
  const long n = config.atoms();
  std::vector<double> values(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) {
    values[static_cast<std::size_t>(i - 1)] = f(static_cast<double>(i) / static_cast<double>(n));
  }
  return PeriodicField(std::move(values));
}

PeriodicField difference(const PeriodicField& u, int r, int order) {
  const long n = u.size();
  if (r < 1) throw InvalidArgument("difference step r must be positive");
  if (2L * r > n) {
    throw InvalidArgument("difference step r=" + std::to_string(r) + " exceeds N/2 for N=" + std::to_string(n));
  }
  if (order != 1 && order != 2) throw InvalidArgument("difference order must be 1 or 2");

  const double h = static_cast<double>(r) / static_cast<double>(n);  // r * eps
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) {
    double d = 0.0;
    if (order == 1) {
      d = (u(i) - u(i - r)) / h;
    } else {
      d = (u(i + r) - 2.0 * u(i) + u(i - r)) / (h * h);
    }
    out[static_cast<std::size_t>(i - 1)] = d;
  }
  return PeriodicField(std::move(out));
}

double lp_norm(const PeriodicField& u, NormOrder p) {
  const auto values = u.values();
  if (p.is_infinite()) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  const double exponent = p.exponent();
  double sum = 0.0;
  if (exponent == 1.0) {
    for (double v : values) sum += std::abs(v);
    return u.epsilon() * sum;
  }
  for (double v : values) sum += std::pow(std::abs(v), exponent);
  return std::pow(u.epsilon() * sum, 1.0 / exponent);
}

}  // namespace qclab
