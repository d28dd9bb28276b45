#include "qclab/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "qclab/detail/parallel.hpp"
#include "qclab/error.hpp"

namespace qclab {

double MomentReport::max_abs(int moment) const {
  double worst = 0.0;
  for (const auto& r : residuals) worst = std::max(worst, std::abs(r.at(static_cast<std::size_t>(moment))));
  return worst;
}

std::vector<long> MomentReport::rows_above(int moment, double tolerance) const {
  std::vector<long> rows;
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    if (std::abs(residuals[k].at(static_cast<std::size_t>(moment))) > tolerance) rows.push_back(static_cast<long>(k) + 1);
  }
  return rows;
}

namespace {

void require_comparable(const LinearChainOperator& op, const LinearChainOperator& reference) {
  if (op.atoms() != reference.atoms()) {
    throw InvalidArgument("moment test needs operators of equal size, got N=" + std::to_string(op.atoms()) +
                          " and N=" + std::to_string(reference.atoms()));
  }
  const long reach = std::max(op.max_reach(), reference.max_reach());
  if (op.atoms() < 4 * (reach + 2)) {
    throw InvalidArgument("chain too short for unwrapped moment tests: need N >= " + std::to_string(4 * (reach + 2)));
  }
}

// Visits the union of both rows' offsets with the coefficient difference.
template <class Visit>
void for_each_difference(const Stencil& a, const Stencil& b, Visit visit) {
  const bool a_empty = a.coefficients.empty();
  const bool b_empty = b.coefficients.empty();
  if (a_empty && b_empty) return;
  const int lo = a_empty ? b.first_offset : b_empty ? a.first_offset : std::min(a.first_offset, b.first_offset);
  const int hi = a_empty ? b.last_offset() : b_empty ? a.last_offset() : std::max(a.last_offset(), b.last_offset());
  for (int o = lo; o <= hi; ++o) visit(o, a.at(o), b.at(o));
}

}  // namespace

MomentReport moment_residuals(const LinearChainOperator& op, const LinearChainOperator& reference, long origin) {
  require_comparable(op, reference);
  MomentReport report;
  report.residuals.resize(static_cast<std::size_t>(op.atoms()));
  for (long i = 1; i <= op.atoms(); ++i) {
    long double m0 = 0.0L;
    long double m1 = 0.0L;
    long double m2 = 0.0L;
    for_each_difference(op.row(i), reference.row(i), [&](int o, double a, double b) {
      const long double d = static_cast<long double>(a) - static_cast<long double>(b);
      const long double j = static_cast<long double>(i + o - origin);
      m0 += d;
      m1 += d * j;
      m2 += d * j * j;
    });
    report.residuals[static_cast<std::size_t>(i - 1)] = {static_cast<double>(m0), static_cast<double>(m1),
                                                         static_cast<double>(m2)};
  }
  return report;
}

MomentReport moment_residuals_exact(const LinearChainOperator& op, const LinearChainOperator& reference,
                                    long origin) {
  using boost::multiprecision::cpp_rational;
  require_comparable(op, reference);
  MomentReport report;
  report.residuals.resize(static_cast<std::size_t>(op.atoms()));
  for (long i = 1; i <= op.atoms(); ++i) {
    cpp_rational m0 = 0;
    cpp_rational m1 = 0;
    cpp_rational m2 = 0;
    for_each_difference(op.row(i), reference.row(i), [&](int o, double a, double b) {
      const cpp_rational d = cpp_rational(a) - cpp_rational(b);
      const cpp_rational j = i + o - origin;
      m0 += d;
      m1 += d * j;
      m2 += d * j * j;
    });
    report.residuals[static_cast<std::size_t>(i - 1)] = {m0.convert_to<double>(), m1.convert_to<double>(),
                                                         m2.convert_to<double>()};
  }
  return report;
}

GhostForceReport ghost_force(const Model& model, const ChainConfig& config) {
  const auto op = assemble_operator(model, config);
  return {op.ghost(), lp_norm(op.ghost(), NormOrder::infinity())};
}

SweepResult consistency_sweep(const Model& model, const ChainConfig& base, const Witness& witness,
                              const std::vector<long>& atoms) {
  for (std::size_t k = 1; k < atoms.size(); ++k) {
    if (atoms[k] <= atoms[k - 1]) throw InvalidArgument("sweep N values must be strictly increasing");
  }
  const Model reference{ModelKind::atomistic(), {}, model.potential};
  auto point = [&](long n) {
    const ChainConfig config = base.with_atoms(n);
    const PeriodicField u = sample_field(witness.function, config);
    const PeriodicField diff = apply(assemble_operator(model, config), u) - apply(assemble_operator(reference, config), u);
    return SweepPoint{n, config.epsilon(), lp_norm(diff, NormOrder::infinity())};
  };
  SweepResult result{model.kind.name(), detail::ordered_parallel_map(atoms, point), std::nullopt};
  if (result.points.size() >= 2 &&
      std::all_of(result.points.begin(), result.points.end(), [](const SweepPoint& p) { return p.residual > 0.0; })) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& p : result.points) xy.emplace_back(p.epsilon, p.residual);
    result.fit = fit_slope(xy);
  }
  return result;
}

}  // namespace qclab
