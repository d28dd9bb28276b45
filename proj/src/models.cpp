#include "qclab/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qclab/error.hpp"

namespace qclab {

// ---------------------------------------------------------------------------
// Small value types

InterfaceStencil::InterfaceStencil(int width, std::vector<double> block) : width_(width), block_(std::move(block)) {
  if (width < 1) throw InvalidArgument("interface stencil width must be positive");
  if (block_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(width)) {
    throw InvalidArgument("interface stencil needs m*m entries");
  }
  for (int i = 1; i <= width; ++i) {
    for (int j = i + 1; j <= width; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) throw InvalidArgument("interface stencil block must be symmetric");
    }
  }
}

InterfaceStencil InterfaceStencil::from_upper(int width, const std::vector<double>& upper) {
  if (width < 1) throw InvalidArgument("interface stencil width must be positive");
  const auto expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(width + 1) / 2;
  if (upper.size() != expected) throw InvalidArgument("upper triangle needs m(m+1)/2 entries");
  std::vector<double> block(static_cast<std::size_t>(width * width));
  std::size_t k = 0;
  for (int a = 0; a < width; ++a) {
    for (int b = a; b < width; ++b, ++k) {
      block[static_cast<std::size_t>(a * width + b)] = upper[k];
      block[static_cast<std::size_t>(b * width + a)] = upper[k];
    }
  }
  return InterfaceStencil(width, std::move(block));
}

ModelKind ModelKind::custom(InterfaceStencil stencil) {
  ModelKind kind(ModelFamily::Custom);
  kind.stencil_ = std::move(stencil);
  return kind;
}

bool ModelKind::is_coupled() const noexcept {
  return family_ != ModelFamily::Atomistic && family_ != ModelFamily::Continuum;
}

bool ModelKind::is_energy_based() const noexcept {
  return family_ != ModelFamily::Qcf && family_ != ModelFamily::Custom;
}

std::string ModelKind::name() const {
  switch (family_) {
    case ModelFamily::Atomistic: return "atomistic";
    case ModelFamily::Continuum: return "continuum";
    case ModelFamily::Qce: return "qce";
    case ModelFamily::Qnl: return "qnl";
    case ModelFamily::Qcf: return "qcf";
    case ModelFamily::Custom: return "custom";
  }
  return "unknown";
}

Linearization Linearization::of(const PairPotential& potential, const ChainConfig& config) {
  Linearization lin;
  for (int r = 1; r <= config.cutoff(); ++r) {
    const double s = r * config.deformation();
    lin.slope.push_back(potential.slope(s));
    lin.curvature.push_back(potential.curvature(s));
  }
  return lin;
}

double Stencil::at(int offset) const noexcept {
  const int k = offset - first_offset;
  if (k < 0 || k >= static_cast<int>(coefficients.size())) return 0.0;
  return coefficients[static_cast<std::size_t>(k)];
}

double Stencil::sum() const noexcept { return std::accumulate(coefficients.begin(), coefficients.end(), 0.0); }

double Stencil::abs_sum() const noexcept {
  double s = 0.0;
  for (double c : coefficients) s += std::abs(c);
  return s;
}

LinearChainOperator::LinearChainOperator(ChainConfig config, std::vector<Stencil> rows, PeriodicField ghost)
    : config_(config), rows_(std::move(rows)), ghost_(std::move(ghost)) {
  if (static_cast<long>(rows_.size()) != config_.atoms() || ghost_.size() != config_.atoms()) {
    throw InvalidArgument("operator needs one row and one ghost entry per atom");
  }
}

int LinearChainOperator::max_reach() const noexcept {
  int reach = 0;
  for (const auto& row : rows_) {
    if (row.coefficients.empty()) continue;
    reach = std::max({reach, -row.first_offset, row.last_offset()});
  }
  return reach;
}

Eigen::SparseMatrix<double> LinearChainOperator::sparse() const {
  const long n = atoms();
  std::vector<Eigen::Triplet<double>> triplets;
  for (long i = 1; i <= n; ++i) {
    const auto& r = row(i);
    for (std::size_t k = 0; k < r.coefficients.size(); ++k) {
      if (r.coefficients[k] == 0.0) continue;
      const long j = i + r.first_offset + static_cast<long>(k);
      triplets.emplace_back(static_cast<int>(ghost_.wrap(i)), static_cast<int>(ghost_.wrap(j)), r.coefficients[k]);
    }
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

Eigen::MatrixXd LinearChainOperator::dense() const { return Eigen::MatrixXd(sparse()); }

// ---------------------------------------------------------------------------
// Bond terms
//
// Every energy-based model is a sum of terms eps * w * phi(r F + scale *
// (u_head - u_tail) / eps). Energy, gradient and Hessian all derive from
// the same list.

namespace {

struct BondTerm {
  double weight;
  int shell;
  long head;
  long tail;
  double scale;
};

void require_coupling_cutoff(const Model& model, const ChainConfig& config) {
  if (model.kind.is_coupled() && config.cutoff() != 2) {
    throw InvalidArgument("coupled models are defined for second-neighbour interactions only (R = 2)");
  }
}

std::vector<BondTerm> bond_terms(const Model& model, const ChainConfig& config) {
  const long n = config.atoms();
  const int cutoff = config.cutoff();
  std::vector<BondTerm> terms;
  terms.reserve(static_cast<std::size_t>(n * cutoff * 2));

  switch (model.kind.family()) {
    case ModelFamily::Atomistic:
      for (int r = 1; r <= cutoff; ++r) {
        for (long i = 1; i <= n; ++i) terms.push_back({1.0, r, i, i - r, 1.0});
      }
      break;
    case ModelFamily::Continuum:
      for (int r = 1; r <= cutoff; ++r) {
        for (long i = 1; i <= n; ++i) terms.push_back({1.0, r, i, i - 1, static_cast<double>(r)});
      }
      break;
    case ModelFamily::Qnl: {
      const AtomLabels labels = classify(model.partition, config);
      for (long i = 1; i <= n; ++i) terms.push_back({1.0, 1, i, i - 1, 1.0});
      for (long i = 1; i <= n; ++i) {
        // Second-neighbour bond (i-2, i): exact if it touches the atomistic
        // region, otherwise split over the two nearest-neighbour strains.
        if (labels.in_atomistic(i) || labels.in_atomistic(i - 2)) {
          terms.push_back({1.0, 2, i, i - 2, 1.0});
        } else {
          terms.push_back({0.5, 2, i, i - 1, 2.0});
          terms.push_back({0.5, 2, i - 1, i - 2, 2.0});
        }
      }
      break;
    }
    case ModelFamily::Qce: {
      const AtomLabels labels = classify(model.partition, config);
      for (long i = 1; i <= n; ++i) {
        const bool atomistic = labels.in_atomistic(i);
        for (int r = 1; r <= 2; ++r) {
          if (atomistic) {
            terms.push_back({0.5, r, i + r, i, 1.0});
            terms.push_back({0.5, r, i, i - r, 1.0});
          } else {
            terms.push_back({0.5, r, i + 1, i, static_cast<double>(r)});
            terms.push_back({0.5, r, i, i - 1, static_cast<double>(r)});
          }
        }
      }
      break;
    }
    case ModelFamily::Qcf:
    case ModelFamily::Custom:
      throw InvalidArgument(model.kind.name() + " does not derive from an energy");
  }
  return terms;
}

double energy_of(const std::vector<BondTerm>& terms, const PairPotential& potential, const ChainConfig& config,
                 const PeriodicField& u) {
  const double n = static_cast<double>(config.atoms());
  const double eps = config.epsilon();
  const double f = config.deformation();
  double sum = 0.0;
  for (const auto& t : terms) {
    const double argument = t.shell * f + t.scale * (u(t.head) - u(t.tail)) * n;
    sum += t.weight * potential.value(argument);
  }
  return eps * sum;
}

/// Dense row accumulator over offsets [-width, width], trimmed on output.
class RowAccumulator {
public:
  RowAccumulator(long atoms, int width)
      : atoms_(atoms), width_(width), data_(static_cast<std::size_t>(atoms * (2 * width + 1)), 0.0) {}

  void add(long row, long offset, double value) {
    if (offset < -width_ || offset > width_) throw InvalidArgument("stencil offset exceeds accumulator width");
    data_[index(row, offset)] += value;
  }

  void clear_row(long row) {
    for (long o = -width_; o <= width_; ++o) data_[index(row, o)] = 0.0;
  }

  std::vector<Stencil> finish() const {
    std::vector<Stencil> rows(static_cast<std::size_t>(atoms_));
    for (long i = 1; i <= atoms_; ++i) {
      long lo = -width_;
      long hi = width_;
      while (lo <= hi && data_[index(i, lo)] == 0.0) ++lo;
      while (hi >= lo && data_[index(i, hi)] == 0.0) --hi;
      Stencil& s = rows[static_cast<std::size_t>(i - 1)];
      if (lo > hi) continue;
      s.first_offset = static_cast<int>(lo);
      for (long o = lo; o <= hi; ++o) s.coefficients.push_back(data_[index(i, o)]);
    }
    return rows;
  }

private:
  std::size_t index(long row, long offset) const {
    long r = (row - 1) % atoms_;
    if (r < 0) r += atoms_;
    return static_cast<std::size_t>(r * (2 * width_ + 1) + (offset + width_));
  }

  long atoms_;
  int width_;
  std::vector<double> data_;
};

LinearChainOperator assemble_energy_based(const Model& model, const ChainConfig& config,
                                          const Linearization& lin) {
  const auto terms = bond_terms(model, config);
  const long n = config.atoms();
  RowAccumulator acc(n, config.cutoff());
  std::vector<double> ghost(static_cast<std::size_t>(n), 0.0);
  PeriodicField index_helper = PeriodicField::zeros(n);
  for (const auto& t : terms) {
    const auto shell = static_cast<std::size_t>(t.shell - 1);
    const double h = t.weight * lin.curvature[shell] * t.scale * t.scale;
    const long span = t.head - t.tail;
    acc.add(t.head, 0, h);
    acc.add(t.head, -span, -h);
    acc.add(t.tail, 0, h);
    acc.add(t.tail, span, -h);
    const double g = t.weight * lin.slope[shell] * t.scale;
    ghost[index_helper.wrap(t.head)] += g;
    ghost[index_helper.wrap(t.tail)] -= g;
  }
  for (double& g : ghost) g *= static_cast<double>(n);
  return LinearChainOperator(config, acc.finish(), PeriodicField(std::move(ghost)));
}

LinearChainOperator assemble_qcf(const Model& model, const ChainConfig& config, const Linearization& lin) {
  const AtomLabels labels = classify(model.partition, config);
  const auto atomistic = assemble_energy_based({ModelKind::atomistic(), {}, model.potential}, config, lin);
  const auto continuum = assemble_energy_based({ModelKind::continuum(), {}, model.potential}, config, lin);
  std::vector<Stencil> rows;
  rows.reserve(static_cast<std::size_t>(config.atoms()));
  for (long i = 1; i <= config.atoms(); ++i) {
    rows.push_back(labels.in_atomistic(i) ? atomistic.row(i) : continuum.row(i));
  }
  return LinearChainOperator(config, std::move(rows), PeriodicField::zeros(config.atoms()));
}

// L = phi''(F) L1 + phi''(2F) L2 with L1 the nearest-neighbour Laplacian
// everywhere and L2 pure atomistic/continuum outside the interface blocks.
LinearChainOperator assemble_custom(const Model& model, const ChainConfig& config, const Linearization& lin) {
  const InterfaceStencil& block = *model.kind.stencil();
  const int m = block.width();
  if (m != model.partition.interface_width) {
    throw InvalidArgument("interface stencil is " + std::to_string(m) + "x" + std::to_string(m) +
                          " but the partition uses m = " + std::to_string(model.partition.interface_width));
  }
  const AtomLabels labels = classify(model.partition, config);
  const long n = config.atoms();
  if (n < 2L * (m + 2) + 1) throw InvalidArgument("chain too short for the interface stencil");

  RowAccumulator second(n, m + 2);
  for (long i = 1; i <= n; ++i) {
    if (labels.in_atomistic(i)) {
      second.add(i, -2, -1.0);
      second.add(i, 0, 2.0);
      second.add(i, 2, -1.0);
    } else {
      second.add(i, -1, -4.0);
      second.add(i, 0, 8.0);
      second.add(i, 1, -4.0);
    }
  }
  for (const auto& b : labels.blocks()) {
    for (int i = 1; i <= m; ++i) second.clear_row(b.atom(i));
    for (int i = 1; i <= m; ++i) {
      const long atom = b.atom(i);
      auto put = [&](int j, double v) {
        if (v != 0.0) second.add(atom, static_cast<long>(b.orientation) * (j - i), v);
      };
      for (int j = 1; j <= m; ++j) put(j, block(i, j));
      // Columns outside the block are pinned to the neighbouring pure rows.
      if (i == 1) put(0, -4.0);
      if (i + 2 > m) put(i + 2, -1.0);
    }
  }
  const auto l2 = second.finish();

  RowAccumulator combined(n, m + 2);
  for (long i = 1; i <= n; ++i) {
    combined.add(i, -1, -lin.curvature[0]);
    combined.add(i, 0, 2.0 * lin.curvature[0]);
    combined.add(i, 1, -lin.curvature[0]);
    const auto& row = l2[static_cast<std::size_t>(i - 1)];
    for (std::size_t k = 0; k < row.coefficients.size(); ++k) {
      combined.add(i, row.first_offset + static_cast<long>(k), lin.curvature[1] * row.coefficients[k]);
    }
  }
  return LinearChainOperator(config, combined.finish(), PeriodicField::zeros(n));
}

}  // namespace

double total_energy(const Model& model, const ChainConfig& config, const PeriodicField& u) {
  if (u.size() != config.atoms()) throw InvalidArgument("displacement length differs from N");
  require_coupling_cutoff(model, config);
  return energy_of(bond_terms(model, config), model.potential, config, u);
}

LinearChainOperator assemble_operator(const Model& model, const ChainConfig& config) {
  return assemble_operator(model, config, Linearization::of(model.potential, config));
}

LinearChainOperator assemble_operator(const Model& model, const ChainConfig& config,
                                      const Linearization& linearization) {
  require_coupling_cutoff(model, config);
  config.require_stencil_room();
  const auto shells = static_cast<std::size_t>(config.cutoff());
  if (linearization.slope.size() != shells || linearization.curvature.size() != shells) {
    throw InvalidArgument("linearization must provide one slope and curvature per shell");
  }
  switch (model.kind.family()) {
    case ModelFamily::Qcf: return assemble_qcf(model, config, linearization);
    case ModelFamily::Custom: return assemble_custom(model, config, linearization);
    default: return assemble_energy_based(model, config, linearization);
  }
}

PeriodicField apply_linear(const LinearChainOperator& op, const PeriodicField& u) {
  const long n = op.atoms();
  if (u.size() != n) throw InvalidArgument("field length differs from operator size");
  const double scale = static_cast<double>(n) * static_cast<double>(n);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) {
    const auto& row = op.row(i);
    double s = 0.0;
    for (std::size_t k = 0; k < row.coefficients.size(); ++k) {
      s += row.coefficients[k] * u(i + row.first_offset + static_cast<long>(k));
    }
    out[static_cast<std::size_t>(i - 1)] = scale * s;
  }
  return PeriodicField(std::move(out));
}

PeriodicField apply(const LinearChainOperator& op, const PeriodicField& u) {
  return apply_linear(op, u) + op.ghost();
}

StrainFormOperator to_strain_form(const LinearChainOperator& op) {
  if (lp_norm(op.ghost(), NormOrder::infinity()) > 1e-9) {
    throw InvalidArgument("strain form needs a ghost-free operator");
  }
  StrainFormOperator out{op.config(), {}, 0.0};
  out.rows.reserve(op.rows().size());
  for (const auto& row : op.rows()) {
    if (std::abs(row.sum()) > 1e-12 * std::max(1.0, row.abs_sum())) {
      throw InvalidArgument("strain form needs zero row sums (shift invariance)");
    }
    Stencil strain;
    if (row.coefficients.size() > 1) {
      // t_q = sum_{o >= q} c_o for q = first+1 .. last.
      strain.first_offset = row.first_offset + 1;
      strain.coefficients.resize(row.coefficients.size() - 1);
      double tail = 0.0;
      for (std::size_t k = row.coefficients.size() - 1; k >= 1; --k) {
        tail += row.coefficients[k];
        strain.coefficients[k - 1] = tail;
      }
    }
    out.bound = std::max(out.bound, strain.abs_sum());
    out.rows.push_back(std::move(strain));
  }
  return out;
}

PeriodicField apply_strain(const StrainFormOperator& op, const PeriodicField& strain) {
  const long n = op.config.atoms();
  if (strain.size() != n) throw InvalidArgument("strain length differs from operator size");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) {
    const auto& row = op.rows[strain.wrap(i)];
    double s = 0.0;
    for (std::size_t k = 0; k < row.coefficients.size(); ++k) {
      s += row.coefficients[k] * strain(i + row.first_offset + static_cast<long>(k));
    }
    out[static_cast<std::size_t>(i - 1)] = static_cast<double>(n) * s;
  }
  return PeriodicField(std::move(out));
}

double hessian_consistency_check(const Model& model, const ChainConfig& config, double step) {
  if (!model.kind.is_energy_based()) throw InvalidArgument(model.kind.name() + " does not derive from an energy");
  const auto op = assemble_operator(model, config);
  const auto terms = bond_terms(model, config);
  const long n = config.atoms();
  const PeriodicField zero = PeriodicField::zeros(n);
  const double e0 = energy_of(terms, model.potential, config, zero);

  // d^2/dt^2 E(t v) at t = 0 for v = e_k + sign * e_l (sign = 0: v = e_k).
  auto curvature_along = [&](long k, long l, double sign) {
    auto energy_at = [&](double t) {
      PeriodicField u = zero;
      u.at(k) += t;
      if (sign != 0.0) u.at(l) += sign * t;
      return energy_of(terms, model.potential, config, u);
    };
    const double h = step;
    return (-energy_at(2 * h) + 16 * energy_at(h) - 30 * e0 + 16 * energy_at(-h) - energy_at(-2 * h)) /
           (12 * h * h);
  };

  const Eigen::MatrixXd assembled = op.dense();
  const double eps = config.epsilon();
  double worst = 0.0;
  for (long k = 1; k <= n; ++k) {
    for (long l = k; l <= n; ++l) {
      const double hessian =
          k == l ? curvature_along(k, k, 0.0) : (curvature_along(k, l, 1.0) - curvature_along(k, l, -1.0)) / 4.0;
      // (1/eps) * Hessian in eps^2 units.
      const double fd = eps * hessian;
      worst = std::max(worst, std::abs(fd - assembled(k - 1, l - 1)));
      worst = std::max(worst, std::abs(fd - assembled(l - 1, k - 1)));
    }
  }
  return worst;
}

double symmetry_defect(const LinearChainOperator& op) {
  const Eigen::SparseMatrix<double> a = op.sparse();
  const Eigen::SparseMatrix<double> at = a.transpose();
  const Eigen::SparseMatrix<double> diff = a - at;
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

}  // namespace qclab
