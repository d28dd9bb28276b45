#include "qclab/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qclab/acceptance.hpp"
#include "qclab/consistency.hpp"
#include "qclab/error.hpp"
#include "qclab/impossibility.hpp"
#include "qclab/solver.hpp"

#ifndef QCLAB_VERSION
#define QCLAB_VERSION "0.0.0"
#endif

namespace qclab {

namespace {

std::string order_name(NormOrder p) { return p.is_infinite() ? "inf" : format_number(p.exponent()); }

const char* label_name(AtomLabel label) {
  switch (label) {
    case AtomLabel::InteriorAtomistic: return "interior_atomistic";
    case AtomLabel::InteriorContinuum: return "interior_continuum";
    case AtomLabel::Interface: return "interface";
  }
  return "";
}

std::vector<std::string> atom_labels(const Model& model, const ChainConfig& chain) {
  std::vector<std::string> out(static_cast<std::size_t>(chain.atoms()));
  if (!model.kind.is_coupled()) {
    const char* name = label_name(model.kind.family() == ModelFamily::Continuum ? AtomLabel::InteriorContinuum
                                                                                 : AtomLabel::InteriorAtomistic);
    for (auto& s : out) s = name;
    return out;
  }
  const AtomLabels labels = classify(model.partition, chain);
  for (long i = 1; i <= chain.atoms(); ++i) out[static_cast<std::size_t>(i - 1)] = label_name(labels.label(i));
  return out;
}

/// Tabular output of one command: CSV rows plus whitespace-separated plot data.
struct Output {
  std::ostringstream csv;
  std::ostringstream dat;
  std::ostringstream report;
};

class Csv {
public:
  explicit Csv(std::ostream& os) : os_(os) {}
  Csv& operator<<(const std::string& s) { return field(s); }
  Csv& operator<<(const char* s) { return field(s); }
  Csv& operator<<(double v) { return field(format_number(v)); }
  Csv& operator<<(long v) { return field(std::to_string(v)); }
  Csv& operator<<(int v) { return field(std::to_string(v)); }
  void end() {
    os_ << '\n';
    first_ = true;
  }

private:
  Csv& field(const std::string& s) {
    if (!first_) os_ << ',';
    os_ << s;
    first_ = false;
    return *this;
  }
  std::ostream& os_;
  bool first_ = true;
};

void energy(const RunConfig& config, Output& out) {
  const Model model = make_model(config);
  const ChainConfig chain = make_chain(config, config.atoms);
  PeriodicField u = sample_field(witness_by_name(config.witness).function, chain);
  u *= config.amplitude;
  const double e = total_energy(model, chain, u);
  Csv csv(out.csv);
  csv << "model" << "potential" << "N" << "F" << "amplitude" << "energy";
  csv.end();
  csv << model.kind.name() << model.potential.name() << config.atoms << config.deformation << config.amplitude << e;
  csv.end();
  out.dat << config.atoms << ' ' << format_number(e) << '\n';
  out.report << model.kind.name() << " energy at N=" << config.atoms << ": " << format_number(e) << '\n';
}

void stencil(const RunConfig& config, Output& out) {
  const Model model = make_model(config);
  const ChainConfig chain = make_chain(config, config.atoms);
  const LinearChainOperator op = assemble_operator(model, chain);
  const auto labels = atom_labels(model, chain);
  Csv csv(out.csv);
  csv << "atom" << "label" << "ghost" << "offset" << "coefficient";
  csv.end();
  for (long i = 1; i <= chain.atoms(); ++i) {
    const Stencil& row = op.row(i);
    for (std::size_t k = 0; k < row.coefficients.size(); ++k) {
      const int offset = row.first_offset + static_cast<int>(k);
      csv << i << labels[static_cast<std::size_t>(i - 1)] << op.ghost()(i) << offset << row.coefficients[k];
      csv.end();
      out.dat << i << ' ' << offset << ' ' << format_number(row.coefficients[k]) << '\n';
    }
  }
  out.report << model.kind.name() << " operator, N=" << chain.atoms() << ", eps^2 units\n"
             << "max reach: " << op.max_reach() << '\n'
             << "symmetry defect: " << format_number(symmetry_defect(op)) << '\n'
             << "ghost sup-norm: " << format_number(lp_norm(op.ghost(), NormOrder::infinity())) << '\n';
}

void moments(const RunConfig& config, bool exact, Output& out) {
  const Model model = make_model(config);
  const ChainConfig chain = make_chain(config, config.atoms);
  const LinearChainOperator op = assemble_operator(model, chain);
  Model reference = model;
  reference.kind = ModelKind::atomistic();
  const LinearChainOperator ref = assemble_operator(reference, chain);
  const MomentReport report = exact ? moment_residuals_exact(op, ref) : moment_residuals(op, ref);
  const auto labels = atom_labels(model, chain);
  Csv csv(out.csv);
  csv << "atom" << "label" << "moment_1" << "moment_j" << "moment_j2";
  csv.end();
  for (long i = 1; i <= chain.atoms(); ++i) {
    const auto& r = report.residuals[static_cast<std::size_t>(i - 1)];
    csv << i << labels[static_cast<std::size_t>(i - 1)] << r[0] << r[1] << r[2];
    csv.end();
    out.dat << i << ' ' << format_number(r[0]) << ' ' << format_number(r[1]) << ' ' << format_number(r[2]) << '\n';
  }
  const char* names[] = {"1", "j", "j^2"};
  out.report << model.kind.name() << " vs atomistic, N=" << chain.atoms() << (exact ? ", exact arithmetic" : "")
             << '\n';
  for (int k = 0; k < 3; ++k) {
    out.report << "p = " << names[k] << ": max |residual| " << format_number(report.max_abs(k)) << ", nonzero rows "
               << report.rows_above(k, 1e-9).size() << '\n';
  }
}

void ghost(const RunConfig& config, Output& out) {
  const Model model = make_model(config);
  Csv csv(out.csv);
  csv << "model" << "N" << "epsilon" << "ghost_sup" << "ratio";
  csv.end();
  double previous = 0.0;
  for (long n : config.atom_list) {
    const ChainConfig chain = make_chain(config, n);
    const double sup = ghost_force(model, chain).sup_norm;
    csv << model.kind.name() << n << chain.epsilon() << sup;
    if (previous > 0.0) {
      csv << sup / previous;
    } else {
      csv << "";
    }
    csv.end();
    out.dat << n << ' ' << format_number(sup) << '\n';
    out.report << "N=" << n << ": ghost sup-norm " << format_number(sup);
    if (previous > 0.0) out.report << ", ratio " << format_number(sup / previous);
    out.report << '\n';
    previous = sup;
  }
}

void sweep(const RunConfig& config, Output& out) {
  const Model model = make_model(config);
  const SweepResult result =
      consistency_sweep(model, make_chain(config, config.atom_list.front()), witness_by_name(config.witness),
                        config.atom_list);
  Csv csv(out.csv);
  csv << "model" << "N" << "epsilon" << "residual";
  csv.end();
  for (const auto& p : result.points) {
    csv << result.model << p.atoms << p.epsilon << p.residual;
    csv.end();
    out.dat << format_number(p.epsilon) << ' ' << format_number(p.residual) << '\n';
  }
  out.report << result.model << " consistency sweep, witness " << config.witness << '\n';
  if (result.fit) {
    out.report << "log-log slope " << format_number(result.fit->slope) << " (r^2 " << format_number(result.fit->r_squared)
               << ")\n";
  } else {
    out.report << "no fit: some residual is zero\n";
  }
}

void certify(const RunConfig& config, bool exact, Output& out) {
  Csv csv(out.csv);
  csv << "m" << "value" << "weight_norm_sq" << "min_residual" << "bound" << "unsymmetric_residual";
  csv.end();
  for (int m = 1; m <= config.max_width; ++m) {
    const Certificate cert = certificate(m);
    Rational norm_sq = 0;
    for (const auto& w : cert.weights) norm_sq += w * w;
    const double bound = cert.residual_lower_bound();
    const MinResidual best = min_residual(m, std::max(config.reach, 2));
    const double unsym = min_residual_unsymmetric(m, std::max(config.reach, 2)).first;
    csv << m << cert.value.str() << norm_sq.str() << best.residual << bound << unsym;
    csv.end();
    out.dat << m << ' ' << format_number(best.residual) << ' ' << format_number(bound) << ' ' << format_number(unsym)
            << '\n';

    out.report << "m=" << m << ": sum over rows i of (i^2 * [p=j] - i * [p=j^2]) = " << cert.value.str()
               << ", every unknown cancels exactly\n"
               << "  ||w||^2 = " << norm_sq.str() << ", residual >= 2/||w|| = " << format_number(bound)
               << ", least-squares minimum " << format_number(best.residual) << '\n';
    if (exact && m >= 4) {
      const ConstraintSystem system = build_constraint_system(m, 2, false);
      std::vector<Rational> x;
      for (double v : unknowns_from_block(system, qcf_witness_block(m))) x.emplace_back(static_cast<long>(v));
      for (const auto& r : exact_residual(system, x)) {
        if (r != 0) throw NumericalFailure("force-based block fails the unsymmetric system at m=" + std::to_string(m));
      }
      out.report << "  without symmetry: the force-based block solves every equation exactly\n";
    } else {
      out.report << "  without symmetry: least-squares minimum " << format_number(unsym) << '\n';
    }
  }
}

void converge(const RunConfig& config, Output& out) {
  const Model model = make_model(config);
  const ConvergenceTable table = convergence_study(model, make_chain(config, config.atom_list.front()),
                                                   witness_by_name(config.witness), config.atom_list, config.orders);
  Csv csv(out.csv);
  csv << "model" << "N" << "epsilon" << "p" << "error_norm" << "slope_running";
  csv.end();
  for (const auto& row : table.rows) {
    csv << row.model << row.atoms << row.epsilon << order_name(row.p) << row.error_norm;
    if (row.slope_running) {
      csv << *row.slope_running;
    } else {
      csv << "";
    }
    csv.end();
  }
  bool first = true;
  for (NormOrder p : config.orders) {
    if (!first) out.dat << "\n\n";
    first = false;
    out.dat << "# p=" << order_name(p) << '\n';
    for (const auto& row : table.rows) {
      if (row.p == p) out.dat << format_number(row.epsilon) << ' ' << format_number(row.error_norm) << '\n';
    }
  }
  out.report << table.model << " convergence, witness " << table.witness << '\n';
  for (const auto& [p, fit] : table.fits) {
    out.report << "p=" << order_name(p) << ": slope ";
    if (fit) {
      out.report << format_number(fit->slope) << " (expected " << format_number(1.0 + p.reciprocal()) << ")\n";
    } else {
      out.report << "undefined (zero error)\n";
    }
  }
  bool norms = true, bounds = true;
  for (const auto& check : table.checks) {
    norms = norms && check.norm_equivalence_holds;
    bounds = bounds && check.strain_bound_holds;
  }
  out.report << "norm equivalence " << (norms ? "holds" : "FAILS") << " on every N; strain bound "
             << (bounds ? "holds" : "FAILS") << " on every N\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open output file '" + path.string() + "'");
  file << content;
  if (!file) throw InvalidArgument("cannot write output file '" + path.string() + "'");
}

int dispatch(const std::string& command, const RunConfig& config, const CommandOptions& options, std::ostream& out) {
  check_command(config, command);
  const bool exact = options.exact || config.exact;
  if (command == "selftest") {
    bool all = true;
    for (const auto& result : run_acceptance()) {
      out << format_result(result) << '\n' << std::flush;
      all = all && result.passed;
    }
    return all ? 0 : 1;
  }

  Output output;
  if (command == "energy") energy(config, output);
  if (command == "stencil") stencil(config, output);
  if (command == "moments") moments(config, exact, output);
  if (command == "ghost") ghost(config, output);
  if (command == "sweep") sweep(config, output);
  if (command == "certify") certify(config, exact, output);
  if (command == "converge") converge(config, output);

  const std::string path = options.out_path.empty() ? config.output : options.out_path;
  if (path.empty()) {
    out << output.csv.str();
  } else {
    std::filesystem::path dat(path);
    dat.replace_extension(dat.extension() == ".dat" ? ".plot.dat" : ".dat");
    write_file(path, output.csv.str());
    write_file(dat, "# " + version_string() + '\n' + output.dat.str());
  }
  if (options.report) out << output.report.str();
  return 0;
}

}  // namespace

std::string version_string() { return std::string("qclab ") + QCLAB_VERSION; }

std::string format_number(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

int run_command(const std::string& command, const RunConfig& config, const CommandOptions& options, std::ostream& out,
                std::ostream& err) {
  try {
    return dispatch(command, config, options, out);
  } catch (const ConfigError& e) {
    for (const auto& p : e.problems()) err << "config error: " << p << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace qclab
