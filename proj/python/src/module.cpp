#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qclab/acceptance.hpp"
#include "qclab/cli.hpp"
#include "qclab/config.hpp"
#include "qclab/consistency.hpp"
#include "qclab/error.hpp"
#include "qclab/impossibility.hpp"
#include "qclab/solver.hpp"

namespace py = pybind11;
using namespace qclab;

namespace {

PeriodicField to_field(const std::vector<double>& v) { return PeriodicField(v); }

py::array_t<double> to_array(const PeriodicField& f) {
  py::array_t<double> out(f.size());
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

NormOrder to_order(const py::object& p) {
  if (py::isinstance<py::str>(p)) {
    if (p.cast<std::string>() == "inf") return NormOrder::infinity();
    throw InvalidArgument("norm order must be a number >= 1 or 'inf'");
  }
  const double v = p.cast<double>();
  return std::isinf(v) ? NormOrder::infinity() : NormOrder::finite(v);
}

py::object from_order(NormOrder p) {
  if (p.is_infinite()) return py::float_(std::numeric_limits<double>::infinity());
  return py::float_(p.exponent());
}

Model build_model(const std::string& kind, const std::string& potential, double k, double s0,
                 const std::vector<std::pair<double, double>>& partition, int m, int reach,
                 const std::optional<std::vector<double>>& stencil) {
  RunConfig config;
  config.model = kind;
  config.potential = potential;
  config.stiffness = k;
  config.rest_length = s0;
  config.partition.clear();
  for (const auto& [a, b] : partition) config.partition.push_back({a, b});
  config.interface_width = m;
  config.reach = reach;
  if (stencil) config.stencil = *stencil;
  const auto& names = std::vector<std::string>{"atomistic", "continuum", "qce", "qnl", "qcf", "custom"};
  if (std::find(names.begin(), names.end(), kind) == names.end()) throw InvalidArgument("unknown model '" + kind + "'");
  if (potential != "harmonic" && potential != "lennard_jones") {
    throw InvalidArgument("unknown potential '" + potential + "'");
  }
  if (kind == "custom" && stencil && stencil->size() != static_cast<std::size_t>(m * (m + 1) / 2)) {
    throw InvalidArgument("stencil needs m(m+1)/2 entries");
  }
  return qclab::make_model(config);
}

py::dict sweep_dict(const SweepResult& r) {
  py::dict d;
  d["model"] = r.model;
  std::vector<long> atoms;
  std::vector<double> eps, res;
  for (const auto& p : r.points) {
    atoms.push_back(p.atoms);
    eps.push_back(p.epsilon);
    res.push_back(p.residual);
  }
  d["N"] = atoms;
  d["epsilon"] = eps;
  d["residual"] = res;
  d["slope"] = r.fit ? py::object(py::float_(r.fit->slope)) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_qclab, mod) {
  mod.doc() = "1D quasicontinuum consistency lab";
  mod.attr("__version__") = version_string().substr(6);

  static py::exception<NumericalFailure> numerical(mod, "NumericalFailure", PyExc_RuntimeError);
  static py::exception<ConfigError> config_error(mod, "ConfigError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NumericalFailure& e) {
      py::set_error(numerical, e.what());
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const InvalidArgument& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  py::class_<Model>(mod, "Model")
      .def(py::init(&build_model), py::arg("kind") = "atomistic", py::arg("potential") = "harmonic",
           py::arg("k") = 1.0, py::arg("s0") = 1.0,
           py::arg("partition") = std::vector<std::pair<double, double>>{{0.25, 0.75}}, py::arg("m") = 4,
           py::arg("reach") = 2, py::arg("stencil") = std::nullopt,
           "A model family with its partition and pair potential. `stencil` is the upper triangle of the custom "
           "interface block; omitted, the least-squares optimum is used.")
      .def_property_readonly("kind", [](const Model& m) { return m.kind.name(); })
      .def_property_readonly("potential", [](const Model& m) { return m.potential.name(); })
      .def("__repr__", [](const Model& m) { return "Model(" + m.kind.name() + ", " + m.potential.name() + ")"; });

  py::class_<LinearChainOperator>(mod, "Operator")
      .def_property_readonly("atoms", &LinearChainOperator::atoms)
      .def_property_readonly("ghost", [](const LinearChainOperator& op) { return to_array(op.ghost()); })
      .def("dense", &LinearChainOperator::dense, "Linear part in eps^2 units.")
      .def(
          "row",
          [](const LinearChainOperator& op, long i) {
            const Stencil& s = op.row(i);
            return py::make_tuple(s.first_offset, s.coefficients);
          },
          py::arg("i"), "(first_offset, coefficients) of 1-based row i.")
      .def("apply", [](const LinearChainOperator& op, const std::vector<double>& u) { return to_array(apply(op, to_field(u))); })
      .def("apply_linear",
           [](const LinearChainOperator& op, const std::vector<double>& u) { return to_array(apply_linear(op, to_field(u))); })
      .def("symmetry_defect", &symmetry_defect)
      .def("strain_form", [](const LinearChainOperator& op) {
        const StrainFormOperator s = to_strain_form(op);
        std::vector<std::pair<int, std::vector<double>>> rows;
        for (const auto& r : s.rows) rows.emplace_back(r.first_offset, r.coefficients);
        return py::make_tuple(rows, s.bound);
      });

  mod.def(
      "total_energy",
      [](const Model& model, const std::vector<double>& u, double F, int R) {
        return total_energy(model, ChainConfig(static_cast<long>(u.size()), F, R), to_field(u));
      },
      py::arg("model"), py::arg("u"), py::arg("F") = 1.2, py::arg("R") = 2);
  mod.def(
      "assemble_operator",
      [](const Model& model, long N, double F, int R) { return assemble_operator(model, ChainConfig(N, F, R)); },
      py::arg("model"), py::arg("N"), py::arg("F") = 1.2, py::arg("R") = 2);
  mod.def(
      "hessian_consistency_check",
      [](const Model& model, long N, double F) { return hessian_consistency_check(model, ChainConfig(N, F)); },
      py::arg("model"), py::arg("N"), py::arg("F") = 1.2);
  mod.def(
      "moment_residuals",
      [](const Model& model, long N, double F, bool exact, long origin) {
        const ChainConfig chain(N, F);
        Model reference = model;
        reference.kind = ModelKind::atomistic();
        const auto op = assemble_operator(model, chain);
        const auto ref = assemble_operator(reference, chain);
        const auto report = exact ? moment_residuals_exact(op, ref, origin) : moment_residuals(op, ref, origin);
        py::array_t<double> out({static_cast<py::ssize_t>(N), static_cast<py::ssize_t>(3)});
        auto view = out.mutable_unchecked<2>();
        for (long i = 0; i < N; ++i) {
          for (int k = 0; k < 3; ++k) view(i, k) = report.residuals[static_cast<std::size_t>(i)][k];
        }
        return out;
      },
      py::arg("model"), py::arg("N"), py::arg("F") = 1.2, py::arg("exact") = false, py::arg("origin") = 0,
      "Rows of (1, j, j^2) moment residuals against the atomistic operator, eps^2 units.");
  mod.def(
      "ghost_force",
      [](const Model& model, long N, double F) {
        const auto g = ghost_force(model, ChainConfig(N, F));
        return py::make_tuple(to_array(g.field), g.sup_norm);
      },
      py::arg("model"), py::arg("N"), py::arg("F") = 1.2);
  mod.def(
      "consistency_sweep",
      [](const Model& model, const std::vector<long>& atoms, double F, const std::string& witness) {
        return sweep_dict(consistency_sweep(model, ChainConfig(atoms.at(0), F), witness_by_name(witness), atoms));
      },
      py::arg("model"), py::arg("atoms"), py::arg("F") = 1.2, py::arg("witness") = "sin_phase");

  mod.def(
      "constraint_system",
      [](int m, int reach, bool symmetric) {
        const ConstraintSystem s = build_constraint_system(m, reach, symmetric);
        Eigen::MatrixXd a(static_cast<Eigen::Index>(s.equations()), static_cast<Eigen::Index>(s.unknowns.size()));
        Eigen::VectorXd c(static_cast<Eigen::Index>(s.equations()));
        for (std::size_t r = 0; r < s.equations(); ++r) {
          c(r) = s.constant[r].convert_to<double>();
          for (std::size_t k = 0; k < s.unknowns.size(); ++k) a(r, k) = s.matrix[r][k].convert_to<double>();
        }
        return py::make_tuple(a, c, s.unknowns);
      },
      py::arg("m"), py::arg("reach") = 2, py::arg("symmetric") = true,
      "(A, c, unknowns) with equations A x + c = 0.");
  mod.def(
      "certificate",
      [](int m) {
        const Certificate cert = certificate(m);
        py::dict d;
        std::vector<std::string> weights;
        for (const auto& w : cert.weights) weights.push_back(w.str());
        d["m"] = m;
        d["value"] = cert.value.str();
        d["weights"] = weights;
        d["weight_norm"] = cert.weight_norm();
        d["bound"] = cert.residual_lower_bound();
        return d;
      },
      py::arg("m"));
  mod.def(
      "min_residual",
      [](int m, int reach) {
        const MinResidual r = min_residual(m, reach);
        Eigen::MatrixXd block(m, m);
        for (int i = 1; i <= m; ++i) {
          for (int j = 1; j <= m; ++j) block(i - 1, j - 1) = r.argmin(i, j);
        }
        return py::make_tuple(r.residual, block, r.residual_vector);
      },
      py::arg("m"), py::arg("reach") = 2, "(residual, optimal symmetric block, residual vector).");
  mod.def(
      "min_residual_unsymmetric", [](int m, int reach) { return min_residual_unsymmetric(m, reach).first; },
      py::arg("m"), py::arg("reach") = 2);

  mod.def(
      "solve_equilibrium",
      [](const LinearChainOperator& op, const std::vector<double>& f) {
        const auto sol = solve_equilibrium(op, to_field(f));
        return py::make_tuple(to_array(sol.displacement), sol.residual, sol.removed);
      },
      py::arg("op"), py::arg("f"), "(u, residual, removed) with u mean-zero.");
  mod.def(
      "convergence_study",
      [](const Model& model, const std::vector<long>& atoms, const std::vector<py::object>& orders, double F,
         const std::string& witness) {
        std::vector<NormOrder> ps;
        for (const auto& p : orders) ps.push_back(to_order(p));
        const auto table = convergence_study(model, ChainConfig(atoms.at(0), F), witness_by_name(witness), atoms, ps);
        py::list rows;
        for (const auto& r : table.rows) {
          py::dict d;
          d["N"] = r.atoms;
          d["epsilon"] = r.epsilon;
          d["p"] = from_order(r.p);
          d["error_norm"] = r.error_norm;
          d["slope_running"] = r.slope_running ? py::object(py::float_(*r.slope_running)) : py::none();
          rows.append(d);
        }
        py::dict slopes;
        for (const auto& [p, fit] : table.fits) slopes[from_order(p)] = fit ? py::object(py::float_(fit->slope)) : py::none();
        bool inequalities = true;
        for (const auto& c : table.checks) inequalities = inequalities && c.norm_equivalence_holds && c.strain_bound_holds;
        py::dict out;
        out["model"] = table.model;
        out["rows"] = rows;
        out["slopes"] = slopes;
        out["inequalities_hold"] = inequalities;
        return out;
      },
      py::arg("model"), py::arg("atoms"), py::arg("orders") = std::vector<py::object>{py::float_(1.0), py::float_(2.0), py::str("inf")},
      py::arg("F") = 1.2, py::arg("witness") = "sin_phase");

  mod.def(
      "run_command",
      [](const std::string& command, const std::string& config, bool exact, bool report) {
        std::ostringstream out, err;
        CommandOptions options;
        options.exact = exact;
        options.report = report;
        int code = 0;
        try {
          code = qclab::run_command(command, parse_config(config), options, out, err);
        } catch (const ConfigError& e) {
          for (const auto& p : e.problems()) err << "config error: " << p << '\n';
          code = 2;
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("command"), py::arg("config") = "", py::arg("exact") = false, py::arg("report") = false,
      "Runs a batch command on a key=value config; returns (exit code, stdout, stderr).");
  mod.def("run_acceptance", []() {
    py::list out;
    for (const auto& r : run_acceptance()) {
      py::dict d;
      d["id"] = r.id;
      d["title"] = r.title;
      d["passed"] = r.passed;
      d["detail"] = r.detail;
      out.append(d);
    }
    return out;
  });
}
