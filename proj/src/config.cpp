#include "qclab/config.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "qclab/error.hpp"
#include "qclab/impossibility.hpp"
#include "qclab/witness.hpp"

namespace qclab {

namespace {

const std::vector<std::string> kModels{"atomistic", "continuum", "qce", "qnl", "qcf", "custom"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

class Parser {
public:
  void line(std::size_t number, std::string_view raw) {
    std::string_view text = raw.substr(0, raw.find('#'));
    text = trim(text);
    if (text.empty()) return;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      fail(number, "expected key=value, got '" + std::string(text) + "'");
      return;
    }
    const std::string key(trim(text.substr(0, eq)));
    const std::string_view value = trim(text.substr(eq + 1));
    if (!seen_.insert(key).second) {
      fail(number, "duplicate key '" + key + "'");
      return;
    }
    assign(number, key, value);
  }

  RunConfig finish() {
    if (!problems_.empty()) throw ConfigError(problems_);
    return config_;
  }

private:
  void fail(std::size_t number, const std::string& message) {
    problems_.push_back("line " + std::to_string(number) + ": " + message);
  }

  template <class T>
  void number(std::size_t line, const std::string& key, std::string_view value, T& out) {
    if (!parse_number(value, out)) fail(line, "malformed number for key '" + key + "': '" + std::string(value) + "'");
  }

  void choice(std::size_t line, const std::string& key, std::string_view value, const std::vector<std::string>& allowed,
              std::string& out) {
    if (std::find(allowed.begin(), allowed.end(), value) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(line, "invalid value '" + std::string(value) + "' for key '" + key + "' (expected one of: " + list + ")");
      return;
    }
    out = std::string(value);
  }

  void assign(std::size_t line, const std::string& key, std::string_view value) {
    auto& c = config_;
    if (key == "model") {
      choice(line, key, value, kModels, c.model);
    } else if (key == "potential") {
      choice(line, key, value, {"harmonic", "lennard_jones"}, c.potential);
    } else if (key == "k") {
      number(line, key, value, c.stiffness);
    } else if (key == "s0") {
      number(line, key, value, c.rest_length);
    } else if (key == "F") {
      number(line, key, value, c.deformation);
    } else if (key == "R") {
      number(line, key, value, c.cutoff);
      if (c.cutoff < 1) fail(line, "R must be positive");
    } else if (key == "partition") {
      c.partition.clear();
      if (value.empty()) return;
      for (auto item : split(value, ',')) {
        const auto parts = split(item, ':');
        Interval iv;
        if (parts.size() != 2 || !parse_number(parts[0], iv.lower) || !parse_number(parts[1], iv.upper)) {
          fail(line, "malformed interval '" + std::string(item) + "' (expected lower:upper)");
          continue;
        }
        c.partition.push_back(iv);
      }
    } else if (key == "m") {
      number(line, key, value, c.interface_width);
      if (c.interface_width < 1) fail(line, "m must be positive");
    } else if (key == "reach") {
      number(line, key, value, c.reach);
      if (c.reach < 1) fail(line, "reach must be positive");
    } else if (key == "N") {
      number(line, key, value, c.atoms);
      if (c.atoms < 1) fail(line, "N must be positive");
    } else if (key == "N_list") {
      c.atom_list.clear();
      for (auto item : split(value, ',')) {
        long n = 0;
        if (!parse_number(item, n) || n < 1) {
          fail(line, "malformed N in N_list: '" + std::string(item) + "'");
          continue;
        }
        if (!c.atom_list.empty() && n <= c.atom_list.back()) fail(line, "N_list must be strictly increasing");
        c.atom_list.push_back(n);
      }
    } else if (key == "p_list") {
      c.orders.clear();
      for (auto item : split(value, ',')) {
        if (item == "inf") {
          c.orders.push_back(NormOrder::infinity());
          continue;
        }
        double p = 0.0;
        if (!parse_number(item, p) || !(p >= 1.0)) {
          fail(line, "malformed norm order '" + std::string(item) + "' (expected p >= 1 or inf)");
          continue;
        }
        c.orders.push_back(NormOrder::finite(p));
      }
    } else if (key == "witness") {
      choice(line, key, value, witness_names(), c.witness);
    } else if (key == "output") {
      c.output = std::string(value);
    } else if (key == "exact") {
      if (value == "true" || value == "1") {
        c.exact = true;
      } else if (value == "false" || value == "0") {
        c.exact = false;
      } else {
        fail(line, "malformed boolean for key 'exact': '" + std::string(value) + "'");
      }
    } else if (key == "m_max") {
      number(line, key, value, c.max_width);
      if (c.max_width < 1) fail(line, "m_max must be positive");
    } else if (key == "amplitude") {
      number(line, key, value, c.amplitude);
    } else if (key == "stencil") {
      c.stencil.clear();
      if (value.empty()) return;
      for (auto item : split(value, ',')) {
        double v = 0.0;
        if (!parse_number(item, v)) {
          fail(line, "malformed stencil entry '" + std::string(item) + "'");
          continue;
        }
        c.stencil.push_back(v);
      }
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }

  RunConfig config_;
  std::set<std::string> seen_;
  std::vector<std::string> problems_;
};

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"energy", "stencil", "moments", "ghost",
                                              "sweep",  "certify", "converge", "selftest"};
  return names;
}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys{
      {"model", "atomistic", "atomistic | continuum | qce | qnl | qcf | custom"},
      {"potential", "harmonic", "harmonic | lennard_jones"},
      {"k", "1", "harmonic stiffness"},
      {"s0", "1", "harmonic rest length"},
      {"F", "1.2", "macroscopic deformation gradient"},
      {"R", "2", "interaction cutoff in neighbour shells (coupled models need 2)"},
      {"partition", "0.25:0.75", "atomistic intervals lower:upper, comma separated; empty for none"},
      {"m", "4", "interface block width"},
      {"reach", "2", "range of interfacial interactions"},
      {"N", "64", "atoms per period for single-N commands"},
      {"N_list", "64,128,...,8192", "strictly increasing N values for ghost, sweep, converge"},
      {"p_list", "1,2,inf", "norm orders for converge"},
      {"witness", "sin_phase", "sin_phase | sin | cos2 | bump"},
      {"output", "", "CSV path; empty writes to standard output"},
      {"exact", "false", "rational arithmetic where supported"},
      {"m_max", "12", "certify runs m = 1..m_max"},
      {"amplitude", "0", "energy: u = amplitude * witness"},
      {"stencil", "", "custom model: upper triangle of the m x m block, row by row"},
  };
  return keys;
}

RunConfig parse_config(std::string_view text) {
  Parser parser;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    ++number;
    parser.line(number, text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parser.finish();
}

void check_command(const RunConfig& config, std::string_view command) {
  std::vector<std::string> problems;
  const auto& commands = command_names();
  if (std::find(commands.begin(), commands.end(), command) == commands.end()) {
    problems.push_back("unknown command '" + std::string(command) + "'");
  }
  if (command == "energy" && (config.model == "qcf" || config.model == "custom")) {
    problems.push_back("model '" + config.model + "' has no energy; the energy command needs an energy-based model");
  }
  const bool coupled = config.model != "atomistic" && config.model != "continuum";
  if (coupled && config.cutoff != 2 && command != "certify" && command != "selftest") {
    problems.push_back("coupled models need R = 2");
  }
  if (config.model == "custom" && !config.stencil.empty()) {
    const auto m = static_cast<std::size_t>(config.interface_width);
    if (config.stencil.size() != m * (m + 1) / 2) {
      problems.push_back("stencil needs m(m+1)/2 = " + std::to_string(m * (m + 1) / 2) + " entries");
    }
  }
  if ((command == "ghost" || command == "sweep" || command == "converge") && config.atom_list.empty()) {
    problems.push_back("N_list must not be empty");
  }
  if (command == "converge" && config.orders.empty()) problems.push_back("p_list must not be empty");
  if (!problems.empty()) throw ConfigError(problems);
}

ChainConfig make_chain(const RunConfig& config, long atoms) {
  return ChainConfig(atoms, config.deformation, config.cutoff);
}

Model make_model(const RunConfig& config) {
  Model model;
  model.partition.atomistic = config.partition;
  model.partition.interface_width = config.interface_width;
  model.partition.reach = config.reach;
  model.potential = config.potential == "lennard_jones" ? PairPotential::lennard_jones()
                                                        : PairPotential::harmonic(config.stiffness, config.rest_length);
  if (config.model == "atomistic") model.kind = ModelKind::atomistic();
  if (config.model == "continuum") model.kind = ModelKind::continuum();
  if (config.model == "qce") model.kind = ModelKind::qce();
  if (config.model == "qnl") model.kind = ModelKind::qnl();
  if (config.model == "qcf") model.kind = ModelKind::qcf();
  if (config.model == "custom") {
    model.kind = ModelKind::custom(config.stencil.empty()
                                       ? min_residual(config.interface_width).argmin
                                       : InterfaceStencil::from_upper(config.interface_width, config.stencil));
  }
  return model;
}

}  // namespace qclab
