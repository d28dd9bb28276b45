#pragma once

// Flat key=value run configuration for the batch tool.

#include <string>
#include <string_view>
#include <vector>

#include "qclab/chain.hpp"
#include "qclab/models.hpp"
#include "qclab/partition.hpp"

namespace qclab {

struct RunConfig {
  std::string model = "atomistic";
  std::string potential = "harmonic";
  double stiffness = 1.0;    ///< k
  double rest_length = 1.0;  ///< s0
  double deformation = 1.2;  ///< F
  int cutoff = 2;            ///< R
  std::vector<Interval> partition{{0.25, 0.75}};
  int interface_width = 4;  ///< m
  int reach = 2;
  long atoms = 64;  ///< N
  std::vector<long> atom_list{64, 128, 256, 512, 1024, 2048, 4096, 8192};
  std::vector<NormOrder> orders{NormOrder::finite(1), NormOrder::finite(2), NormOrder::infinity()};
  std::string witness = "sin_phase";
  std::string output;  ///< empty: standard output
  bool exact = false;
  int max_width = 12;  ///< certify runs m = 1..m_max
  double amplitude = 0.0;
  std::vector<double> stencil;  ///< custom model, upper triangle; empty: least-squares optimum
};

struct ConfigKey {
  std::string name;
  std::string default_value;
  std::string description;
};

const std::vector<std::string>& command_names();

/// Every accepted key with its default, in documentation order.
const std::vector<ConfigKey>& config_keys();

/// One key=value per line; '#' starts a comment. Unknown keys, duplicate
/// keys and malformed values are collected and thrown as one ConfigError.
RunConfig parse_config(std::string_view text);

/// Rejects combinations a command cannot run (e.g. qcf with `energy`).
void check_command(const RunConfig& config, std::string_view command);

ChainConfig make_chain(const RunConfig& config, long atoms);
/// Builds the model; a custom model without an explicit stencil uses the
/// least-squares optimal symmetric block for m.
Model make_model(const RunConfig& config);

}  // namespace qclab
