#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qclab/cli.hpp"
#include "qclab/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"1D quasicontinuum consistency lab", "qclab"};
  app.set_version_flag("--version", qclab::version_string());

  std::string command;
  std::string config_path;
  qclab::CommandOptions options;
  std::string commands;
  for (const auto& c : qclab::command_names()) commands += (commands.empty() ? "" : ", ") + c;
  app.add_option("command", command, "one of: " + commands)->required()->check(CLI::IsMember(qclab::command_names()));
  app.add_option("--config", config_path, "key=value run configuration");
  app.add_option("--out", options.out_path, "CSV output path; a .dat plot file is written next to it");
  app.add_flag("--exact", options.exact, "rational arithmetic where supported");
  app.add_flag("--report", options.report, "print a human-readable summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string text;
  if (!config_path.empty()) {
    std::ifstream file(config_path, std::ios::binary);
    if (!file) {
      std::cerr << "config error: cannot read '" << config_path << "'\n";
      return 2;
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }

  qclab::RunConfig config;
  try {
    config = qclab::parse_config(text);
  } catch (const qclab::ConfigError& e) {
    for (const auto& p : e.problems()) std::cerr << "config error: " << p << '\n';
    return 2;
  }
  return qclab::run_command(command, config, options, std::cout, std::cerr);
}
