#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qclab/cli.hpp"
#include "qclab/config.hpp"
#include "qclab/error.hpp"

using namespace qclab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& command, const std::string& config_text, CommandOptions options = {}) {
  std::ostringstream out, err;
  const int code = run_command(command, parse_config(config_text), options, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> problems_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("defaults") {
    const RunConfig c = parse_config("");
    CHECK(c.model == "atomistic");
    CHECK(c.atoms == 64);
    CHECK(c.potential == "harmonic");
    CHECK(c.deformation == 1.2);
    CHECK(c.partition == std::vector<Interval>{{0.25, 0.75}});
    CHECK(c.interface_width == 4);
    CHECK(c.atom_list.front() == 64);
    CHECK(c.atom_list.back() == 8192);
    CHECK(c.orders.size() == 3);
    CHECK(c.witness == "sin_phase");
    CHECK_FALSE(c.exact);
    // Every key is documented with a default.
    CHECK(config_keys().size() == 18);
    for (const auto& key : config_keys()) CHECK(problems_of(key.name + "=" + key.default_value + "\n").size() <= 1);
  }

  TEST_CASE("values and comments") {
    const RunConfig c = parse_config("model=qnl\nN=1024\nF=1.2");
    CHECK(c.model == "qnl");
    CHECK(c.atoms == 1024);
    CHECK(c.deformation == 1.2);
    CHECK(c.potential == "harmonic");

    const RunConfig d = parse_config(
        "# experiment\n  model = qcf   # force based\n\npartition=0.1:0.3, 0.5:0.9\nN_list=32,64\np_list=inf,1.5\n"
        "exact=true\r\nstencil=1,2,3\npotential=lennard_jones\n");
    CHECK(d.model == "qcf");
    CHECK(d.partition == std::vector<Interval>{{0.1, 0.3}, {0.5, 0.9}});
    CHECK(d.atom_list == std::vector<long>{32, 64});
    CHECK(d.orders.front().is_infinite());
    CHECK(d.orders.back().exponent() == 1.5);
    CHECK(d.exact);
    CHECK(d.stencil.size() == 3);
    CHECK(d.potential == "lennard_jones");
    CHECK(parse_config("partition=\n").partition.empty());
  }

  TEST_CASE("errors are listed in input order") {
    const auto p = problems_of("modle=qnl\nN=abc\nmodel=foo\nN_list=64,32\nwat\np_list=0.5\nmodel=qnl\n");
    REQUIRE(p.size() == 7);
    CHECK(p[0].find("unknown key 'modle'") != std::string::npos);
    CHECK(p[1].find("malformed number for key 'N'") != std::string::npos);
    CHECK(p[2].find("invalid value 'foo'") != std::string::npos);
    CHECK(p[3].find("strictly increasing") != std::string::npos);
    CHECK(p[4].find("expected key=value") != std::string::npos);
    CHECK(p[5].find("norm order") != std::string::npos);
    CHECK(p[6].find("duplicate key 'model'") != std::string::npos);
    CHECK(problems_of("N=1\nN=2\n").size() == 1);
    CHECK(problems_of("F=1.2x\n").size() == 1);
  }

  TEST_CASE("inadmissible combinations") {
    CHECK_THROWS_AS(check_command(parse_config("model=qcf"), "energy"), ConfigError);
    CHECK_THROWS_AS(check_command(parse_config("model=custom"), "energy"), ConfigError);
    CHECK_THROWS_AS(check_command(parse_config("model=qnl\nR=3"), "stencil"), ConfigError);
    CHECK_THROWS_AS(check_command(parse_config("model=custom\nstencil=1,2"), "stencil"), ConfigError);
    CHECK_THROWS_AS(check_command(parse_config(""), "plot"), ConfigError);
    CHECK_NOTHROW(check_command(parse_config("model=qnl"), "energy"));
    CHECK_NOTHROW(check_command(parse_config("model=custom\nm=2\nstencil=1,2,3"), "stencil"));
  }

  TEST_CASE("exit codes") {
    CHECK(run("energy", "model=qcf").code == 2);
    CHECK(run("energy", "N=8\nmodel=qnl").code == 2);
    CHECK(run("energy", "").code == 0);
    CHECK(run("certify", "m_max=3").code == 0);
    CHECK(run("converge", "model=qnl\nN_list=64,128").code == 0);
    // Zero stiffness: every constant-free direction is a kernel direction.
    const Run singular = run("converge", "model=qnl\nk=0\nN_list=64,128");
    CHECK(singular.code == 3);
    CHECK(singular.err.find("numerical failure") != std::string::npos);
    const Run bad = run("energy", "model=qcf");
    CHECK(bad.out.empty());
    CHECK(bad.err.find("config error") != std::string::npos);
    const Run small = run("stencil", "N=8");
    CHECK(small.code == 2);
    CHECK(small.err.find("invalid argument") != std::string::npos);
  }

  TEST_CASE("energy output") {
    const Run r = run("energy", "F=1\nN=8");
    CHECK(r.code == 0);
    CHECK(r.out == "model,potential,N,F,amplitude,energy\natomistic,harmonic,8,1,0,0.5\n");
  }

  TEST_CASE("stencil output") {
    const Run r = run("stencil", "N=16");
    CHECK(r.out.rfind("atom,label,ghost,offset,coefficient\n1,interior_atomistic,0,-2,-1\n", 0) == 0);
    CHECK(r.out.find('\r') == std::string::npos);
    const Run report = run("stencil", "N=64\nmodel=qcf", {"", false, true});
    CHECK(report.out.find("symmetry defect") != std::string::npos);
  }

  TEST_CASE("certify output") {
    const Run r = run("certify", "m_max=4", {"", true, true});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row1;
    std::getline(lines, header);
    std::getline(lines, row1);
    CHECK(header == "m,value,weight_norm_sq,min_residual,bound,unsymmetric_residual");
    CHECK(row1.rfind("1,-2,2,", 0) == 0);
    CHECK(r.out.find("4,-2,384,") != std::string::npos);
    CHECK(r.out.find("solves every equation exactly") != std::string::npos);
  }

  TEST_CASE("moments, ghost and sweep run") {
    CHECK(run("moments", "model=qnl", {"", true, true}).code == 0);
    const Run g = run("ghost", "model=qce\nN_list=64,128");
    CHECK(g.out == "model,N,epsilon,ghost_sup,ratio\nqce,64,0.015625,44.8,\nqce,128,0.0078125,89.6,2\n");
    const Run s = run("sweep", "model=continuum\nN_list=64,128,256", {"", false, true});
    CHECK(s.code == 0);
    CHECK(s.out.find("log-log slope") != std::string::npos);
  }

  TEST_CASE("files are byte-identical across runs") {
    const auto dir = std::filesystem::temp_directory_path() / "qclab_cli_test";
    std::filesystem::create_directories(dir);
    const std::string config = "model=qnl\nN_list=64,128,256\n";
    std::string first_csv, first_dat;
    for (int k = 0; k < 2; ++k) {
      const auto csv = dir / ("run" + std::to_string(k) + ".csv");
      CommandOptions options;
      options.out_path = csv.string();
      const Run r = run("converge", config, options);
      REQUIRE(r.code == 0);
      CHECK(r.out.empty());
      const std::string c = slurp(csv);
      const std::string d = slurp(dir / ("run" + std::to_string(k) + ".dat"));
      CHECK(d.rfind("# " + version_string() + "\n# p=1\n", 0) == 0);
      if (k == 0) {
        first_csv = c;
        first_dat = d;
      } else {
        CHECK(c == first_csv);
        CHECK(d == first_dat);
      }
    }
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("unwritable output path") {
    CommandOptions options;
    options.out_path = "/nonexistent-dir/x.csv";
    CHECK(run("energy", "", options).code == 2);
  }

  TEST_CASE("number formatting round-trips") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-2.5e-20) == "-2.5e-20");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  }
}
