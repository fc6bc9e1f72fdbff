#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "covertgeo/figures.hpp"
#include "covertgeo/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerifyFailed = 3;

struct Args {
  std::string command;
  std::string config_path;
  std::string sweep;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  int fig_id = 0;
  std::string check;
};

void split_sweep(const std::string& sweep, std::string& key, std::vector<double>& values) {
  const auto eq = sweep.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= sweep.size()) {
    throw covertgeo::ConfigError("--sweep expects key=v1,v2,...");
  }
  key = sweep.substr(0, eq);
  std::stringstream ss(sweep.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw covertgeo::ConfigError("--sweep value '" + item + "' is not a number");
    }
  }
  if (values.empty()) throw covertgeo::ConfigError("--sweep needs at least one value");
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw covertgeo::ConfigError("cannot open output file '" + path + "'");
  out << text;
}

int run(const Args& args) {
  covertgeo::ConfigBundle bundle =
      args.config_path.empty() ? covertgeo::ConfigBundle{} : covertgeo::load_config(args.config_path);
  if (args.seed) bundle.sim.seed = *args.seed;
  if (args.trials) bundle.sim.trials = *args.trials;

  if (args.command == "verify") {
    const covertgeo::VerifyResult res = covertgeo::run_verify(args.check, bundle);
    write_output(args.out_path, res.json_report + "\n");
    return res.pass ? kExitOk : kExitVerifyFailed;
  }

  std::ostringstream out;
  if (args.command == "figure") {
    covertgeo::run_figure(args.fig_id, bundle, out);
  } else {
    std::string key;
    std::vector<double> values;
    if (!args.sweep.empty()) split_sweep(args.sweep, key, values);
    covertgeo::run_command(args.command, bundle, key, values, out);
  }
  write_output(args.out_path, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covert-link metrics in a Poisson field of interferers"};
  app.require_subcommand(1);

  Args args;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "JSON config file (defaults when omitted)");
    cmd->add_option("--out", args.out_path, "output file (stdout when omitted)");
    cmd->add_option("--seed", args.seed, "override the Monte Carlo seed");
    cmd->add_option("--trials", args.trials, "override the Monte Carlo trial count");
  };
  auto add_sweep = [&](CLI::App* cmd) {
    cmd->add_option("--sweep", args.sweep,
                    "sweep a NetworkConfig/CovertRequirements field: key=v1,v2,...");
  };

  for (const char* name : {"eval", "covert-prob", "outage", "throughput", "simulate"}) {
    CLI::App* cmd = app.add_subcommand(name);
    add_common(cmd);
    add_sweep(cmd);
  }
  CLI::App* fig = app.add_subcommand("figure", "emit a paper-style sweep as CSV");
  add_common(fig);
  fig->add_option("--fig", args.fig_id, "figure id, 2..7")->required();
  CLI::App* ver = app.add_subcommand("verify", "run a named analytical verifier");
  add_common(ver);
  ver->add_option("--check", args.check, "thm1|thm2|cor1|cor2|prop3|series-vs-levy|rate-roundtrip")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  args.command = app.get_subcommands().front()->get_name();
  try {
    return run(args);
  } catch (const covertgeo::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
