#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qdr/config.hpp"
#include "qdr/engine.hpp"
#include "qdr/runner.hpp"

namespace {

int write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 2;
  }
  out << content;
  return 0;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) {
    std::cerr << "warning: " << w << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dispersive readout estimator for charge-parity qubits"};
  app.require_subcommand(1);

  std::string config_path;
  std::string sweep_arg;
  std::string method_str = "both";
  std::string scheme_str;
  std::string out_path;
  double target_fidelity = -1.0;
  int figure = 0;

  auto* spectrum = app.add_subcommand(
      "spectrum", "Sweep offset charge and emit the level spectrum as CSV");
  spectrum->add_option("--config", config_path, "scenario JSON file")
      ->required();
  spectrum->add_option("--sweep", sweep_arg,
                       "sweep spec: key=start:stop:count or key=[v1,v2,...]")
      ->required();
  spectrum->add_option("--out", out_path, "output file (default stdout)");

  auto* chi = app.add_subcommand(
      "chi", "Sweep a parameter and emit dispersive shifts as CSV");
  chi->add_option("--config", config_path, "scenario JSON file")->required();
  chi->add_option("--sweep", sweep_arg,
                  "sweep spec: key=start:stop:count or key=[v1,v2,...]")
      ->required();
  chi->add_option("--method", method_str, "numeric, analytic, or both")
      ->check(CLI::IsMember({"numeric", "analytic", "both"}));
  chi->add_option("--out", out_path, "output file (default stdout)");

  auto* readout = app.add_subcommand(
      "readout", "Emit the readout budget for one scenario as JSON");
  readout->add_option("--config", config_path, "scenario JSON file")
      ->required();
  readout->add_option("--scheme", scheme_str, "dispersive or longitudinal")
      ->check(CLI::IsMember({"dispersive", "longitudinal"}));
  readout->add_option("--target-fidelity", target_fidelity,
                      "override the fidelity target");
  readout->add_option("--out", out_path, "output file (default stdout)");

  auto* reproduce = app.add_subcommand(
      "reproduce", "Regenerate a bundled figure with its embedded checks");
  reproduce->add_option("figure", figure, "figure index, 2 through 7")
      ->required()
      ->check(CLI::Range(2, 7));
  reproduce->add_option("--out", out_path, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectrum->parsed()) {
      const qdr::ScenarioConfig cfg = qdr::load_config(config_path);
      const qdr::SweepSpec sweep = qdr::parse_sweep(sweep_arg);
      std::ostringstream buf;
      const qdr::RunResult rr = qdr::run_spectrum(cfg, sweep, buf);
      print_warnings(rr.warnings);
      const int wc = write_output(out_path, buf.str());
      return wc != 0 ? wc : rr.exit_code;
    }
    if (chi->parsed()) {
      const qdr::ScenarioConfig cfg = qdr::load_config(config_path);
      const qdr::SweepSpec sweep = qdr::parse_sweep(sweep_arg);
      qdr::ChiMethod method = qdr::ChiMethod::both;
      if (method_str == "numeric") {
        method = qdr::ChiMethod::numeric;
      } else if (method_str == "analytic") {
        method = qdr::ChiMethod::analytic;
      }
      std::ostringstream buf;
      const qdr::RunResult rr = qdr::run_chi(cfg, sweep, method, buf);
      print_warnings(rr.warnings);
      const int wc = write_output(out_path, buf.str());
      return wc != 0 ? wc : rr.exit_code;
    }
    if (readout->parsed()) {
      qdr::ScenarioConfig cfg = qdr::load_config(config_path);
      if (!scheme_str.empty()) {
        cfg.readout.scheme = scheme_str == "longitudinal"
                                 ? qdr::ReadoutScheme::longitudinal
                                 : qdr::ReadoutScheme::dispersive;
      }
      if (target_fidelity >= 0.0) {
        if (target_fidelity <= 0.0 || target_fidelity >= 1.0) {
          std::cerr << "error: target fidelity must lie strictly between 0 "
                       "and 1\n";
          return 2;
        }
        cfg.readout.target_fidelity = target_fidelity;
      }
      std::ostringstream buf;
      const qdr::RunResult rr = qdr::run_readout(cfg, buf);
      print_warnings(rr.warnings);
      const int wc = write_output(out_path, buf.str());
      return wc != 0 ? wc : rr.exit_code;
    }
    if (reproduce->parsed()) {
      return qdr::reproduce_figure(figure, out_path, std::cout);
    }
  } catch (const qdr::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qdr::ResonantPairError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
