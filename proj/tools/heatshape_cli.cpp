// Batch front door: reads JSON experiment configs, runs the toolkit through
// the C API, writes JSON/CSV reports.
//
// Exit codes: 0 all assertions passed, 1 a mathematical assertion failed,
// 2 configuration or numerical error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "heatshape/heatshape.h"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  int jobs = 1;
};

int run(const std::string& command, const json& config,
        const CommonOpts& opts) {
  char* summary = nullptr;
  const hs_status st =
      hs_run_experiment(command.c_str(), config.dump().c_str(),
                        opts.out_dir.empty() ? nullptr : opts.out_dir.c_str(),
                        opts.jobs, &summary);
  if (summary) {
    std::cout << summary << "\n";
    hs_string_free(summary);
  }
  if (st == HS_OK) return 0;
  if (st == HS_ERR_ASSERTION) {
    std::cerr << "heatshape " << command << ": " << hs_last_error() << "\n";
    return 1;
  }
  std::cerr << "heatshape " << command << ": error: " << hs_last_error()
            << "\n";
  return 2;
}

json load_config(const CommonOpts& opts, bool required) {
  if (opts.config_path.empty()) {
    if (required) throw std::runtime_error("missing --config");
    return json::object();
  }
  std::ifstream in(opts.config_path);
  if (!in)
    throw std::runtime_error("cannot open config '" + opts.config_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return json::parse(buf.str());  // parse errors surface as exit 2
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_opt = true) {
  if (config_opt)
    cmd->add_option("--config", opts.config_path, "JSON experiment config");
  cmd->add_option("--out", opts.out_dir, "output directory for reports");
  cmd->add_option("--jobs", opts.jobs, "worker threads for sweeps")
      ->check(CLI::PositiveNumber);
}

json source_from_shortcuts(double delta, int n) {
  return json{{"kind", "gaussian"}, {"params", {{"delta", delta}}}, {"n", n}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heatshape: ball-stability analysis for Robin heat problems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hs_version()));

  CommonOpts opts;
  // shortcut flags shared by several subcommands
  double eps = 0.5, beta = 1.0, delta = 0.0, r_ball = 1.0;
  int n = 2, mode_l = 0;

  auto* stability = app.add_subcommand("stability", "stability report for the centered ball");
  add_common(stability, opts);
  stability->add_option("--beta", beta, "Robin coefficient override");
  stability->add_option("--delta", delta, "gaussian delta (builds the source)");
  stability->add_option("--n", n, "dimension");
  stability->add_option("--r-ball", r_ball, "ball radius");

  auto* thresholds = app.add_subcommand("thresholds", "instability window (beta1, beta2)");
  add_common(thresholds, opts);
  thresholds->add_option("--delta", delta);
  thresholds->add_option("--n", n);
  thresholds->add_option("--r-ball", r_ball);

  auto* modes = app.add_subcommand("modes", "per-mode second variations Q_l");
  add_common(modes, opts);
  modes->add_option("--beta", beta);
  modes->add_option("--delta", delta);
  modes->add_option("--n", n);
  modes->add_option("--r-ball", r_ball);
  modes->add_option("--mode-l", mode_l, "highest mode degree");

  auto* translate = app.add_subcommand("translate-check",
                                       "spectral J''(0) vs analytic Q_1 along translations");
  add_common(translate, opts);
  translate->add_option("--beta", beta);
  translate->add_option("--delta", delta);
  translate->add_option("--r-ball", r_ball);

  auto* femcmp = app.add_subcommand("fem-compare",
                                    "FEM vs spectral energies; domain-vs-ball comparisons");
  add_common(femcmp, opts);

  auto* counter = app.add_subcommand("counterexample", "two-disk closed forms");
  add_common(counter, opts);
  counter->add_option("--eps", eps, "radius of the second disk");
  counter->add_option("--beta", beta, "Robin coefficient");

  auto* rearr = app.add_subcommand("rearrange-check", "rearrangement domination check");
  add_common(rearr, opts);

  auto* insul = app.add_subcommand("insulation",
                                   "constant vs random insulation profiles");
  add_common(insul, opts);

  auto* sweep = app.add_subcommand("sweep", "stability classification grid -> CSV");
  add_common(sweep, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    const auto got = [sub](const std::string& name) {
      const auto* opt = sub->get_option_no_throw(name);
      return opt && opt->count() > 0;
    };
    const bool has_shortcut_source = got("--delta") && delta > 0.0;
    json config = load_config(
        opts, /*required=*/!(has_shortcut_source || command == "counterexample" ||
                             command == "sweep"));

    // fold shortcut flags into the config
    if (has_shortcut_source) config["source"] = source_from_shortcuts(delta, n);
    if (command == "stability" || command == "modes" ||
        command == "translate-check") {
      if (!config.contains("problem")) config["problem"] = json::object();
      if (got("--beta")) config["problem"]["beta"] = beta;
      if (got("--n")) config["problem"]["n"] = n;
      if (got("--r-ball")) config["problem"]["R"] = r_ball;
      if (has_shortcut_source && !config["problem"].contains("n"))
        config["problem"]["n"] = n;
    }
    if (command == "thresholds") {
      if (!config.contains("problem")) config["problem"] = json::object();
      if (got("--n")) config["problem"]["n"] = n;
      if (got("--r-ball")) config["problem"]["R"] = r_ball;
    }
    if (command == "modes" && mode_l > 0) config["l_max"] = mode_l;
    if (command == "counterexample") {
      if (got("--eps") || !config.contains("eps")) config["eps"] = eps;
      if (got("--beta") || !config.contains("beta"))
        config["beta"] = beta;
    }
    return run(command, config, opts);
  } catch (const json::parse_error& e) {
    std::cerr << "heatshape: config is not valid JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "heatshape: error: " << e.what() << "\n";
    return 2;
  }
}
