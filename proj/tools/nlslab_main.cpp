#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <iostream>

#include "lab/config.hpp"
#include "lab/runs.hpp"
#include "nlslab/error.hpp"

using namespace nlslab;
using namespace nlslab::lab;

int main(int argc, char** argv) {
  CLI::App app{"nlslab: inhomogeneous cubic NLS scattering lab"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir, mode, run_name;
  unsigned jobs = 1;
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Only log warnings and errors");

  struct Sub {
    Experiment kind;
    CLI::App* app;
  };
  std::vector<Sub> subs{
      {Experiment::Direct, app.add_subcommand("direct", "Run the direct problem and build the scattering record")},
      {Experiment::Inverse, app.add_subcommand("inverse", "Sample (a*K)(x0) and deconvolve")},
      {Experiment::Verify, app.add_subcommand("verify", "Run the identity suites")},
      {Experiment::Kernel, app.add_subcommand("kernel", "Tabulate K and its transform against their oracles")}};
  for (auto& s : subs) {
    s.app->add_option("-c,--config", config_path, "Experiment config (JSON, schema_version 1)")->check(CLI::ExistingFile);
    s.app->add_option("-o,--out", out_dir, std::string("Output root (default: $") + kOutputRootEnv + " or ./runs)");
    s.app->add_option("-j,--jobs", jobs, "Worker threads for independent probes")->check(CLI::PositiveNumber);
    s.app->add_option("--run-name", run_name, "Run folder name instead of the timestamp");
  }
  subs[1].app->add_option("-m,--mode", mode, "Functional source")->check(CLI::IsMember({"quadrature", "scattering"}));

  CLI11_PARSE(app, argc, argv);
  if (quiet) spdlog::set_level(spdlog::level::warn);
  spdlog::set_pattern("[%l] %v");

  Experiment kind = Experiment::Direct;
  for (const auto& s : subs) {
    if (s.app->parsed()) kind = s.kind;
  }
  try {
    ExperimentConfig config = config_path.empty() ? default_config(kind) : load_config(config_path);
    if (config.experiment != kind) {
      spdlog::error("config is for '{}' but the '{}' subcommand was given", to_string(config.experiment),
                    to_string(kind));
      return kExitUsage;
    }
    RunOptions options;
    if (!out_dir.empty()) options.out_root = out_dir;
    if (!run_name.empty()) options.run_name = run_name;
    if (!mode.empty()) options.mode = mode == "scattering" ? InverseMode::Scattering : InverseMode::Quadrature;
    options.jobs = jobs;
    const RunResult r = run(config, options);
    std::cout << r.dir.string() << '\n';
    return r.exit_code;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return e.code() == Diagnostic::InvalidInput ? kExitUsage : kExitDiagnostic;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitDiagnostic;
  }
}
