#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "config.hpp"
#include "oplog.hpp"

namespace nlslab::lab {

/// Process exit codes. A failed tolerance 1e-k maps to kToleranceBase + k, so
/// the strictest failure gives the largest code.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDiagnostic = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFlagged = 3;
inline constexpr int kToleranceBase = 10;

int tolerance_exit_code(double tolerance);

/// Environment variable naming the default output root.
inline constexpr const char* kOutputRootEnv = "NLSLAB_OUTPUT_ROOT";

struct RunOptions {
  std::optional<std::filesystem::path> out_root;
  std::optional<InverseMode> mode;
  unsigned jobs = 1;
  std::optional<std::string> run_name;  // replaces the timestamped folder name
};

struct RunResult {
  int exit_code = kExitOk;
  std::filesystem::path dir;
  nlohmann::json summary;
};

/// --out, then config.output_dir, then $NLSLAB_OUTPUT_ROOT, then ./runs.
std::filesystem::path resolve_output_root(const ExperimentConfig& config, const RunOptions& options);

/// Creates <root>/<kind>-<YYYYmmdd-HHMMSS>[-N] with csv/, plots/ and traces/.
std::filesystem::path make_run_dir(const std::filesystem::path& root, const std::string& kind,
                                   const std::optional<std::string>& name = std::nullopt);

/// Every run writes config.json, log.jsonl and summary.json into its folder.
RunResult run_direct(const ExperimentConfig& config, const RunOptions& options = {});
RunResult run_inverse(const ExperimentConfig& config, const RunOptions& options = {});
RunResult run_verify(const ExperimentConfig& config, const RunOptions& options = {});
RunResult run_kernel(const ExperimentConfig& config, const RunOptions& options = {});

RunResult run(const ExperimentConfig& config, const RunOptions& options = {});

/// Calls fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace nlslab::lab
