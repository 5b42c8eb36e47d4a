#pragma once

#include <filesystem>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "nlslab/spectral/grid.hpp"

namespace nlslab::lab {

inline constexpr int kSchemaVersion = 1;

enum class Experiment { Direct, Inverse, Verify, Kernel };
enum class InverseMode { Quadrature, Scattering };

struct GridConfig {
  std::string kind = "fixed";  // fixed | horizon
  std::size_t n_points = 4096;
  double half_length = 60.0;
  double xi_band = 12.0;
  double dx = 0.21875;

  spectral::Grid1D make(double t_final) const;
  bool operator==(const GridConfig&) const = default;
};

struct SolverSection {
  double dt = 0.01;
  double dt_cap = 0.1;
  bool sqrt_growth = true;
  double t_final = 1024.0;
  double mass_tolerance = 1e-8;
  std::vector<double> checkpoint_times;  // empty: dyadic default
  bool operator==(const SolverSection&) const = default;
};

/// Named builtin a(x) with amplitude A, center c and width w:
/// gaussian-bump A e^{-((x-c)/w)^2}, sech2 A sech^2((x-c)/w),
/// two-bump A [e^{-((x-c-1.5)/w)^2} + 0.5 e^{-((x-c+1.5)/w)^2}], zero.
struct InhomogeneitySpec {
  std::string builtin = "sech2";
  double amplitude = 1.0;
  double center = 0.0;
  double width = 1.0;

  std::function<double(double)> function() const;
  bool is_zero() const { return builtin == "zero" || amplitude == 0.0; }
  bool operator==(const InhomogeneitySpec&) const = default;
};

/// u0 = epsilon exp(-(x - center)^2 / 4).
struct DatumSpec {
  double epsilon = 0.1;
  double center = 0.0;
  bool operator==(const DatumSpec&) const = default;
};

struct ProbeSection {
  double lo = -8.0;
  double hi = 8.0;
  double spacing = 0.5;
  std::vector<double> eps{0.05, 0.1, 0.2};
  bool operator==(const ProbeSection&) const = default;
};

struct InverseSection {
  InverseMode mode = InverseMode::Quadrature;
  std::string regularization = "cutoff";  // cutoff | tikhonov
  double tau = 1e-6;
  double lambda = 0.0;
  std::string basis = "operator";  // operator | periodic
  double band_tolerance = 0.1;
  double zero_tolerance = 1e-6;
  bool operator==(const InverseSection&) const = default;
};

struct VerifySection {
  double f2_constant_scale = 1.0;
  std::size_t smoke_fields = 2;
  bool operator==(const VerifySection&) const = default;
};

struct KernelSection {
  double x_min = -6.0, x_max = 6.0, x_step = 0.25;
  double xi_min = 0.25, xi_max = 6.0, xi_step = 0.25;
  bool operator==(const KernelSection&) const = default;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::Direct;
  GridConfig grid;
  SolverSection solver;
  InhomogeneitySpec inhomogeneity;
  DatumSpec datum;
  ProbeSection probes;
  InverseSection inverse;
  VerifySection verify;
  KernelSection kernel;
  std::optional<std::string> output_dir;
  std::uint64_t seed = 1;

  /// Throws Error(InvalidInput) naming the offending key.
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

std::string to_string(Experiment e);
std::string to_string(InverseMode m);

/// Strict parse: every key must be known and schema_version must match.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const ExperimentConfig& c);

/// Defaults for each experiment kind, as written by `nlslab init`.
ExperimentConfig default_config(Experiment e);

const std::vector<std::string>& builtin_names();

}  // namespace nlslab::lab
