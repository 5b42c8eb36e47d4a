#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "nlslab/error.hpp"

namespace nlslab::lab {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(Diagnostic::InvalidInput, "config: " + msg); }

/// Reads keys from one object and rejects anything it was not asked about.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) bad(path_ + " must be an object");
  }
  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) bad("unknown key '" + qualified(k) + "'");
    }
  }

  template <class T>
  void get(const std::string& key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      bad("wrong type for '" + qualified(key) + "'");
    }
  }
  const json* child(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }
  std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Experiment parse_experiment(const std::string& s) {
  if (s == "direct") return Experiment::Direct;
  if (s == "inverse") return Experiment::Inverse;
  if (s == "verify") return Experiment::Verify;
  if (s == "kernel") return Experiment::Kernel;
  bad("unknown experiment '" + s + "'");
}

InverseMode parse_mode(const std::string& s) {
  if (s == "quadrature") return InverseMode::Quadrature;
  if (s == "scattering") return InverseMode::Scattering;
  bad("unknown inverse mode '" + s + "'");
}

void positive(double v, const char* key) {
  if (!(v > 0.0) || !std::isfinite(v)) bad(std::string(key) + " must be positive");
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::Direct: return "direct";
    case Experiment::Inverse: return "inverse";
    case Experiment::Verify: return "verify";
    case Experiment::Kernel: return "kernel";
  }
  return "?";
}

std::string to_string(InverseMode m) { return m == InverseMode::Quadrature ? "quadrature" : "scattering"; }

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"gaussian-bump", "sech2", "two-bump", "zero"};
  return names;
}

spectral::Grid1D GridConfig::make(double t_final) const {
  if (kind == "horizon") return spectral::Grid1D::for_horizon(t_final, xi_band, dx);
  return spectral::Grid1D(n_points, half_length);
}

std::function<double(double)> InhomogeneitySpec::function() const {
  const double A = amplitude, c = center, w = width;
  if (builtin == "gaussian-bump") {
    return [=](double x) { return A * std::exp(-std::pow((x - c) / w, 2)); };
  }
  if (builtin == "sech2") {
    return [=](double x) {
      const double s = 1.0 / std::cosh((x - c) / w);
      return A * s * s;
    };
  }
  if (builtin == "two-bump") {
    return [=](double x) {
      return A * (std::exp(-std::pow((x - c - 1.5) / w, 2)) + 0.5 * std::exp(-std::pow((x - c + 1.5) / w, 2)));
    };
  }
  if (builtin == "zero") return [](double) { return 0.0; };
  bad("unknown builtin '" + builtin + "'");
}

void ExperimentConfig::validate() const {
  if (grid.kind != "fixed" && grid.kind != "horizon") bad("grid.kind must be fixed or horizon");
  if (grid.kind == "fixed") {
    if (grid.n_points < 16 || grid.n_points % 2 != 0) bad("grid.n_points must be even and >= 16");
    positive(grid.half_length, "grid.half_length");
  } else {
    positive(grid.xi_band, "grid.xi_band");
    positive(grid.dx, "grid.dx");
  }
  positive(solver.dt, "solver.dt");
  positive(solver.dt_cap, "solver.dt_cap");
  positive(solver.t_final, "solver.t_final");
  positive(solver.mass_tolerance, "solver.mass_tolerance");
  if (!std::is_sorted(solver.checkpoint_times.begin(), solver.checkpoint_times.end())) {
    bad("solver.checkpoint_times must be increasing");
  }
  const auto& names = builtin_names();
  if (std::find(names.begin(), names.end(), inhomogeneity.builtin) == names.end()) {
    bad("unknown builtin '" + inhomogeneity.builtin + "'");
  }
  if (!std::isfinite(inhomogeneity.amplitude)) bad("inhomogeneity.amplitude must be finite");
  positive(inhomogeneity.width, "inhomogeneity.width");
  if (!(datum.epsilon >= 0.0)) bad("datum.epsilon must be >= 0");
  if (!(probes.hi > probes.lo)) bad("probes.hi must exceed probes.lo");
  positive(probes.spacing, "probes.spacing");
  if (probes.eps.empty()) bad("probes.eps must not be empty");
  for (double e : probes.eps) positive(e, "probes.eps entries");
  if (inverse.regularization != "cutoff" && inverse.regularization != "tikhonov") {
    bad("inverse.regularization must be cutoff or tikhonov");
  }
  if (inverse.basis != "operator" && inverse.basis != "periodic") bad("inverse.basis must be operator or periodic");
  positive(inverse.tau, "inverse.tau");
  if (inverse.regularization == "tikhonov") positive(inverse.lambda, "inverse.lambda");
  positive(inverse.band_tolerance, "inverse.band_tolerance");
  positive(inverse.zero_tolerance, "inverse.zero_tolerance");
  positive(verify.f2_constant_scale, "verify.f2_constant_scale");
  positive(kernel.x_step, "kernel.x_step");
  positive(kernel.xi_step, "kernel.xi_step");
  if (!(kernel.x_max >= kernel.x_min)) bad("kernel.x_max must be >= kernel.x_min");
  if (!(kernel.xi_min > 0.0) || !(kernel.xi_max >= kernel.xi_min)) bad("kernel xi range must be positive and ordered");
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  Section root(j, "");
  int version = -1;
  root.get("schema_version", version);
  if (version != kSchemaVersion) bad("schema_version must be " + std::to_string(kSchemaVersion));
  std::string kind = "direct";
  root.get("experiment", kind);
  c.experiment = parse_experiment(kind);
  if (const json* g = root.child("grid")) {
    Section s(*g, "grid");
    s.get("kind", c.grid.kind);
    s.get("n_points", c.grid.n_points);
    s.get("half_length", c.grid.half_length);
    s.get("xi_band", c.grid.xi_band);
    s.get("dx", c.grid.dx);
    s.finish();
  }
  if (const json* g = root.child("solver")) {
    Section s(*g, "solver");
    s.get("dt", c.solver.dt);
    s.get("dt_cap", c.solver.dt_cap);
    s.get("sqrt_growth", c.solver.sqrt_growth);
    s.get("t_final", c.solver.t_final);
    s.get("mass_tolerance", c.solver.mass_tolerance);
    s.get("checkpoint_times", c.solver.checkpoint_times);
    s.finish();
  }
  if (const json* g = root.child("inhomogeneity")) {
    Section s(*g, "inhomogeneity");
    s.get("builtin", c.inhomogeneity.builtin);
    s.get("amplitude", c.inhomogeneity.amplitude);
    s.get("center", c.inhomogeneity.center);
    s.get("width", c.inhomogeneity.width);
    s.finish();
  }
  if (const json* g = root.child("datum")) {
    Section s(*g, "datum");
    s.get("epsilon", c.datum.epsilon);
    s.get("center", c.datum.center);
    s.finish();
  }
  if (const json* g = root.child("probes")) {
    Section s(*g, "probes");
    s.get("lo", c.probes.lo);
    s.get("hi", c.probes.hi);
    s.get("spacing", c.probes.spacing);
    s.get("eps", c.probes.eps);
    s.finish();
  }
  if (const json* g = root.child("inverse")) {
    Section s(*g, "inverse");
    std::string mode = to_string(c.inverse.mode);
    s.get("mode", mode);
    c.inverse.mode = parse_mode(mode);
    s.get("regularization", c.inverse.regularization);
    s.get("tau", c.inverse.tau);
    s.get("lambda", c.inverse.lambda);
    s.get("basis", c.inverse.basis);
    s.get("band_tolerance", c.inverse.band_tolerance);
    s.get("zero_tolerance", c.inverse.zero_tolerance);
    s.finish();
  }
  if (const json* g = root.child("verify")) {
    Section s(*g, "verify");
    s.get("f2_constant_scale", c.verify.f2_constant_scale);
    s.get("smoke_fields", c.verify.smoke_fields);
    s.finish();
  }
  if (const json* g = root.child("kernel")) {
    Section s(*g, "kernel");
    s.get("x_min", c.kernel.x_min);
    s.get("x_max", c.kernel.x_max);
    s.get("x_step", c.kernel.x_step);
    s.get("xi_min", c.kernel.xi_min);
    s.get("xi_max", c.kernel.xi_max);
    s.get("xi_step", c.kernel.xi_step);
    s.finish();
  }
  if (const json* o = root.child("output_dir"); o && !o->is_null()) {
    if (!o->is_string()) bad("wrong type for 'output_dir'");
    c.output_dir = o->get<std::string>();
  }
  root.get("seed", c.seed);
  root.finish();
  c.validate();
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["experiment"] = to_string(c.experiment);
  j["grid"] = {{"kind", c.grid.kind},
               {"n_points", c.grid.n_points},
               {"half_length", c.grid.half_length},
               {"xi_band", c.grid.xi_band},
               {"dx", c.grid.dx}};
  j["solver"] = {{"dt", c.solver.dt},
                 {"dt_cap", c.solver.dt_cap},
                 {"sqrt_growth", c.solver.sqrt_growth},
                 {"t_final", c.solver.t_final},
                 {"mass_tolerance", c.solver.mass_tolerance},
                 {"checkpoint_times", c.solver.checkpoint_times}};
  j["inhomogeneity"] = {{"builtin", c.inhomogeneity.builtin},
                        {"amplitude", c.inhomogeneity.amplitude},
                        {"center", c.inhomogeneity.center},
                        {"width", c.inhomogeneity.width}};
  j["datum"] = {{"epsilon", c.datum.epsilon}, {"center", c.datum.center}};
  j["probes"] = {{"lo", c.probes.lo}, {"hi", c.probes.hi}, {"spacing", c.probes.spacing}, {"eps", c.probes.eps}};
  j["inverse"] = {{"mode", to_string(c.inverse.mode)},
                  {"regularization", c.inverse.regularization},
                  {"tau", c.inverse.tau},
                  {"lambda", c.inverse.lambda},
                  {"basis", c.inverse.basis},
                  {"band_tolerance", c.inverse.band_tolerance},
                  {"zero_tolerance", c.inverse.zero_tolerance}};
  j["verify"] = {{"f2_constant_scale", c.verify.f2_constant_scale}, {"smoke_fields", c.verify.smoke_fields}};
  j["kernel"] = {{"x_min", c.kernel.x_min},   {"x_max", c.kernel.x_max},   {"x_step", c.kernel.x_step},
                 {"xi_min", c.kernel.xi_min}, {"xi_max", c.kernel.xi_max}, {"xi_step", c.kernel.xi_step}};
  j["output_dir"] = c.output_dir ? json(*c.output_dir) : json(nullptr);
  j["seed"] = c.seed;
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Diagnostic::Io, "cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void save_config(const std::filesystem::path& path, const ExperimentConfig& c) {
  std::ofstream out(path);
  if (!out) throw Error(Diagnostic::Io, "cannot write " + path.string());
  out << config_to_json(c).dump(2) << '\n';
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  if (e == Experiment::Direct) c.grid.kind = "horizon";
  if (e == Experiment::Inverse) c.inhomogeneity.builtin = "gaussian-bump";
  return c;
}

}  // namespace nlslab::lab
