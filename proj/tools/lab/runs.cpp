#include "runs.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <random>
#include <thread>

#include "nlslab/error.hpp"
#include "nlslab/functionals/born.hpp"
#include "nlslab/functionals/kernel.hpp"
#include "nlslab/functionals/qeps.hpp"
#include "nlslab/functionals/quadrature.hpp"
#include "nlslab/functionals/trilinear.hpp"
#include "nlslab/inversion/inversion.hpp"
#include "nlslab/scattering/record_io.hpp"
#include "nlslab/scattering/scattering.hpp"
#include "nlslab/solver/trace_io.hpp"
#include "nlslab/spectral/fourier.hpp"
#include "nlslab/spectral/operators.hpp"
#include "svg.hpp"

namespace nlslab::lab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  Csv(const fs::path& path, const std::string& header) : path_(path), out_(path) {
    if (!out_) throw Error(Diagnostic::Io, "cannot write " + path.string());
    out_ << header << '\n';
  }
  template <class... T>
  void row(const T&... cells) {
    std::string line;
    ((line += cell(cells) + ','), ...);
    line.pop_back();
    out_ << line << '\n';
  }
  const fs::path& path() const { return path_; }
  void close() { out_.close(); }

 private:
  static std::string cell(double v) { return g17(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  fs::path path_;
  std::ofstream out_;
};

struct Context {
  ExperimentConfig config;
  fs::path dir;
  OpLog log;
  unsigned jobs;

  Context(const ExperimentConfig& c, const RunOptions& o)
      : config(c), dir(make_run_dir(resolve_output_root(c, o), to_string(c.experiment), o.run_name)),
        log(dir / "log.jsonl"), jobs(std::max(1u, o.jobs)) {
    save_config(dir / "config.json", config);
    log.file("config", {{"experiment", to_string(c.experiment)}}, dir / "config.json");
  }

  fs::path csv(const std::string& name) const { return dir / "csv" / name; }
  fs::path plot(const std::string& name) const { return dir / "plots" / name; }

  /// Closes, hashes and logs a finished CSV.
  void logged(Csv& csv, const std::string& op, const json& inputs) {
    csv.close();
    log.file(op, inputs, csv.path());
  }

  RunResult finish(json summary, int code) {
    summary["exit_code"] = code;
    summary["run_dir"] = dir.string();
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
    return {code, dir, std::move(summary)};
  }
};

solver::SolverConfig solver_config(const SolverSection& s) {
  solver::SolverConfig c;
  c.dt = s.dt;
  c.dt_cap = s.dt_cap;
  c.sqrt_growth = s.sqrt_growth;
  c.t_final = s.t_final;
  c.mass_tolerance = s.mass_tolerance;
  c.checkpoint_times = s.checkpoint_times;
  return c;
}

json grid_json(const spectral::Grid1D& g) {
  return {{"n_points", g.size()}, {"half_length", g.half_length()}, {"dx", g.dx()}};
}

json inhomogeneity_json(const InhomogeneitySpec& a) {
  return {{"builtin", a.builtin}, {"amplitude", a.amplitude}, {"center", a.center}, {"width", a.width}};
}

std::vector<double> range(double lo, double hi, double step) {
  std::vector<double> v;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) v.push_back(lo + static_cast<double>(i) * step);
  return v;
}

}  // namespace

int tolerance_exit_code(double tolerance) {
  const int k = static_cast<int>(std::lround(-std::log10(tolerance)));
  return kToleranceBase + std::clamp(k, 0, 100);
}

fs::path resolve_output_root(const ExperimentConfig& config, const RunOptions& options) {
  if (options.out_root) return *options.out_root;
  if (config.output_dir) return *config.output_dir;
  if (const char* env = std::getenv(kOutputRootEnv); env && *env) return env;
  return "runs";
}

fs::path make_run_dir(const fs::path& root, const std::string& kind, const std::optional<std::string>& name) {
  std::string base;
  if (name) {
    base = *name;
  } else {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", &tm);
    base = kind + "-" + stamp;
  }
  fs::path dir = root / base;
  for (int i = 2; fs::exists(dir); ++i) dir = root / (base + "-" + std::to_string(i));
  for (const char* sub : {"csv", "plots", "traces"}) fs::create_directories(dir / sub);
  return dir;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(jobs, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

RunResult run_direct(const ExperimentConfig& config, const RunOptions& options) {
  Context ctx(config, options);
  const auto grid = config.grid.make(config.solver.t_final);
  const auto a = solver::check_admissible(spectral::RealField::sample(grid, config.inhomogeneity.function()));
  const double eps = config.datum.epsilon, x0 = config.datum.center;
  const auto u0 = spectral::ComplexField::sample(
      grid, [&](double x) { return Complex(eps * std::exp(-(x - x0) * (x - x0) / 4.0)); });
  const json inputs{{"grid", grid_json(grid)},
                    {"inhomogeneity", inhomogeneity_json(config.inhomogeneity)},
                    {"datum", {{"epsilon", eps}, {"center", x0}}},
                    {"t_final", config.solver.t_final}};
  spdlog::info("direct: n={} L={} t_final={} eps={}", grid.size(), grid.half_length(), config.solver.t_final, eps);

  solver::SolutionTrace trace;
  const auto record = scattering::scattering_map(u0, a, solver_config(config.solver), {}, &trace);
  ctx.log.record("scattering_map", inputs,
                 {{"steps", record.steps},
                  {"fitted_rate", record.fitted_rate ? json(*record.fitted_rate) : json(nullptr)},
                  {"unmodified_rate", record.unmodified_rate ? json(*record.unmodified_rate) : json(nullptr)},
                  {"converged", record.converged},
                  {"max_mass_drift", record.solver.max_mass_drift}});

  solver::write_trace(ctx.dir / "traces" / "trace.bin", trace);
  ctx.log.file("write_trace", inputs, ctx.dir / "traces" / "trace.bin");
  scattering::write_record_json(ctx.dir / "traces" / "record.json", record);
  ctx.log.file("write_record", inputs, ctx.dir / "traces" / "record.json");

  Csv cauchy(ctx.csv("cauchy.csv"), "T,diff_w,diff_fhat");
  std::vector<double> ts, dw, df;
  for (std::size_t i = 0; i < record.cauchy_diffs.size(); ++i) {
    const double T = record.cauchy_diffs[i].T;
    const double u = i < record.unmodified_diffs.size() ? record.unmodified_diffs[i].diff : NAN;
    cauchy.row(T, record.cauchy_diffs[i].diff, u);
    ts.push_back(T);
    dw.push_back(record.cauchy_diffs[i].diff);
    df.push_back(u);
  }
  ctx.logged(cauchy, "cauchy_differences", inputs);

  Csv rates(ctx.csv("rates.csv"), "quantity,value");
  rates.row("fitted_rate", record.fitted_rate.value_or(NAN));
  rates.row("unmodified_rate", record.unmodified_rate.value_or(NAN));
  rates.row("delta_fit", record.delta_fit.value_or(NAN));
  rates.row("max_mass_drift", record.solver.max_mass_drift);
  rates.row("fit_start", record.fit_start);
  ctx.logged(rates, "fit_rates", inputs);

  Csv wp(ctx.csv("w_plus.csv"), "xi,re,im,abs");
  std::vector<double> xis, mags;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Complex v = (*record.w_plus)[k];
    wp.row(grid.xi(k), v.real(), v.imag(), std::abs(v));
    xis.push_back(grid.xi(k));
    mags.push_back(std::abs(v));
  }
  ctx.logged(wp, "w_plus", inputs);

  Csv diag(ctx.csv("diagnostics.csv"), "t,mass_drift,sup_decay,fhat_sup");
  const auto& d = record.solver;
  for (std::size_t i = 0; i < d.times.size(); ++i) diag.row(d.times[i], d.mass_drift[i], d.sup_decay[i], d.fhat_sup[i]);
  ctx.logged(diag, "solver_diagnostics", inputs);

  write_svg(ctx.plot("cauchy.svg"), {{"|w(2T)-w(T)|", ts, dw, true}, {"|f(2T)-f(T)|, B=0", ts, df, true}},
            {"Dyadic Cauchy differences", "T", "sup difference", true, true});
  write_svg(ctx.plot("w_plus.svg"), {{"|w+(xi)|", xis, mags, false}},
            {"Modified scattering profile", "xi", "|w+|", false, false});

  json summary{{"experiment", "direct"},
               {"steps", record.steps},
               {"converged", record.converged},
               {"accepted", record.solver.accepted},
               {"strictly_decreasing", record.strictly_decreasing},
               {"fitted_rate", record.fitted_rate ? json(*record.fitted_rate) : json(nullptr)},
               {"unmodified_rate", record.unmodified_rate ? json(*record.unmodified_rate) : json(nullptr)},
               {"max_mass_drift", record.solver.max_mass_drift},
               {"diagnostic", record.diagnostic}};
  const int code = record.converged ? kExitOk : kExitFlagged;
  if (code != kExitOk) spdlog::warn("direct: record flagged: {}", record.diagnostic);
  return ctx.finish(std::move(summary), code);
}

RunResult run_inverse(const ExperimentConfig& config, const RunOptions& options) {
  Context ctx(config, options);
  const InverseMode mode = options.mode.value_or(config.inverse.mode);
  const auto probes = inversion::ProbeSet::uniform(config.probes.lo, config.probes.hi, config.probes.spacing,
                                                   config.probes.eps);
  const auto grid = config.grid.make(config.solver.t_final);
  probes.validate(grid);
  const auto a_fn = config.inhomogeneity.function();
  const auto a = solver::check_admissible(spectral::RealField::sample(grid, a_fn));
  const std::size_t nc = probes.centers.size();
  const json base{{"grid", grid_json(grid)}, {"inhomogeneity", inhomogeneity_json(config.inhomogeneity)},
                  {"mode", to_string(mode)}};
  spdlog::info("inverse: mode={} centers={} jobs={}", to_string(mode), nc, ctx.jobs);

  std::vector<double> born(nc, NAN), floor(nc, 0.0);
  parallel_for(nc, ctx.jobs, [&](std::size_t i) {
    const double c = probes.centers[i];
    const auto b = functionals::born_functional(a, functionals::GaussianProbe{c});
    const auto k = functionals::kernel_convolution(a, c);
    born[i] = b.value;
    floor[i] = std::abs(b.value - k.value) + b.error_estimate + b.tail_bound + k.error_estimate;
    ctx.log.record("born_functional", {{"base", inputs_hash(base)}, {"center", c}},
                   {{"value", b.value}, {"error_estimate", b.error_estimate}, {"tail_bound", b.tail_bound},
                    {"kernel_route", k.value}});
  });

  std::vector<std::optional<Complex>> values(nc);
  json summary{{"experiment", "inverse"}, {"mode", to_string(mode)}};
  double noise = *std::max_element(floor.begin(), floor.end());
  if (mode == InverseMode::Quadrature) {
    for (std::size_t i = 0; i < nc; ++i) values[i] = Complex(born[i], 0.0);
  } else {
    inversion::ScatteringModeOptions so;
    so.grid = grid;
    so.solver = solver_config(config.solver);
    const auto& eps_list = probes.eps_list;
    std::vector<Complex> q(eps_list.size());
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
      const auto lattice = functionals::qeps_lattice(eps_list[e]);
      const auto r = functionals::q_eps(inversion::gaussian_probe(lattice, 0.0), eps_list[e]);
      q[e] = r.value;
      ctx.log.record("q_eps", {{"eps", eps_list[e]}},
                     {{"re", r.value.real()}, {"im", r.value.imag()}, {"error_estimate", r.error_estimate}});
    }
    const std::size_t ne = eps_list.size();
    std::vector<std::optional<Complex>> sweep(nc * ne);
    std::vector<std::string> failures(nc * ne);
    parallel_for(nc * ne, ctx.jobs, [&](std::size_t idx) {
      const std::size_t i = idx / ne, e = idx % ne;
      try {
        const auto ex = inversion::functional_from_scattering(a_fn, probes.centers[i], eps_list[e], q[e], so);
        sweep[idx] = ex.value;
        ctx.log.record("extract_functional", {{"base", inputs_hash(base)}, {"center", probes.centers[i]},
                                              {"eps", eps_list[e]}},
                       {{"re", ex.value.real()}, {"im", ex.value.imag()}});
      } catch (const Error& err) {
        failures[idx] = err.what();
        spdlog::warn("inverse: probe {} eps {} failed: {}", probes.centers[i], eps_list[e], err.what());
      }
    });
    Csv sw(ctx.csv("functional_sweep.csv"), "center,eps,I_re,I_im,born,abs_error,gap");
    std::vector<double> slopes;
    for (std::size_t i = 0; i < nc; ++i) {
      std::vector<double> es, errs;
      for (std::size_t e = 0; e < ne; ++e) {
        const auto& v = sweep[i * ne + e];
        const double err = v ? std::abs(v->real() - born[i]) : NAN;
        sw.row(probes.centers[i], eps_list[e], v ? v->real() : NAN, v ? v->imag() : NAN, born[i], err, !v);
        if (v && err > 0.0) {
          es.push_back(eps_list[e]);
          errs.push_back(err);
        }
      }
      if (es.size() >= 2) slopes.push_back(solver::loglog_slope(es, errs, 0.0));
    }
    ctx.logged(sw, "functional_sweep", base);
    // Samples come from the smallest eps; its O(eps) remainder sets the noise floor.
    const std::size_t e_min =
        static_cast<std::size_t>(std::min_element(eps_list.begin(), eps_list.end()) - eps_list.begin());
    for (std::size_t i = 0; i < nc; ++i) values[i] = sweep[i * ne + e_min];
    noise = std::max(noise, eps_list[e_min]);
    if (!slopes.empty()) {
      std::vector<double> s = slopes;
      std::nth_element(s.begin(), s.begin() + s.size() / 2, s.end());
      summary["functional_error_slope_median"] = s[s.size() / 2];
    }
  }

  auto samples = inversion::assemble_convolution(probes.centers, values);
  samples.noise_floor = noise;
  Csv gs(ctx.csv("samples.csv"), "center,g,imag,gap");
  for (std::size_t i = 0; i < nc; ++i) {
    const bool gap = std::find(samples.gaps.begin(), samples.gaps.end(), i) != samples.gaps.end();
    gs.row(samples.centers[i], samples.g[i], samples.imag[i], gap);
  }
  ctx.logged(gs, "assemble_convolution", base);
  summary["noise_floor"] = noise;
  summary["gaps"] = samples.gaps;
  if (!samples.complete()) {
    spdlog::error("inverse: {} probe centers missing; partial results written", samples.gaps.size());
    return ctx.finish(std::move(summary), kExitDiagnostic);
  }

  inversion::Regularization reg;
  reg.kind = config.inverse.regularization == "tikhonov" ? inversion::RegularizationKind::Tikhonov
                                                         : inversion::RegularizationKind::SpectralCutoff;
  reg.tau = config.inverse.tau;
  reg.lambda = config.inverse.lambda;
  reg.basis = config.inverse.basis == "periodic" ? inversion::DeconvolutionBasis::PeriodicFourier
                                                 : inversion::DeconvolutionBasis::ConvolutionOperator;
  const auto rec = inversion::deconvolve(samples, reg);
  std::vector<double> truth;
  for (double c : probes.centers) truth.push_back(a_fn(c));
  const auto band = inversion::band_projection(rec, truth);
  const double err = inversion::band_error(rec, truth);

  Csv rc(ctx.csv("recovery.csv"), "x,a_true,a_rec,a_band");
  for (std::size_t i = 0; i < nc; ++i) rc.row(rec.x[i], truth[i], rec.a[i], band[i]);
  const json reg_json{{"regularization", config.inverse.regularization}, {"tau", reg.tau}, {"lambda", reg.lambda},
                      {"basis", config.inverse.basis}};
  ctx.logged(rc, "deconvolve", {{"base", inputs_hash(base)}, {"regularization", reg_json}});
  Csv sp(ctx.csv("spectrum.csv"), "index,value,retained");
  for (std::size_t k = 0; k < rec.spectrum.size(); ++k) sp.row(k, rec.spectrum[k], static_cast<bool>(rec.retained[k]));
  ctx.logged(sp, "deconvolve_spectrum", reg_json);

  write_svg(ctx.plot("recovery.svg"),
            {{"a true", rec.x, truth, false}, {"a band", rec.x, band, false}, {"a reconstructed", rec.x, rec.a, true}},
            {"Recovered inhomogeneity", "x", "a(x)", false, false});
  write_svg(ctx.plot("samples.svg"), {{"g(x0)", samples.centers, samples.g, true}},
            {"Convolution samples", "x0", "g", false, false});

  const double tol = config.inhomogeneity.is_zero() ? config.inverse.zero_tolerance : config.inverse.band_tolerance;
  summary["band_error"] = err;
  summary["band_tolerance"] = tol;
  summary["retained_modes"] = rec.retained_count;
  summary["regularization"] = reg_json;
  const bool ok = err < tol;
  summary["pass"] = ok;
  spdlog::info("inverse: band error {:.3e} (tolerance {:.1e})", err, tol);
  return ctx.finish(std::move(summary), ok ? kExitOk : tolerance_exit_code(tol));
}

RunResult run_verify(const ExperimentConfig& config, const RunOptions& options) {
  Context ctx(config, options);
  struct Row {
    std::string name;
    double residual;
    double tolerance;
  };
  std::vector<Row> rows;
  auto add = [&](const std::string& name, double residual, double tol, json inputs) {
    rows.push_back({name, residual, tol});
    ctx.log.record("identity", std::move(inputs), {{"name", name}, {"residual", residual}, {"tolerance", tol}});
  };
  using spectral::ComplexField;
  const spectral::Grid1D g = spectral::Grid1D::default_grid();
  auto gaussian = [](const spectral::Grid1D& gr, double c) {
    return ComplexField::sample(gr, [c](double x) { return Complex(std::exp(-(x - c) * (x - c) / 4.0)); });
  };
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto smoke = [&](const spectral::Grid1D& gr) {
    const Complex amp(normal(rng), normal(rng));
    const double c = normal(rng), k = 0.5 * normal(rng);
    return ComplexField::sample(gr, [=](double x) { return amp * std::exp(-(x - c) * (x - c) / 3.0) * std::polar(1.0, k * x); });
  };

  {
    const auto f = smoke(g);
    const auto back = spectral::fourier_inverse(spectral::fourier_forward(f));
    add("fourier_round_trip", (back - f).l2_norm() / f.l2_norm(), 1e-12, {{"seed", config.seed}});
    add("plancherel", std::abs(spectral::fourier_forward(f).l2_norm() - f.l2_norm()) / f.l2_norm(), 1e-12,
        {{"seed", config.seed}});
  }
  {
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
      const auto u = spectral::free_propagate(gaussian(g, 0.0), t);
      worst = std::max(worst, spectral::sup_distance(u, spectral::gaussian_exact(t, 0.0, g)));
    }
    add("free_propagator", worst, 1e-10, {{"times", {0.5, 1, 2, 5}}});
  }
  add("factorization", spectral::factorization_check(gaussian(g, 0.0), 1.0), 1e-8, {{"t", 1.0}});
  {
    const auto u = gaussian(g, 0.0);
    const auto guard = spectral::BoundaryGuard::disabled();
    ComplexField xv = spectral::free_propagate(u, -1.0, guard);
    for (std::size_t k = 0; k < g.size(); ++k) xv.mutable_values()[k] *= g.x(k);
    const auto rhs = spectral::free_propagate(xv, 1.0, guard);
    add("galilean", (spectral::galilean_J(u, 1.0) - rhs).l2_norm() / u.l2_norm(), 1e-8, {{"t", 1.0}});
  }
  {
    const spectral::Grid1D gs(512, 40.0);
    functionals::F2Options o;
    o.constant = functionals::kF2Constant * config.verify.f2_constant_scale;
    const json in{{"constant_scale", config.verify.f2_constant_scale}, {"seed", config.seed}};
    const auto p = gaussian(gs, 0.0);
    double res = functionals::f2_identity_residual(p, p, p, o).residual;
    double sym = functionals::f2_symmetry_residual(p, p, p, o).residual;
    for (std::size_t i = 0; i < config.verify.smoke_fields; ++i) {
      const auto f = smoke(gs), gg = smoke(gs), h = smoke(gs);
      res = std::max(res, functionals::f2_identity_residual(f, gg, h, o).residual);
      sym = std::max(sym, functionals::f2_symmetry_residual(f, gg, h, o).residual);
    }
    add("f2_identity", res, 1e-6, in);
    add("f2_symmetry", sym, 1e-6, in);
  }
  {
    const auto lattice = functionals::qeps_lattice(1.0);
    const auto p = gaussian(lattice, 0.0);
    const auto a = functionals::q_eps(p, 1.0), b = functionals::q_eps_spectral(p, 1.0);
    add("qeps_two_route", std::abs(a.value - b.value) / std::abs(a.value), 1e-4, {{"eps", 1.0}});
    const Complex exact = functionals::q_eps_gaussian(1.0);
    add("qeps_closed_form", std::abs(a.value - exact) / std::abs(exact), 1e-4, {{"eps", 1.0}});
  }
  for (double eps : {0.05, 0.1, 0.5}) {
    char name[48];
    std::snprintf(name, sizeof name, "log_weight_eps_%g", eps);
    add(name,
        std::abs(functionals::log_weight_integral(eps).value - functionals::log_weight_exact(eps)), 1e-10,
        {{"eps", eps}});
  }
  {
    add("kernel_K0", std::abs(functionals::kernel_K(0.0) - std::numbers::pi / 2), 1e-10, {{"x", 0.0}});
    const auto xs = range(config.kernel.x_min, config.kernel.x_max, config.kernel.x_step);
    const auto xis = range(config.kernel.xi_min, config.kernel.xi_max, config.kernel.xi_step);
    const auto table = functionals::make_kernel_table(xs, xis);
    const json in{{"x", xs}, {"xi", xis}};
    add("kernel_K_oracle", table.max_K_error(), 1e-8, in);
    add("kernel_K_hat_oracle", table.max_K_hat_error(), 1e-8, in);
    add("kernel_invariants", static_cast<double>(table.check().size()), 1.0, in);
  }
  {
    const auto a = solver::check_admissible(spectral::RealField::sample(g, [](double x) { return std::exp(-x * x); }));
    double worst = 0.0;
    for (double x0 : {-2.0, 0.0, 1.0, 3.0}) {
      const double b = functionals::born_functional(a, functionals::GaussianProbe{x0}).value;
      const double k = functionals::kernel_convolution(a, x0).value;
      worst = std::max(worst, std::abs(b - k) / std::abs(k));
    }
    add("born_kernel", worst, 1e-6, {{"a", "exp(-x^2)"}, {"centers", {-2, 0, 1, 3}}});
  }

  Csv csv(ctx.csv("identities.csv"), "identity,residual,tolerance,pass");
  json list = json::array();
  int code = kExitOk;
  double strictest = INFINITY;
  for (const auto& r : rows) {
    const bool pass = r.residual < r.tolerance;
    csv.row(r.name, r.residual, r.tolerance, pass);
    list.push_back({{"identity", r.name}, {"residual", r.residual}, {"tolerance", r.tolerance}, {"pass", pass}});
    if (!pass) {
      spdlog::error("verify: {} residual {:.3e} exceeds {:.1e}", r.name, r.residual, r.tolerance);
      strictest = std::min(strictest, r.tolerance);
    }
  }
  ctx.logged(csv, "verify", {{"seed", config.seed}, {"constant_scale", config.verify.f2_constant_scale}});
  if (std::isfinite(strictest)) code = tolerance_exit_code(strictest);
  return ctx.finish({{"experiment", "verify"}, {"identities", list}, {"all_pass", code == kExitOk}}, code);
}

RunResult run_kernel(const ExperimentConfig& config, const RunOptions& options) {
  Context ctx(config, options);
  const auto xs = range(config.kernel.x_min, config.kernel.x_max, config.kernel.x_step);
  const auto xis = range(config.kernel.xi_min, config.kernel.xi_max, config.kernel.xi_step);
  const auto table = functionals::make_kernel_table(xs, xis);
  const json in{{"x", xs}, {"xi", xis}};
  functionals::write_kernel_csv(ctx.csv("kernel_x.csv"), ctx.csv("kernel_xi.csv"), table);
  ctx.log.file("kernel_table_x", in, ctx.csv("kernel_x.csv"));
  ctx.log.file("kernel_table_xi", in, ctx.csv("kernel_xi.csv"));
  write_svg(ctx.plot("kernel.svg"), {{"K(x)", table.x, table.K, false}}, {"Kernel K", "x", "K", false, false});
  write_svg(ctx.plot("kernel_hat.svg"), {{"K^(xi)", table.xi, table.K_hat, false}},
            {"Kernel transform", "xi", "K^", false, true});
  const auto violations = table.check();
  const double ek = table.max_K_error(), eh = table.max_K_hat_error();
  const bool ok = ek < table.tolerance && eh < table.tolerance && violations.empty();
  json summary{{"experiment", "kernel"}, {"max_K_error", ek}, {"max_K_hat_error", eh}, {"violations", violations},
               {"tolerance", table.tolerance}, {"pass", ok}};
  return ctx.finish(std::move(summary), ok ? kExitOk : tolerance_exit_code(table.tolerance));
}

RunResult run(const ExperimentConfig& config, const RunOptions& options) {
  switch (config.experiment) {
    case Experiment::Direct: return run_direct(config, options);
    case Experiment::Inverse: return run_inverse(config, options);
    case Experiment::Verify: return run_verify(config, options);
    case Experiment::Kernel: return run_kernel(config, options);
  }
  throw Error(Diagnostic::InvalidInput, "unknown experiment");
}

}  // namespace nlslab::lab
