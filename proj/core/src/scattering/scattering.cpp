#include "nlslab/scattering/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/error.hpp"
#include "nlslab/spectral/fourier.hpp"

namespace nlslab::scattering {

ComplexField profile_at(const ComplexField& u, double t) {
  if (u.domain() != spectral::Domain::Space) {
    throw Error(Diagnostic::InvalidInput, "profile expects a space-domain solution");
  }
  std::vector<Complex> v(u.values().begin(), u.values().end());
  spectral::fourier_forward_in_place(u.grid(), v);
  spectral::apply_dispersion(u.grid(), v, t, +1.0);
  return ComplexField(u.grid(), std::move(v), spectral::Domain::Frequency);
}

std::vector<ComplexField> profile(const solver::SolutionTrace& trace) {
  std::vector<ComplexField> out;
  out.reserve(trace.checkpoints.size());
  for (const auto& cp : trace.checkpoints) out.push_back(profile_at(cp.u, cp.t));
  return out;
}

std::vector<std::vector<double>> accumulate_phase(std::span<const double> times,
                                                  std::span<const ComplexField> fhat) {
  if (times.size() != fhat.size()) {
    throw Error(Diagnostic::InvalidInput, "phase quadrature needs one snapshot per time");
  }
  std::vector<std::vector<double>> out;
  if (times.empty()) return out;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw Error(Diagnostic::InvalidInput, "phase quadrature needs strictly increasing times");
    }
  }
  if (times.front() < 0.0) throw Error(Diagnostic::InvalidInput, "negative time in phase quadrature");
  const std::size_t n = fhat.front().size();
  std::vector<double> b(n, 0.0);
  auto weight = [&](std::size_t i, std::size_t k) {
    return std::norm(fhat[i][k]) / (2.0 * times[i] + 1.0);
  };
  out.push_back(b);
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double h = times[i] - times[i - 1];
    for (std::size_t k = 0; k < n; ++k) b[k] += 0.5 * h * (weight(i - 1, k) + weight(i, k));
    out.push_back(b);
  }
  return out;
}

ComplexField modified_profile(const ComplexField& fhat, std::span<const double> phase) {
  if (phase.size() != fhat.size()) throw Error(Diagnostic::InvalidInput, "phase length mismatch");
  std::vector<Complex> v(fhat.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::polar(1.0, phase[k]) * fhat[k];
  return ComplexField(fhat.grid(), std::move(v), fhat.domain());
}

PhaseAccumulator::PhaseAccumulator(const Grid1D& grid, std::vector<double> capture_times)
    : capture_(std::move(capture_times)), weight_prev_(grid.size(), 0.0), phase_(grid.size(), 0.0) {}

void PhaseAccumulator::operator()(double t, std::span<const Complex> uhat) {
  const double denom = 2.0 * t + 1.0;
  if (started_) {
    const double h = t - t_prev_;
    for (std::size_t k = 0; k < phase_.size(); ++k) {
      const double w = std::norm(uhat[k]) / denom;
      phase_[k] += 0.5 * h * (weight_prev_[k] + w);
      weight_prev_[k] = w;
    }
  } else {
    for (std::size_t k = 0; k < phase_.size(); ++k) weight_prev_[k] = std::norm(uhat[k]) / denom;
    started_ = true;
  }
  t_prev_ = t;
  if (next_ < capture_.size() && std::abs(t - capture_[next_]) <= 1e-12 * std::max(1.0, t)) {
    snapshots_.push_back(phase_);
    ++next_;
  }
}

solver::StepObserver PhaseAccumulator::observer() {
  return [this](double t, std::span<const Complex> uhat) { (*this)(t, uhat); };
}

CauchyFit cauchy_fit(std::span<const double> times, std::span<const ComplexField> snapshots,
                     double fit_start) {
  if (times.size() != snapshots.size()) {
    throw Error(Diagnostic::InvalidInput, "one snapshot per time required");
  }
  auto find = [&](double t) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (std::abs(times[i] - t) <= 1e-9 * std::max(1.0, t)) return i;
    }
    return std::nullopt;
  };
  CauchyFit fit;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 1.0) continue;
    if (auto j = find(2.0 * times[i])) {
      fit.diffs.push_back({times[i], spectral::sup_distance(snapshots[*j], snapshots[i])});
    }
  }
  std::vector<double> ts, ds;
  double prev = INFINITY;
  bool any = false;
  for (const auto& d : fit.diffs) {
    if (d.T < fit_start) continue;
    ts.push_back(d.T);
    ds.push_back(d.diff);
    if (!(d.diff < prev)) fit.strictly_decreasing = false;
    prev = d.diff;
    any = any || d.diff > 0.0;
  }
  if (any) {
    const double s = solver::loglog_slope(ts, ds, fit_start);
    if (std::isfinite(s)) fit.slope = s;
  } else {
    fit.strictly_decreasing = true;
  }
  return fit;
}

ScatteringRecord assemble_record(std::vector<double> times, std::vector<ComplexField> fhat,
                                 std::vector<std::vector<double>> phase, double fit_start) {
  if (times.empty() || times.size() != fhat.size() || times.size() != phase.size()) {
    throw Error(Diagnostic::InvalidInput, "record needs matching times, profiles and phases");
  }
  ScatteringRecord r;
  r.grid = fhat.front().grid();
  r.fit_start = fit_start;
  r.times = std::move(times);
  r.fhat = std::move(fhat);
  r.phase = std::move(phase);
  r.w.reserve(r.fhat.size());
  for (std::size_t i = 0; i < r.fhat.size(); ++i) r.w.push_back(modified_profile(r.fhat[i], r.phase[i]));
  extract_wplus(r);
  return r;
}

void extract_wplus(ScatteringRecord& r) {
  const auto past_one = std::count_if(r.times.begin(), r.times.end(), [](double t) { return t > 1.0; });
  if (past_one < 4) {
    throw Error(Diagnostic::MissingSamples, "extract_wplus needs at least 4 dyadic checkpoints past t=1");
  }
  r.w_plus = r.w.back();
  const CauchyFit modified = cauchy_fit(r.times, r.w, r.fit_start);
  const CauchyFit plain = cauchy_fit(r.times, r.fhat, r.fit_start);
  r.cauchy_diffs = modified.diffs;
  r.fitted_rate = modified.slope;
  r.strictly_decreasing = modified.strictly_decreasing;
  r.unmodified_diffs = plain.diffs;
  r.unmodified_rate = plain.slope;
  if (!modified.slope) {
    r.converged = true;
    r.diagnostic = "trivial dynamics: all Cauchy differences vanish";
  } else {
    r.converged = *modified.slope < 0.0;
    r.diagnostic = r.converged ? "" : std::string(to_string(Diagnostic::NoModifiedScattering));
  }
}

void require_converged(const ScatteringRecord& r) {
  if (!r.converged) {
    throw Error(Diagnostic::NoModifiedScattering,
                "Cauchy differences do not decay (slope " +
                    (r.fitted_rate ? std::to_string(*r.fitted_rate) : std::string("n/a")) + ")");
  }
}

ScatteringRecord scattering_map(const ComplexField& u0, const solver::Inhomogeneity& a,
                                const solver::SolverConfig& config, const ScatteringOptions& options,
                                solver::SolutionTrace* trace_out) {
  if (!a.admissible) throw Error(Diagnostic::InvalidInput, "inhomogeneity is not admissible");
  const auto cps = config.resolved_checkpoints();
  PhaseAccumulator acc(u0.grid(), cps);
  const bool every_step = options.quadrature == PhaseQuadrature::EveryStep;
  solver::SolutionTrace trace =
      every_step ? solver::evolve(u0, a, config, acc.observer()) : solver::evolve(u0, a, config);

  std::vector<double> times;
  for (const auto& cp : trace.checkpoints) times.push_back(cp.t);
  std::vector<ComplexField> fhat = profile(trace);
  auto phase = every_step ? acc.snapshots() : accumulate_phase(times, fhat);

  ScatteringRecord r = assemble_record(std::move(times), std::move(fhat), std::move(phase),
                                       options.fit_start);
  r.epsilon = trace.epsilon;
  r.solver = trace.diagnostics;
  r.steps = trace.steps;
  if (trace.diagnostics.times.size() > 1) {
    const double d = trace.diagnostics.profile_growth_exponent;
    if (std::isfinite(d) && r.fitted_rate) r.delta_fit = d;
  }
  if (!trace.diagnostics.accepted) {
    r.converged = false;
    r.diagnostic = "datum outside the operational smallness rule";
  }
  if (trace_out) {
    *trace_out = std::move(trace);
  }
  if (options.strict) require_converged(r);
  return r;
}

}  // namespace nlslab::scattering
