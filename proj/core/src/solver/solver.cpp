#include "nlslab/solver/solver.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/error.hpp"
#include "nlslab/spectral/fourier.hpp"

namespace nlslab::solver {

using spectral::ComplexField;
using spectral::Domain;
using spectral::Grid1D;

std::vector<double> SolverConfig::default_checkpoints(double t_final) {
  std::vector<double> out;
  for (int k = 0; k <= 10; ++k) {
    const double t = k / 10.0;
    if (t <= t_final) out.push_back(t);
  }
  for (double t = 2.0; t <= t_final; t *= 2.0) out.push_back(t);
  if (out.back() < t_final) out.push_back(t_final);
  return out;
}

double SolverConfig::step_at(double t) const noexcept {
  if (!sqrt_growth || t <= 1.0) return dt;
  return std::min(dt_cap, dt * std::sqrt(t));
}

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !(dt_cap >= dt) || !(t_final > 0.0) || !(mass_tolerance > 0.0)) {
    throw Error(Diagnostic::InvalidInput, "solver needs dt > 0, dt_cap >= dt, t_final > 0");
  }
  const auto cps = resolved_checkpoints();
  if (cps.front() != 0.0) throw Error(Diagnostic::InvalidInput, "checkpoints must start at t = 0");
  for (std::size_t i = 1; i < cps.size(); ++i) {
    if (!(cps[i] > cps[i - 1])) {
      throw Error(Diagnostic::InvalidInput, "checkpoint times must be strictly increasing");
    }
  }
  if (cps.back() > t_final) throw Error(Diagnostic::InvalidInput, "checkpoint beyond t_final");
}

std::vector<double> SolverConfig::resolved_checkpoints() const {
  return checkpoint_times.empty() ? default_checkpoints(t_final) : checkpoint_times;
}

ComplexField nonlinear_phase_substep(const ComplexField& u, const Inhomogeneity& a, double dt) {
  if (!(u.grid() == a.grid())) throw Error(Diagnostic::InvalidInput, "u and a on different grids");
  std::vector<Complex> v(u.values().begin(), u.values().end());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] *= std::polar(1.0, -dt * (1.0 + a.values.values[j]) * std::norm(v[j]));
  }
  return ComplexField(u.grid(), std::move(v));
}

namespace {

// Works on frequency samples throughout; two transforms per step.
void strang_in_place(const Grid1D& g, std::vector<Complex>& uhat, const std::vector<double>& coeff,
                     double dt) {
  spectral::apply_dispersion(g, uhat, 0.5 * dt);
  spectral::fourier_inverse_in_place(g, uhat);
  for (std::size_t j = 0; j < uhat.size(); ++j) {
    uhat[j] *= std::polar(1.0, -dt * coeff[j] * std::norm(uhat[j]));
  }
  spectral::fourier_forward_in_place(g, uhat);
  spectral::apply_dispersion(g, uhat, 0.5 * dt);
}

std::vector<double> coefficient(const Inhomogeneity& a) {
  std::vector<double> c(a.values.values);
  for (auto& v : c) v += 1.0;
  return c;
}

double spectral_mass(const Grid1D& g, std::span<const Complex> uhat) {
  double s = 0.0;
  for (const auto& z : uhat) s += std::norm(z);
  return std::sqrt(s * g.dxi());
}

}  // namespace

ComplexField step_strang(const ComplexField& u, const Inhomogeneity& a, double dt) {
  if (!(u.grid() == a.grid())) throw Error(Diagnostic::InvalidInput, "u and a on different grids");
  const Grid1D& g = u.grid();
  std::vector<Complex> v(u.values().begin(), u.values().end());
  spectral::fourier_forward_in_place(g, v);
  strang_in_place(g, v, coefficient(a), dt);
  spectral::fourier_inverse_in_place(g, v);
  return ComplexField(g, std::move(v));
}

ComplexField evolve_fixed(const ComplexField& u0, const Inhomogeneity& a, double t,
                          std::size_t steps) {
  if (steps == 0) throw Error(Diagnostic::InvalidInput, "evolve_fixed needs at least one step");
  const Grid1D& g = u0.grid();
  const auto coeff = coefficient(a);
  std::vector<Complex> v(u0.values().begin(), u0.values().end());
  spectral::fourier_forward_in_place(g, v);
  const double h = t / static_cast<double>(steps);
  for (std::size_t s = 0; s < steps; ++s) strang_in_place(g, v, coeff, h);
  spectral::fourier_inverse_in_place(g, v);
  return ComplexField(g, std::move(v));
}

double loglog_slope(std::span<const double> x, std::span<const double> y, double x_min) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] < x_min || !(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::nan("");
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  if (denom == 0.0) return std::nan("");
  return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

SolutionTrace evolve(const ComplexField& u0, const Inhomogeneity& a, const SolverConfig& config,
                     const StepObserver& observer) {
  config.validate();
  if (u0.domain() != Domain::Space) throw Error(Diagnostic::InvalidInput, "u0 must be in space");
  if (!(u0.grid() == a.grid())) throw Error(Diagnostic::InvalidInput, "u0 and a on different grids");
  if (!a.admissible) throw Error(Diagnostic::InvalidInput, "inhomogeneity is not admissible");
  const Grid1D& g = u0.grid();
  const auto coeff = coefficient(a);
  const auto cps = config.resolved_checkpoints();

  try {
    config.guard.check(u0, "initial datum");
  } catch (const Error& e) {
    throw Error(Diagnostic::BoxTooSmall, e.what());
  }

  SolutionTrace trace;
  trace.epsilon = spectral::weighted_norm(u0, 1, 1);
  auto& diag = trace.diagnostics;

  std::vector<Complex> uhat(u0.values().begin(), u0.values().end());
  spectral::fourier_forward_in_place(g, uhat);
  const double mass0 = spectral_mass(g, uhat);
  if (observer) observer(0.0, uhat);

  auto record = [&](double t) {
    const double mass = spectral_mass(g, uhat);
    const double drift = mass0 > 0.0 ? std::abs(mass - mass0) / mass0 : mass;
    std::vector<Complex> u(uhat);
    spectral::fourier_inverse_in_place(g, u);
    ComplexField field(g, std::move(u));

    std::vector<Complex> f(uhat);
    spectral::apply_dispersion(g, f, t, +1.0);
    double fsup = 0.0;
    for (const auto& z : f) fsup = std::max(fsup, std::abs(z));
    spectral::fourier_inverse_in_place(g, f);
    const double weight = spectral::weighted_norm(ComplexField(g, std::move(f)), 0, 1);

    diag.times.push_back(t);
    diag.mass_drift.push_back(drift);
    diag.sup_decay.push_back(field.sup_norm() * std::sqrt(std::sqrt(1.0 + t * t)));
    diag.profile_weight.push_back(weight);
    diag.fhat_sup.push_back(fsup);
    diag.max_mass_drift = std::max(diag.max_mass_drift, drift);
    if (!(drift <= config.mass_tolerance)) {
      throw Error(Diagnostic::StepTooLarge, "relative mass drift " + std::to_string(drift) +
                                                " at t=" + std::to_string(t));
    }
    if (config.guard.enabled && field.edge_sup(config.guard.fraction) > config.guard.threshold) {
      throw Error(Diagnostic::BoxTooSmall, "boundary sup " +
                                               std::to_string(field.edge_sup(config.guard.fraction)) +
                                               " at t=" + std::to_string(t));
    }
    trace.checkpoints.push_back({t, std::move(field)});
  };

  record(0.0);
  double t = 0.0;
  for (std::size_t c = 1; c < cps.size(); ++c) {
    const double target = cps[c];
    while (t < target) {
      double h = config.step_at(t);
      const bool last = t + h >= target - 1e-12 * std::max(1.0, target);
      if (last) h = target - t;
      strang_in_place(g, uhat, coeff, h);
      t = last ? target : t + h;
      ++trace.steps;
      if (observer) observer(t, uhat);
    }
    record(target);
  }

  const double f0 = diag.fhat_sup.front();
  diag.accepted = std::all_of(diag.fhat_sup.begin(), diag.fhat_sup.end(),
                              [&](double s) { return s <= 2.0 * f0 + 1e-300; });
  diag.profile_growth_exponent = loglog_slope(diag.times, diag.profile_weight, 1.0);
  if (!std::isfinite(diag.profile_growth_exponent)) diag.profile_growth_exponent = 0.0;
  return trace;
}

}  // namespace nlslab::solver
