#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlslab/solver/inhomogeneity.hpp"
#include "nlslab/spectral/operators.hpp"

namespace nlslab::solver {

struct SolverConfig {
  double dt = 0.01;        // step on [0, 1]
  double dt_cap = 0.1;     // ceiling once the step grows like sqrt(t)
  bool sqrt_growth = true;
  double t_final = 1024.0;
  std::vector<double> checkpoint_times;  // empty selects default_checkpoints(t_final)
  double mass_tolerance = 1e-8;
  spectral::BoundaryGuard guard{};

  /// Tenths on [0, 1] followed by 2, 4, 8, ... up to t_final (t_final always included).
  static std::vector<double> default_checkpoints(double t_final);
  /// Step length used at time t before clipping to the next checkpoint.
  double step_at(double t) const noexcept;
  void validate() const;
  std::vector<double> resolved_checkpoints() const;
};

struct Checkpoint {
  double t;
  spectral::ComplexField u;
};

/// Per-checkpoint diagnostics, aligned with the checkpoint list.
struct TraceDiagnostics {
  std::vector<double> times;
  std::vector<double> mass_drift;      // relative L2 drift
  std::vector<double> sup_decay;       // ||u||_inf <t>^{1/2}
  std::vector<double> profile_weight;  // ||<x> f(t)||_2 = ||f^(t)||_{H^1}
  std::vector<double> fhat_sup;        // ||f^(t)||_inf
  double max_mass_drift = 0.0;
  double profile_growth_exponent = 0.0;  // log-log slope of profile_weight for t >= 1
  bool accepted = true;
  std::string acceptance_rule =
      "operational smallness: ||f^(t)||_inf never exceeds twice its t=0 value";
};

struct SolutionTrace {
  std::vector<Checkpoint> checkpoints;
  double epsilon = 0.0;  // ||u0||_{H^{1,1}}
  std::size_t steps = 0;
  TraceDiagnostics diagnostics;

  const spectral::Grid1D& grid() const { return checkpoints.front().u.grid(); }
};

/// Called after every completed step with the current time and frequency
/// samples u^(t); also called once at t = 0.
using StepObserver = std::function<void(double t, std::span<const Complex> uhat)>;

/// Exact solution of i u_t = (1 + a)|u|^2 u over dt.
spectral::ComplexField nonlinear_phase_substep(const spectral::ComplexField& u,
                                               const Inhomogeneity& a, double dt);

/// One Strang step: half free flow, full nonlinear flow, half free flow.
spectral::ComplexField step_strang(const spectral::ComplexField& u, const Inhomogeneity& a,
                                   double dt);

/// Integrates (i d_t + Delta) u = (1 + a)|u|^2 u from u0 with the step schedule
/// and checkpoints of `config`. Throws StepTooLarge on mass drift and
/// BoxTooSmall when the boundary guard trips at a checkpoint.
SolutionTrace evolve(const spectral::ComplexField& u0, const Inhomogeneity& a,
                     const SolverConfig& config, const StepObserver& observer = {});

/// Fixed-step integration to t without checkpoints or guards (used for
/// self-convergence studies).
spectral::ComplexField evolve_fixed(const spectral::ComplexField& u0, const Inhomogeneity& a,
                                    double t, std::size_t steps);

/// Least-squares slope of log y against log x over entries with x >= x_min and y > 0.
double loglog_slope(std::span<const double> x, std::span<const double> y, double x_min);

}  // namespace nlslab::solver
