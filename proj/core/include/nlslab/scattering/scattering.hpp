#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlslab/solver/solver.hpp"

namespace nlslab::scattering {

using spectral::ComplexField;
using spectral::Grid1D;

struct CauchyDiff {
  double T;
  double diff;  // || s(2T) - s(T) ||_inf
};

struct CauchyFit {
  std::vector<CauchyDiff> diffs;
  std::optional<double> slope;  // empty when every difference vanishes
  bool strictly_decreasing = true;  // over T >= fit_start
};

/// f^(t) = exp(i t xi^2) u^(t) for a single checkpoint.
ComplexField profile_at(const ComplexField& u, double t);
/// f^ at every checkpoint of the trace.
std::vector<ComplexField> profile(const solver::SolutionTrace& trace);

/// B(t, xi) = int_0^t |f^(s, xi)|^2 ds / (2s + 1) by the composite trapezoid
/// rule on the given times.
std::vector<std::vector<double>> accumulate_phase(std::span<const double> times,
                                                  std::span<const ComplexField> fhat);

/// w = exp(i B) f^ pointwise.
ComplexField modified_profile(const ComplexField& fhat, std::span<const double> phase);

/// Trapezoid accumulation of B on every solver step; snapshots are taken at
/// the requested capture times. |f^| = |u^| so u^ is used directly.
class PhaseAccumulator {
 public:
  PhaseAccumulator(const Grid1D& grid, std::vector<double> capture_times);

  void operator()(double t, std::span<const Complex> uhat);
  solver::StepObserver observer();

  const std::vector<std::vector<double>>& snapshots() const noexcept { return snapshots_; }

 private:
  std::vector<double> capture_;
  std::size_t next_ = 0;
  double t_prev_ = 0.0;
  bool started_ = false;
  std::vector<double> weight_prev_;
  std::vector<double> phase_;
  std::vector<std::vector<double>> snapshots_;
};

/// Dyadic Cauchy differences of a snapshot sequence: pairs (T, 2T) with T >= 1
/// both present in `times`. The slope is fitted over T >= fit_start.
CauchyFit cauchy_fit(std::span<const double> times, std::span<const ComplexField> snapshots,
                     double fit_start = 4.0);

enum class PhaseQuadrature { EveryStep, Checkpoints };

struct ScatteringOptions {
  double fit_start = 4.0;
  PhaseQuadrature quadrature = PhaseQuadrature::EveryStep;
  bool strict = false;  // throw NoModifiedScattering instead of only flagging
};

struct ScatteringRecord {
  Grid1D grid = Grid1D::default_grid();
  double epsilon = 0.0;  // ||u0||_{H^{1,1}}
  std::vector<double> times;
  std::vector<ComplexField> fhat;
  std::vector<std::vector<double>> phase;
  std::vector<ComplexField> w;
  std::optional<ComplexField> w_plus;
  double fit_start = 4.0;
  std::vector<CauchyDiff> cauchy_diffs;
  std::optional<double> fitted_rate;
  std::vector<CauchyDiff> unmodified_diffs;
  std::optional<double> unmodified_rate;
  std::optional<double> delta_fit;
  bool strictly_decreasing = true;
  bool converged = false;
  std::string diagnostic;
  solver::TraceDiagnostics solver;
  std::size_t steps = 0;
};

/// Assembles a record from snapshots: w = exp(iB) f^, w_plus = w(t_final),
/// Cauchy fits for w and for the uncorrected f^.
ScatteringRecord assemble_record(std::vector<double> times, std::vector<ComplexField> fhat,
                                 std::vector<std::vector<double>> phase, double fit_start = 4.0);

/// Fills w_plus and the convergence fields of `record` from its w snapshots.
void extract_wplus(ScatteringRecord& record);

/// Throws NoModifiedScattering when the record did not converge.
void require_converged(const ScatteringRecord& record);

/// evolve -> profile -> accumulate_phase -> modified_profile -> extract_wplus.
/// The space-side trace is handed to `trace_out` when given.
ScatteringRecord scattering_map(const ComplexField& u0, const solver::Inhomogeneity& a,
                                const solver::SolverConfig& config,
                                const ScatteringOptions& options = {},
                                solver::SolutionTrace* trace_out = nullptr);

}  // namespace nlslab::scattering
