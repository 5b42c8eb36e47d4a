#pragma once

#include "nlslab/spectral/field.hpp"

namespace nlslab::functionals {

struct QEpsOptions {
  double half_width = 12.0;    // lattice [-half_width, half_width)
  std::size_t points = 96;     // lattice size before refinement for small eps
  double tolerance = 1e-4;     // relative; larger estimates flag the result
  std::size_t xi_points = 128; // spectral route: xi samples on [-xi_window, xi_window)
  double xi_window = 8.0;
  int t_panels = 8;            // spectral route: Gauss-Legendre panels per t-interval
};

struct QEpsResult {
  Complex value;
  double error_estimate = 0.0;
  bool within_tolerance = true;
  double spacing = 0.0;
  std::size_t points = 0;
};

/// Lattice for Q_eps at this eps: spacing min(2 half_width / points, pi eps / 6),
/// point count rounded up to even.
spectral::Grid1D qeps_lattice(double eps, const QEpsOptions& options = {});

/// int_eps^inf (2it)^{-1} [exp(-i alpha / t) - 1] dt
/// = (i/2) Cin(|alpha| / eps) - Si(alpha / eps) / 2.
Complex qeps_time_kernel(double alpha, double eps);

/// Q_eps[phi] = int_eps^inf (2it)^{-1} iiint [exp(-i eta sigma / 2t) - 1]
///   phi(z-eta) phi(z-sigma) conj phi(z) conj phi(z-eta-sigma) dz d eta d sigma.
/// The z-integral is an autocorrelation on the probe lattice and the t-integral
/// is done in closed form at every (eta, sigma) node. The error estimate is the
/// change when the lattice spacing is doubled.
QEpsResult q_eps(const spectral::ComplexField& probe, double eps, const QEpsOptions& options = {});

/// Same quantity as int_eps^inf (1/i) <G_t[phi, phi, phi], phi^> dt with G_t from
/// the closed-form trilinear table and the t-integral done by quadrature
/// (t = eps / tau on [eps, 1], t = 1 / tau on [1, inf)).
QEpsResult q_eps_spectral(const spectral::ComplexField& probe, double eps,
                          const QEpsOptions& options = {});

/// Closed form for phi = exp(-x^2/4): -2 i pi^{3/2} (log(2 eps) - asinh(eps)).
Complex q_eps_gaussian(double eps);

}  // namespace nlslab::functionals
