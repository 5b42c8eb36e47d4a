#pragma once

#include "nlslab/spectral/field.hpp"

namespace nlslab::spectral {

/// Wrap-around detector: the sup of |field| over the outer `fraction` of the
/// box must stay below `threshold`.
struct BoundaryGuard {
  double threshold = 1e-10;
  double fraction = 0.05;
  bool enabled = true;

  static BoundaryGuard disabled() { return BoundaryGuard{0.0, 0.05, false}; }
  /// Throws Diagnostic::DomainTooSmall when the guard trips.
  void check(const ComplexField& field, const char* context) const;
};

/// e^{it Delta} as the Fourier multiplier exp(-i t xi^2). Input and output are
/// checked against `guard`.
ComplexField free_propagate(const ComplexField& field, double t, const BoundaryGuard& guard = {});

/// Multiplies the frequency samples of `fhat` in place by exp(sign * i t xi^2).
void apply_dispersion(const Grid1D& grid, std::span<Complex> fhat, double t, double sign = -1.0);

enum class Periodization { None, Images };

/// Closed-form free evolution of exp(-(x - x0)^2 / 4): (1+it)^{-1/2} exp(-(x-x0)^2 / (4(1+it))).
/// With Periodization::Images the sum over all 2L-translates is returned,
/// which is the exact evolution on the periodic box.
ComplexField gaussian_exact(double t, double center, const Grid1D& grid,
                            Periodization mode = Periodization::None);

/// Pointwise closed form used by gaussian_exact.
Complex gaussian_evolved(double t, double x);

/// M(t) = exp(i x^2 / (4t)), t != 0.
ComplexField apply_M(const ComplexField& field, double t);
/// D(t) g(x) = (2it)^{-1/2} g(x / 2t) for a frequency-domain g; off-lattice
/// values come from the exact trigonometric interpolant of the samples.
ComplexField apply_D(const ComplexField& spectral, double t);
/// Relative L2 gap between M D F M field and free_propagate(field, t).
double factorization_check(const ComplexField& field, double t);

/// Spectral first derivative of a space-domain field.
ComplexField spectral_derivative(const ComplexField& field);

/// Relative spectral tail: max |F field| on the outer 5% of frequencies over max |F field|.
double spectral_tail(const ComplexField& field);

/// J(t) = x + 2it d/dx. Throws Diagnostic::UnderResolved when the spectral tail
/// exceeds `tail_threshold`.
ComplexField galilean_J(const ComplexField& field, double t, double tail_threshold = 1e-10);

/// || <d/dx>^k <x>^l field ||_2 for k, l in {0, 1}.
double weighted_norm(const ComplexField& field, int k, int l);

}  // namespace nlslab::spectral
