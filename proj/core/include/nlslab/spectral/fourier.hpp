#pragma once

#include <numbers>
#include <span>

#include "nlslab/spectral/field.hpp"

namespace nlslab::spectral {

/// F f(xi) = forward_scale * int exp(forward_sign * i x xi) f(x) dx, and the
/// inverse with the opposite sign and inverse_scale.
struct FourierConvention {
  int forward_sign = -1;
  double forward_scale = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  double inverse_scale = 1.0 / std::sqrt(2.0 * std::numbers::pi);
};

inline constexpr FourierConvention kUnitary{};

/// Space-domain field to its frequency samples on the dual lattice.
ComplexField fourier_forward(const ComplexField& field);
/// Frequency-domain field back to the spatial lattice.
ComplexField fourier_inverse(const ComplexField& field);

/// In-place variants on raw lattice-ordered samples of `grid`.
void fourier_forward_in_place(const Grid1D& grid, std::span<Complex> values);
void fourier_inverse_in_place(const Grid1D& grid, std::span<Complex> values);

/// Direct evaluation of the transform of a space-domain field at an arbitrary
/// frequency (trapezoid sum, spectrally accurate for decaying fields).
Complex fourier_at(const ComplexField& field, double xi);
/// Direct evaluation of the inverse transform of a frequency-domain field at x.
Complex inverse_fourier_at(const ComplexField& field, double x);

/// Unnormalized discrete transform sum_j v_j exp(sign 2 pi i j k / n).
void dft_in_place(std::span<Complex> values, int sign);

}  // namespace nlslab::spectral
