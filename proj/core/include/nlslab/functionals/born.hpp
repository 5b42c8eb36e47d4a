#pragma once

#include "nlslab/functionals/quadrature.hpp"
#include "nlslab/solver/inhomogeneity.hpp"
#include "nlslab/spectral/operators.hpp"

namespace nlslab::functionals {

/// phi(x) = exp(-(x - center)^2 / 4).
struct GaussianProbe {
  double center = 0.0;
};

struct BornResult {
  double value = 0.0;
  double error_estimate = 0.0;  // panel-doubling difference
  double tail_bound = 0.0;      // bound on the discarded t > t_max contribution
  double t_max = 0.0;
};

/// int_0^{t_max} int a(x) |e^{it Delta} phi(x)|^4 dx dt for a Gaussian probe,
/// using the closed-form evolution and t = tan(theta).
BornResult born_functional(const solver::Inhomogeneity& a, GaussianProbe probe,
                           const QuadratureSpec& spec = {});

/// Same functional for an arbitrary probe, evolved numerically with
/// free_propagate. Aborts with DomainTooSmall when the probe reaches the box
/// boundary before t_max.
BornResult born_functional(const solver::Inhomogeneity& a, const spectral::ComplexField& probe,
                           const QuadratureSpec& spec,
                           const spectral::BoundaryGuard& guard = {});

/// (a * K)(x0) = sum_j a(x_j) K(x_j - x0) dx.
QuadratureResult kernel_convolution(const solver::Inhomogeneity& a, double x0,
                                    const QuadratureSpec& spec = {});

}  // namespace nlslab::functionals
