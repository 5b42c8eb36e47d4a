#pragma once

#include "nlslab/spectral/field.hpp"

namespace nlslab::solver {

/// Real coefficient a of the nonlinearity (1 + a)|u|^2 u with the norms that
/// decide admissibility.
struct Inhomogeneity {
  spectral::RealField values;
  double l1 = 0.0;
  double linf = 0.0;
  double x_l2 = 0.0;   // ||x a||_2
  double dx_l1 = 0.0;  // ||a'||_1
  double edge_sup = 0.0;
  bool admissible = false;

  const spectral::Grid1D& grid() const noexcept { return values.grid; }
};

/// Decay required on the outer 5% of the grid.
inline constexpr double kAdmissibleEdge = 1e-8;

Inhomogeneity check_admissible(const spectral::RealField& a);
/// Rejects fields whose imaginary part is not negligible.
Inhomogeneity check_admissible(const spectral::ComplexField& a);

/// a = 0 on `grid`.
Inhomogeneity zero_inhomogeneity(const spectral::Grid1D& grid);

}  // namespace nlslab::solver
