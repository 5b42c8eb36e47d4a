#pragma once

#include <filesystem>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "nlslab/functionals/quadrature.hpp"

namespace nlslab::functionals {

/// K(x) = int_0^inf |e^{it Delta} phi(x)|^4 dt for phi = exp(-x^2/4), evaluated
/// as int_0^{pi/2} exp(-x^2 cos^2 theta) d theta.
QuadratureResult kernel_K_eval(double x, const QuadratureSpec& spec = {});
double kernel_K(double x, const QuadratureSpec& spec = {});

/// Non-unitary transform int exp(-i x xi) K(x) dx
/// = sqrt(pi) int_0^inf exp(-xi^2 cosh^2 s / 4) ds. Rejects xi = 0.
QuadratureResult kernel_K_hat_eval(double xi, const QuadratureSpec& spec = {});
double kernel_K_hat(double xi, const QuadratureSpec& spec = {});

/// Special-function closed forms: (pi/2) e^{-x^2/2} I0(x^2/2) and
/// (sqrt(pi)/2) e^{-xi^2/8} K0(xi^2/8).
double kernel_K_bessel(double x);
double kernel_K_hat_bessel(double xi);

/// Factor turning kernel_K_hat into the unitary transform of K.
inline const double kUnitaryKernelFactor = 1.0 / std::sqrt(2.0 * std::numbers::pi);

struct KernelTable {
  std::vector<double> x;
  std::vector<double> K;
  std::vector<double> K_oracle;
  std::vector<double> xi;
  std::vector<double> K_hat;
  std::vector<double> K_hat_oracle;
  double tolerance = 1e-8;

  double max_K_error() const;
  double max_K_hat_error() const;
  /// Violated invariants (evenness, monotonicity in |x|, positivity of K_hat);
  /// empty when the table is consistent.
  std::vector<std::string> check() const;
};

KernelTable make_kernel_table(std::span<const double> xs, std::span<const double> xis,
                              const QuadratureSpec& spec = {});

/// Columns x,K,K_oracle,abs_error and xi,K_hat,K_hat_oracle,abs_error.
void write_kernel_csv(const std::filesystem::path& x_path, const std::filesystem::path& xi_path,
                      const KernelTable& table);

}  // namespace nlslab::functionals
