#pragma once

#include <complex>
#include <functional>

namespace nlslab::functionals {

enum class QuadratureMethod { Trapezoid, TanhSinh };

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::Trapezoid;
  int panels = 64;
  double tolerance = 1e-12;
  double t_max = 1e8;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Composite 16-point Gauss-Legendre over `panels` equal panels of [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels);
std::complex<double> gauss_legendre_complex(const std::function<std::complex<double>(double)>& f, double a,
                                    double b, int panels);

/// Trapezoid rule with endpoint half-weights, doubled from spec.panels until
/// successive estimates agree to spec.tolerance (relative). Spectrally accurate
/// when odd derivatives vanish at both ends.
QuadratureResult trapezoid(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec);

/// Dispatches on spec.method over the finite interval [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec);

/// int_eps^inf dt / (2t (2t + 1)) by quadrature in s = 1/t.
QuadratureResult log_weight_integral(double eps, const QuadratureSpec& spec = {});
/// 1/2 log(1 + 1/(2 eps)).
double log_weight_exact(double eps);

}  // namespace nlslab::functionals
