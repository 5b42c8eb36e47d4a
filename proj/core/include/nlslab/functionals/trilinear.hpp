#pragma once

#include <Eigen/Dense>
#include <numbers>
#include <vector>

#include "nlslab/spectral/field.hpp"

namespace nlslab::functionals {

using spectral::ComplexField;

/// Constant c in F2^{-1} G_xi (eta, sigma) = c int f(z-eta) conj(g)(z) h(z-sigma)
/// exp(i xi (eta + sigma - z)) dz under the unitary convention.
inline const double kF2Constant = 1.0 / std::sqrt(2.0 * std::numbers::pi);

/// G_xi[f,g,h](eta, sigma) = f^(xi - eta) (conj g)^(eta - xi + sigma) h^(xi - sigma),
/// with each transform evaluated directly at the requested frequency.
Complex trilinear_G(const ComplexField& f, const ComplexField& g, const ComplexField& h, double xi,
                    double eta, double sigma);

/// c sum_j f(z_j - eta) conj g(z_j) h(z_j - sigma) exp(i xi (eta + sigma - z_j)) dx,
/// with eta = eta_shift dx and sigma = sigma_shift dx.
Complex trilinear_closed_form(const ComplexField& f, const ComplexField& g, const ComplexField& h,
                              double xi, long eta_shift, long sigma_shift,
                              double constant = kF2Constant);

struct F2Options {
  double window = 8.0;        // (eta, sigma) grid on [-window, window)^2
  std::size_t points = 64;    // per axis
  std::vector<double> xi_samples{-1.0, -0.35, 0.0, 0.6, 1.3};
  double offset_step = 0.5;   // output offsets are multiples of this, rounded to the lattice
  int offsets = 4;            // per side
  double constant = kF2Constant;
  double tail_threshold = 1e-10;
};

struct F2Report {
  double residual = 0.0;  // max |route i - route ii| / max |route ii|
  double scale = 0.0;     // max |route ii|
  std::size_t samples = 0;
};

/// Compares the numerical 2-D inverse transform of G_xi on the (eta, sigma)
/// grid against the closed-form z-sum at a sample of (xi, eta, sigma).
F2Report f2_identity_residual(const ComplexField& f, const ComplexField& g, const ComplexField& h,
                              const F2Options& options = {});

/// Exchange symmetry C[h,g,f](eta, sigma) = C[f,g,h](sigma, eta), left side by
/// the transform route and right side by the z-sum.
F2Report f2_symmetry_residual(const ComplexField& f, const ComplexField& g, const ComplexField& h,
                              const F2Options& options = {});

/// Precomputed closed-form values F(xi_m, eta_s, sigma_r) on a lattice of
/// shifts |eta|, |sigma| <= shift_window (multiples of the field spacing).
class TrilinearTable {
 public:
  TrilinearTable(const ComplexField& f, const ComplexField& g, const ComplexField& h,
                 std::vector<double> xi, double shift_window, double constant = kF2Constant);

  const std::vector<double>& xi() const noexcept { return xi_; }
  const std::vector<double>& shifts() const noexcept { return shifts_; }

  /// G_t(xi) = (1/2t) sum [exp(-i eta sigma / 2t) - 1] F(xi, eta, sigma) d eta d sigma.
  std::vector<Complex> calG(double t) const;
  /// Same with the kernel replaced by -i eta sigma / 2t.
  std::vector<Complex> calG_linearized(double t) const;
  /// Contracts the table against conj(psi^(xi_m)) d xi, leaving a vector over shift pairs.
  Eigen::VectorXcd contract(const std::vector<Complex>& psi_hat) const;
  /// (1/2t) sum [exp(-i eta sigma / 2t) - 1] c_{s,r} d eta d sigma for a contracted vector c.
  Complex apply_kernel(const Eigen::VectorXcd& contracted, double t) const;

 private:
  Eigen::VectorXcd weights(double t, bool linearized) const;

  std::vector<double> xi_;
  std::vector<double> shifts_;
  double shift_step_ = 0.0;
  Eigen::MatrixXcd table_;  // rows: shift pairs (s * n_shift + r), columns: xi
};

/// G_t on uniformly spaced xi samples, built through a TrilinearTable.
std::vector<Complex> calG(const ComplexField& f, const ComplexField& g, const ComplexField& h,
                          double t, const std::vector<double>& xi, double shift_window = 12.0);

}  // namespace nlslab::functionals
