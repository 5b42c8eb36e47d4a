#pragma once

#include <Eigen/Dense>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "nlslab/functionals/born.hpp"
#include "nlslab/scattering/scattering.hpp"

namespace nlslab::inversion {

using spectral::ComplexField;
using spectral::Grid1D;

/// Translated Gaussian probes exp(-(x - x0)^2 / 4) on a uniform lattice of centers.
struct ProbeSet {
  std::vector<double> centers;
  std::vector<double> eps_list;

  static ProbeSet uniform(double lo = -8.0, double hi = 8.0, double spacing = 0.5,
                          std::vector<double> eps_list = {0.05, 0.1, 0.2});
  double spacing() const;
  /// Centers sorted, uniformly spaced and inside the inner `trusted` fraction of the grid.
  void validate(const Grid1D& grid, double trusted = 0.8) const;
};

/// Probe exp(-(x - center)^2 / 4) sampled on `grid`.
ComplexField gaussian_probe(const Grid1D& grid, double center);

/// The cubic self-interaction constant enters the scattering expansion as
/// eps^3 Q_eps / (2 pi) under the unitary convention.
inline const double kQScale = 1.0 / (2.0 * std::numbers::pi);

struct ExtractedFunctional {
  Complex value;  // I_est
  double epsilon = 0.0;
  double center = 0.0;
  Complex linear_pairing;  // <w_plus, phi^>
  Complex log_term;        // (1/2i) log(1 + 1/2eps) <|w|^2 w, phi^>
  Complex q_term;          // eps^3 Q / (2 pi)
};

/// I_est = [<w+, phi^> - eps <phi^, phi^> - (1/2i) log(1+1/(2eps)) <|w+|^2 w+, phi^>
///          - eps^3 Q/(2pi)] / (-i eps^3), with `q` the closed-convention Q_eps.
ExtractedFunctional extract_functional(const ComplexField& w_plus, double eps, Complex q,
                                       double center);
/// Same from a record; rejects records that did not converge or whose datum
/// size disagrees with eps.
ExtractedFunctional extract_functional(const scattering::ScatteringRecord& record, double eps,
                                       Complex q, double center);

/// Builds w_plus satisfying the scattering expansion exactly (no remainder)
/// for the given functional value.
ComplexField synthetic_wplus(const Grid1D& grid, double eps, double center, Complex functional,
                             Complex q);

/// Convolution samples g(x0) ~ (a * K)(x0) on the probe lattice.
struct ConvolutionSamples {
  std::vector<double> centers;
  std::vector<double> g;          // real parts
  std::vector<double> imag;       // imaginary residue
  std::vector<std::size_t> gaps;  // indices of missing centers
  double noise_floor = 0.0;

  bool complete() const noexcept { return gaps.empty(); }
};

/// Missing entries are recorded as gaps with NaN samples; nothing is interpolated.
ConvolutionSamples assemble_convolution(std::span<const double> centers,
                                        std::span<const std::optional<Complex>> values);

/// Quadrature mode: g(x0) = born_functional(a, phi_{x0}); the noise floor is the
/// largest disagreement with the kernel route plus reported error bounds.
ConvolutionSamples forward_quadrature(const solver::Inhomogeneity& a, const ProbeSet& probes,
                                      const functionals::QuadratureSpec& spec = {});

enum class RegularizationKind { SpectralCutoff, Tikhonov };
enum class DeconvolutionBasis { ConvolutionOperator, PeriodicFourier };

struct Regularization {
  RegularizationKind kind = RegularizationKind::SpectralCutoff;
  double tau = 1e-6;
  double lambda = 0.0;
  DeconvolutionBasis basis = DeconvolutionBasis::ConvolutionOperator;
};

struct Reconstruction {
  std::vector<double> x;
  std::vector<double> a;
  std::vector<double> spectrum;  // eigenvalues of h K(x_i - x_j), or K_hat at lattice frequencies
  std::vector<bool> retained;
  std::size_t retained_count = 0;
  Eigen::MatrixXd basis;  // orthonormal modes matching `spectrum` (columns)
  Regularization regularization;
};

/// h K(x_i - x_j) on the probe lattice.
Eigen::MatrixXd convolution_matrix(std::span<const double> centers,
                                   const functionals::QuadratureSpec& spec = {});

/// Regularized inversion of g = (a * K) on the probe lattice. Throws
/// MissingSamples on gaps and KernelTooSmoothing when no mode survives.
Reconstruction deconvolve(const ConvolutionSamples& samples, const Regularization& reg = {},
                          const functionals::QuadratureSpec& spec = {});

/// Orthogonal projection of `a_true` (sampled at the centers) onto the retained modes.
std::vector<double> band_projection(const Reconstruction& rec, std::span<const double> a_true);
/// Relative L2 error against the projected truth; absolute RMS when the projection vanishes.
double band_error(const Reconstruction& rec, std::span<const double> a_true);

/// Circulant model on n samples with spacing h: Fourier symbol K_hat(2 pi k / (n h)),
/// and `dc_symbol` for the mean.
std::vector<double> periodic_convolve(std::span<const double> a, double h, double dc_symbol,
                                      const functionals::QuadratureSpec& spec = {});
/// Left inverse of periodic_convolve on modes with symbol >= tau.
std::vector<double> spectral_divide(std::span<const double> g, double h, double dc_symbol,
                                    const Regularization& reg = {},
                                    const functionals::QuadratureSpec& spec = {});

enum class Mode { Quadrature, Scattering };

struct ScatteringModeOptions {
  solver::SolverConfig solver;
  Grid1D grid = Grid1D::default_grid();
  scattering::ScatteringOptions scattering;
};

/// Runs the direct problem for u0 = eps phi_{x0} and extracts I_est.
ExtractedFunctional functional_from_scattering(const std::function<double(double)>& a, double center,
                                               double eps, Complex q,
                                               const ScatteringModeOptions& options,
                                               scattering::ScatteringRecord* record_out = nullptr);

struct CompareReport {
  std::vector<double> centers;
  std::vector<double> g_a, g_b;
  double functional_sup_diff = 0.0;
  double scattering_sup_diff = 0.0;  // scattering mode only
  double noise_floor = 0.0;
  double linearity_residual = 0.0;   // quadrature mode: |(g_a - g_b) - g_{a-b}|
  bool distinct = false;             // sup diff > 10 noise floor
};

/// Quadrature mode compares born functionals on the probe lattice. Scattering
/// mode additionally compares w_plus and extracted functionals at every
/// (center, eps) pair.
CompareReport compare_maps(const std::function<double(double)>& a,
                           const std::function<double(double)>& b, const ProbeSet& probes,
                           Mode mode, const Grid1D& grid = Grid1D::default_grid(),
                           const ScatteringModeOptions* scattering_options = nullptr);

}  // namespace nlslab::inversion
