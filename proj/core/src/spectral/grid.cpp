#include "nlslab/spectral/grid.hpp"

#include <cmath>
#include <numbers>

#include "nlslab/error.hpp"

namespace nlslab {

std::string_view to_string(Diagnostic d) noexcept {
  switch (d) {
    case Diagnostic::InvalidInput: return "invalid input";
    case Diagnostic::NonFinite: return "non-finite samples";
    case Diagnostic::DomainTooSmall: return "domain too small for requested t";
    case Diagnostic::UnderResolved: return "under-resolved";
    case Diagnostic::StepTooLarge: return "step size too large";
    case Diagnostic::BoxTooSmall: return "box too small";
    case Diagnostic::NoModifiedScattering: return "no modified scattering detected";
    case Diagnostic::LogDivergence: return "logarithmic divergence at zero frequency";
    case Diagnostic::KernelTooSmoothing: return "kernel too smoothing for this tolerance";
    case Diagnostic::NotConverged: return "not converged";
    case Diagnostic::MissingSamples: return "missing samples";
    case Diagnostic::ToleranceNotMet: return "tolerance not met";
    case Diagnostic::Io: return "i/o error";
  }
  return "unknown";
}

}  // namespace nlslab

namespace nlslab::spectral {

Grid1D::Grid1D(std::size_t n_points, double half_length)
    : n_(n_points), half_length_(half_length) {
  if (n_points < 2 || n_points % 2 != 0) {
    throw Error(Diagnostic::InvalidInput, "grid needs a positive even number of points");
  }
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw Error(Diagnostic::InvalidInput, "grid half length must be positive and finite");
  }
  dx_ = 2.0 * half_length_ / static_cast<double>(n_);
  dxi_ = std::numbers::pi / half_length_;
}

Grid1D Grid1D::for_horizon(double t_final, double xi_band, double dx) {
  if (!(t_final > 0.0) || !(xi_band > 0.0) || !(dx > 0.0)) {
    throw Error(Diagnostic::InvalidInput, "horizon grid parameters must be positive");
  }
  const double needed = std::max(2.0 * t_final * xi_band, 30.0);
  std::size_t n = 2;
  while (static_cast<double>(n) * dx < 2.0 * needed) n *= 2;
  return Grid1D(n, 0.5 * static_cast<double>(n) * dx);
}

std::vector<double> Grid1D::xs() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = x(j);
  return out;
}

std::vector<double> Grid1D::xis() const {
  std::vector<double> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = xi(k);
  return out;
}

std::size_t Grid1D::edge_count(double fraction) const noexcept {
  auto m = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n_) / 2.0));
  return std::max<std::size_t>(m, 1);
}

}  // namespace nlslab::spectral
