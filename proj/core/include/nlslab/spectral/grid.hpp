#pragma once

#include <cstddef>
#include <vector>

namespace nlslab::spectral {

/// Periodic lattice x_j = -L + j dx on [-L, L) together with its Fourier dual
/// xi_k = (k - n/2) pi / L, stored in ascending order (index 0 is the single
/// Nyquist mode -n pi / (2L)).
class Grid1D {
 public:
  Grid1D(std::size_t n_points, double half_length);

  /// L = 60, n = 4096.
  static Grid1D default_grid() { return Grid1D(4096, 60.0); }

  /// Smallest power-of-two grid with spacing `dx` whose box holds every
  /// frequency up to `xi_band` after free transport to `t_final` (group
  /// velocity 2 xi).
  static Grid1D for_horizon(double t_final, double xi_band = 12.0, double dx = 0.21875);

  std::size_t size() const noexcept { return n_; }
  double half_length() const noexcept { return half_length_; }
  double dx() const noexcept { return dx_; }
  double dxi() const noexcept { return dxi_; }
  double x(std::size_t j) const noexcept { return -half_length_ + static_cast<double>(j) * dx_; }
  double xi(std::size_t k) const noexcept {
    return (static_cast<double>(k) - static_cast<double>(n_ / 2)) * dxi_;
  }
  double xi_max() const noexcept { return static_cast<double>(n_ / 2) * dxi_; }

  std::vector<double> xs() const;
  std::vector<double> xis() const;

  /// Number of lattice points in the outer `fraction` of the box on each side.
  std::size_t edge_count(double fraction) const noexcept;

  friend bool operator==(const Grid1D& a, const Grid1D& b) noexcept {
    return a.n_ == b.n_ && a.half_length_ == b.half_length_;
  }

 private:
  std::size_t n_;
  double half_length_;
  double dx_;
  double dxi_;
};

}  // namespace nlslab::spectral
