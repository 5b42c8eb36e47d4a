#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nlslab/spectral/grid.hpp"

namespace nlslab {

using Complex = std::complex<double>;

}  // namespace nlslab

namespace nlslab::spectral {

/// Which lattice the samples live on: x_j or xi_k of the owning grid.
enum class Domain { Space, Frequency };

class ComplexField {
 public:
  explicit ComplexField(Grid1D grid, Domain domain = Domain::Space);
  ComplexField(Grid1D grid, std::vector<Complex> values, Domain domain = Domain::Space);

  /// Samples `f` at the lattice points of `domain`.
  template <class F>
  static ComplexField sample(const Grid1D& grid, F&& f, Domain domain = Domain::Space) {
    std::vector<Complex> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      v[j] = f(domain == Domain::Space ? grid.x(j) : grid.xi(j));
    }
    return ComplexField(grid, std::move(v), domain);
  }

  const Grid1D& grid() const noexcept { return grid_; }
  Domain domain() const noexcept { return domain_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> mutable_values() noexcept { return values_; }
  const Complex& operator[](std::size_t j) const noexcept { return values_[j]; }

  /// Lattice spacing of the current domain.
  double spacing() const noexcept { return domain_ == Domain::Space ? grid_.dx() : grid_.dxi(); }

  double l2_norm() const noexcept;
  double sup_norm() const noexcept;
  /// Largest modulus over the outer `fraction` of the lattice on either side.
  double edge_sup(double fraction) const noexcept;

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator-=(const ComplexField& other);
  ComplexField& operator*=(Complex c) noexcept;

  friend ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
  friend ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
  friend ComplexField operator*(Complex c, ComplexField a) { return a *= c; }

 private:
  void check_compatible(const ComplexField& other) const;

  Grid1D grid_;
  Domain domain_;
  std::vector<Complex> values_;
};

/// Real samples on the spatial lattice.
struct RealField {
  Grid1D grid;
  std::vector<double> values;

  explicit RealField(Grid1D g) : grid(g), values(g.size(), 0.0) {}
  RealField(Grid1D g, std::vector<double> v);

  template <class F>
  static RealField sample(const Grid1D& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.x(j));
    return RealField(grid, std::move(v));
  }
};

/// <a, b> = sum a conj(b) times the lattice spacing (conjugate on the second slot).
Complex pairing(const ComplexField& a, const ComplexField& b);

/// Max |a - b| over the lattice.
double sup_distance(const ComplexField& a, const ComplexField& b);

}  // namespace nlslab::spectral
