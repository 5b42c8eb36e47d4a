#include "nlslab/spectral/field.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/error.hpp"

namespace nlslab::spectral {

namespace {

bool all_finite(std::span<const Complex> v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

}  // namespace

ComplexField::ComplexField(Grid1D grid, Domain domain)
    : grid_(grid), domain_(domain), values_(grid.size(), Complex{}) {}

ComplexField::ComplexField(Grid1D grid, std::vector<Complex> values, Domain domain)
    : grid_(grid), domain_(domain), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(Diagnostic::InvalidInput, "field length does not match grid");
  }
  if (!all_finite(values_)) throw Error(Diagnostic::NonFinite, "field contains NaN or Inf");
}

double ComplexField::l2_norm() const noexcept {
  double s = 0.0;
  for (const auto& z : values_) s += std::norm(z);
  return std::sqrt(s * spacing());
}

double ComplexField::sup_norm() const noexcept {
  double m = 0.0;
  for (const auto& z : values_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexField::edge_sup(double fraction) const noexcept {
  const std::size_t n = values_.size();
  const std::size_t m = std::min(grid_.edge_count(fraction), n / 2);
  double s = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    s = std::max({s, std::abs(values_[j]), std::abs(values_[n - 1 - j])});
  }
  return s;
}

void ComplexField::check_compatible(const ComplexField& other) const {
  if (!(grid_ == other.grid_) || domain_ != other.domain_) {
    throw Error(Diagnostic::InvalidInput, "fields live on different lattices");
  }
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  check_compatible(other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& other) {
  check_compatible(other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

ComplexField& ComplexField::operator*=(Complex c) noexcept {
  for (auto& z : values_) z *= c;
  return *this;
}

RealField::RealField(Grid1D g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw Error(Diagnostic::InvalidInput, "field length does not match grid");
  }
  if (!std::all_of(values.begin(), values.end(), [](double x) { return std::isfinite(x); })) {
    throw Error(Diagnostic::NonFinite, "field contains NaN or Inf");
  }
}

Complex pairing(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid()) || a.domain() != b.domain()) {
    throw Error(Diagnostic::InvalidInput, "pairing of fields on different lattices");
  }
  Complex s{};
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * std::conj(b[j]);
  return s * a.spacing();
}

double sup_distance(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid()) || a.domain() != b.domain()) {
    throw Error(Diagnostic::InvalidInput, "distance between fields on different lattices");
  }
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

}  // namespace nlslab::spectral
