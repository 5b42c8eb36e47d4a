#include "nlslab/spectral/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlslab/error.hpp"
#include "nlslab/spectral/fourier.hpp"

namespace nlslab::spectral {

namespace {

void require_space(const ComplexField& f, const char* op) {
  if (f.domain() != Domain::Space) {
    throw Error(Diagnostic::InvalidInput, std::string(op) + " expects a space-domain field");
  }
}

}  // namespace

void BoundaryGuard::check(const ComplexField& field, const char* context) const {
  if (!enabled) return;
  const double edge = field.edge_sup(fraction);
  if (edge > threshold) {
    throw Error(Diagnostic::DomainTooSmall, std::string(context) + ": boundary sup " +
                                                std::to_string(edge) + " exceeds " +
                                                std::to_string(threshold));
  }
}

void apply_dispersion(const Grid1D& grid, std::span<Complex> fhat, double t, double sign) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double xi = grid.xi(k);
    fhat[k] *= std::polar(1.0, sign * t * xi * xi);
  }
}

ComplexField free_propagate(const ComplexField& field, double t, const BoundaryGuard& guard) {
  require_space(field, "free_propagate");
  if (!std::isfinite(t)) throw Error(Diagnostic::InvalidInput, "propagation time must be finite");
  guard.check(field, "free_propagate input");
  if (t == 0.0) return field;
  std::vector<Complex> v(field.values().begin(), field.values().end());
  fourier_forward_in_place(field.grid(), v);
  apply_dispersion(field.grid(), v, t);
  fourier_inverse_in_place(field.grid(), v);
  ComplexField out(field.grid(), std::move(v));
  guard.check(out, "free_propagate output");
  return out;
}

Complex gaussian_evolved(double t, double x) {
  const Complex s(1.0, t);
  return std::exp(-x * x / (4.0 * s)) / std::sqrt(s);
}

ComplexField gaussian_exact(double t, double center, const Grid1D& grid, Periodization mode) {
  if (!(t >= 0.0)) throw Error(Diagnostic::InvalidInput, "gaussian_exact needs t >= 0");
  const double period = 2.0 * grid.half_length();
  // Images beyond this many periods are below double precision for any t used here.
  const double width = 2.0 * std::sqrt(1.0 + t * t);
  const int images = mode == Periodization::Images
                         ? static_cast<int>(std::ceil(12.0 * width / period)) + 1
                         : 0;
  return ComplexField::sample(grid, [&](double x) {
    Complex s{};
    for (int m = -images; m <= images; ++m) {
      s += gaussian_evolved(t, x - center + m * period);
    }
    return s;
  });
}

ComplexField apply_M(const ComplexField& field, double t) {
  require_space(field, "apply_M");
  if (t == 0.0) throw Error(Diagnostic::InvalidInput, "M(t) is singular at t = 0");
  const Grid1D& g = field.grid();
  std::vector<Complex> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.x(j);
    v[j] = field[j] * std::polar(1.0, x * x / (4.0 * t));
  }
  return ComplexField(g, std::move(v));
}

ComplexField apply_D(const ComplexField& spectral, double t) {
  if (spectral.domain() != Domain::Frequency) {
    throw Error(Diagnostic::InvalidInput, "apply_D expects a frequency-domain field");
  }
  if (t == 0.0) throw Error(Diagnostic::InvalidInput, "D(t) is singular at t = 0");
  const Grid1D& g = spectral.grid();
  // g(xi) is reconstructed as the transform of its inverse, evaluated off-lattice.
  const ComplexField space = fourier_inverse(spectral);
  const Complex pref = 1.0 / std::sqrt(Complex(0.0, 2.0 * t));
  std::vector<Complex> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double xi = g.x(j) / (2.0 * t);
    v[j] = std::abs(xi) > g.xi_max() ? Complex{} : pref * fourier_at(space, xi);
  }
  return ComplexField(g, std::move(v));
}

double factorization_check(const ComplexField& field, double t) {
  require_space(field, "factorization_check");
  if (t == 0.0) throw Error(Diagnostic::InvalidInput, "factorization path needs t != 0");
  const ComplexField lhs = apply_M(apply_D(fourier_forward(apply_M(field, t)), t), t);
  const ComplexField rhs = free_propagate(field, t, BoundaryGuard::disabled());
  const double denom = rhs.l2_norm();
  const double diff = (lhs - rhs).l2_norm();
  return denom > 0.0 ? diff / denom : diff;
}

ComplexField spectral_derivative(const ComplexField& field) {
  require_space(field, "spectral_derivative");
  const Grid1D& g = field.grid();
  std::vector<Complex> v(field.values().begin(), field.values().end());
  fourier_forward_in_place(g, v);
  for (std::size_t k = 0; k < g.size(); ++k) v[k] *= Complex(0.0, k == 0 ? 0.0 : g.xi(k));
  fourier_inverse_in_place(g, v);
  return ComplexField(g, std::move(v));
}

double spectral_tail(const ComplexField& field) {
  const ComplexField hat = field.domain() == Domain::Space ? fourier_forward(field) : field;
  const double peak = hat.sup_norm();
  return peak > 0.0 ? hat.edge_sup(0.05) / peak : 0.0;
}

ComplexField galilean_J(const ComplexField& field, double t, double tail_threshold) {
  require_space(field, "galilean_J");
  const double tail = spectral_tail(field);
  if (tail > tail_threshold) {
    throw Error(Diagnostic::UnderResolved,
                "galilean_J: spectral tail " + std::to_string(tail) + " above threshold");
  }
  const Grid1D& g = field.grid();
  const ComplexField d = spectral_derivative(field);
  std::vector<Complex> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    v[j] = g.x(j) * field[j] + Complex(0.0, 2.0 * t) * d[j];
  }
  return ComplexField(g, std::move(v));
}

double weighted_norm(const ComplexField& field, int k, int l) {
  require_space(field, "weighted_norm");
  if ((k != 0 && k != 1) || (l != 0 && l != 1)) {
    throw Error(Diagnostic::InvalidInput, "weighted_norm supports k, l in {0, 1}");
  }
  const Grid1D& g = field.grid();
  std::vector<Complex> v(field.values().begin(), field.values().end());
  if (l == 1) {
    for (std::size_t j = 0; j < g.size(); ++j) v[j] *= std::sqrt(1.0 + g.x(j) * g.x(j));
  }
  if (k == 1) {
    fourier_forward_in_place(g, v);
    for (std::size_t m = 0; m < g.size(); ++m) v[m] *= std::sqrt(1.0 + g.xi(m) * g.xi(m));
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s * g.dxi());
  }
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s * g.dx());
}

}  // namespace nlslab::spectral
