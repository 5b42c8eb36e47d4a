#include "nlslab/spectral/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "nlslab/error.hpp"

namespace nlslab::spectral {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> scratch(n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

void check_finite(std::span<const Complex> v) {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(Diagnostic::NonFinite, "transform input contains NaN or Inf");
    }
  }
}

// Shared by both directions: the lattice offsets contribute (-1)^j on input
// and (-1)^(k - n/2) on output.
void centered_transform(const Grid1D& grid, std::span<Complex> v, int sign, double scale) {
  const std::size_t n = grid.size();
  if (v.size() != n) throw Error(Diagnostic::InvalidInput, "sample count does not match grid");
  for (std::size_t j = 1; j < n; j += 2) v[j] = -v[j];
  dft_in_place(v, sign);
  const double flip = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) v[k] *= (k % 2 == 0 ? flip : -flip) * scale;
}

}  // namespace

void dft_in_place(std::span<Complex> values, int sign) {
  if (values.empty()) return;
  fftw_plan plan = plans().get(values.size(), sign);
  auto* p = reinterpret_cast<fftw_complex*>(values.data());
  fftw_execute_dft(plan, p, p);
}

void fourier_forward_in_place(const Grid1D& grid, std::span<Complex> values) {
  centered_transform(grid, values, kUnitary.forward_sign, grid.dx() * kUnitary.forward_scale);
}

void fourier_inverse_in_place(const Grid1D& grid, std::span<Complex> values) {
  centered_transform(grid, values, -kUnitary.forward_sign, grid.dxi() * kUnitary.inverse_scale);
}

ComplexField fourier_forward(const ComplexField& field) {
  if (field.domain() != Domain::Space) {
    throw Error(Diagnostic::InvalidInput, "forward transform expects a space-domain field");
  }
  check_finite(field.values());
  std::vector<Complex> v(field.values().begin(), field.values().end());
  fourier_forward_in_place(field.grid(), v);
  return ComplexField(field.grid(), std::move(v), Domain::Frequency);
}

ComplexField fourier_inverse(const ComplexField& field) {
  if (field.domain() != Domain::Frequency) {
    throw Error(Diagnostic::InvalidInput, "inverse transform expects a frequency-domain field");
  }
  check_finite(field.values());
  std::vector<Complex> v(field.values().begin(), field.values().end());
  fourier_inverse_in_place(field.grid(), v);
  return ComplexField(field.grid(), std::move(v), Domain::Space);
}

Complex fourier_at(const ComplexField& field, double xi) {
  if (field.domain() != Domain::Space) {
    throw Error(Diagnostic::InvalidInput, "fourier_at expects a space-domain field");
  }
  const Grid1D& g = field.grid();
  // Recurrence for exp(-i xi x_j) keeps the sum O(n) without repeated sincos.
  const Complex step = std::polar(1.0, kUnitary.forward_sign * xi * g.dx());
  Complex phase = std::polar(1.0, kUnitary.forward_sign * xi * g.x(0));
  Complex s{};
  for (std::size_t j = 0; j < g.size(); ++j) {
    s += field[j] * phase;
    phase *= step;
    if (j % 64 == 63) phase = std::polar(1.0, kUnitary.forward_sign * xi * g.x(j + 1));
  }
  return s * (g.dx() * kUnitary.forward_scale);
}

Complex inverse_fourier_at(const ComplexField& field, double x) {
  if (field.domain() != Domain::Frequency) {
    throw Error(Diagnostic::InvalidInput, "inverse_fourier_at expects a frequency-domain field");
  }
  const Grid1D& g = field.grid();
  const double sgn = -kUnitary.forward_sign;
  const Complex step = std::polar(1.0, sgn * x * g.dxi());
  Complex phase = std::polar(1.0, sgn * x * g.xi(0));
  Complex s{};
  for (std::size_t k = 0; k < g.size(); ++k) {
    s += field[k] * phase;
    phase *= step;
    if (k % 64 == 63) phase = std::polar(1.0, sgn * x * g.xi(k + 1));
  }
  return s * (g.dxi() * kUnitary.inverse_scale);
}

}  // namespace nlslab::spectral
