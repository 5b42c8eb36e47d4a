#include "nlslab/functionals/born.hpp"

#include <cmath>
#include <numbers>

#include "nlslab/error.hpp"
#include "nlslab/functionals/kernel.hpp"

namespace nlslab::functionals {

BornResult born_functional(const solver::Inhomogeneity& a, GaussianProbe probe,
                           const QuadratureSpec& spec) {
  spec.validate();
  const auto& g = a.grid();
  const auto& av = a.values.values;
  std::vector<std::size_t> support;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (av[j] != 0.0) support.push_back(j);
  }
  // With t = tan(theta), (1 + t^2)^{-1} dt = d theta and |e^{it Delta} phi|^4
  // becomes exp(-(x - x0)^2 cos^2 theta).
  auto inner = [&](double theta) {
    const double c = std::cos(theta);
    const double c2 = c * c;
    double s = 0.0;
    for (std::size_t j : support) {
      const double d = g.x(j) - probe.center;
      s += av[j] * std::exp(-d * d * c2);
    }
    return s * g.dx();
  };
  const double theta_max = std::atan(spec.t_max);
  const double coarse = gauss_legendre(inner, 0.0, theta_max, spec.panels);
  const double fine = gauss_legendre(inner, 0.0, theta_max, 2 * spec.panels);
  BornResult r;
  r.value = fine;
  r.error_estimate = std::abs(fine - coarse);
  r.tail_bound = a.l1 * (0.5 * std::numbers::pi - theta_max);
  r.t_max = spec.t_max;
  return r;
}

BornResult born_functional(const solver::Inhomogeneity& a, const spectral::ComplexField& probe,
                           const QuadratureSpec& spec, const spectral::BoundaryGuard& guard) {
  spec.validate();
  if (!(probe.grid() == a.grid())) throw Error(Diagnostic::InvalidInput, "probe and a on different grids");
  const auto& g = a.grid();
  const auto& av = a.values.values;
  auto inner = [&](double theta) {
    const double t = std::tan(theta);
    const spectral::ComplexField v = spectral::free_propagate(probe, t, guard);
    double s = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double m = std::norm(v[j]);
      s += av[j] * m * m;
    }
    return s * g.dx() * (1.0 + t * t);
  };
  const double theta_max = std::atan(spec.t_max);
  const int panels = std::max(16, spec.panels / 4);
  const double coarse = gauss_legendre(inner, 0.0, theta_max, panels);
  const double fine = gauss_legendre(inner, 0.0, theta_max, 2 * panels);
  double l1 = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) l1 += std::abs(probe[j]) * g.dx();
  BornResult r;
  r.value = fine;
  r.error_estimate = std::abs(fine - coarse);
  // Dispersive bound ||e^{it Delta} phi||_inf <= (4 pi t)^{-1/2} ||phi||_1.
  r.tail_bound = a.l1 * std::pow(l1, 4) / (16.0 * std::numbers::pi * std::numbers::pi * spec.t_max);
  r.t_max = spec.t_max;
  return r;
}

QuadratureResult kernel_convolution(const solver::Inhomogeneity& a, double x0,
                                    const QuadratureSpec& spec) {
  const auto& g = a.grid();
  const auto& av = a.values.values;
  QuadratureResult r;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (av[j] == 0.0) continue;
    const QuadratureResult k = kernel_K_eval(g.x(j) - x0, spec);
    r.value += av[j] * k.value * g.dx();
    r.error_estimate += std::abs(av[j]) * k.error_estimate * g.dx();
  }
  return r;
}

}  // namespace nlslab::functionals
