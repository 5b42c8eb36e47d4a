#include "nlslab/functionals/qeps.hpp"

#include <gsl/gsl_sf_expint.h>

#include <cmath>
#include <numbers>

#include "nlslab/error.hpp"
#include "nlslab/functionals/quadrature.hpp"
#include "nlslab/functionals/trilinear.hpp"
#include "nlslab/spectral/fourier.hpp"

namespace nlslab::functionals {

namespace {

// Cin(x) = int_0^x (1 - cos s) / s ds.
double cin(double x) {
  if (x < 1.0) {
    const double x2 = x * x;
    double term = 1.0, sum = 0.0;
    for (int k = 1; k < 30; ++k) {
      term *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
      const double add = -term / (2.0 * k);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::numbers::egamma + std::log(x) - gsl_sf_Ci(x);
}

// P(eta_s, sigma_r) for |s|, |r| <= smax as a row-major (2 smax + 1)^2 array.
std::vector<Complex> autocorrelation_table(std::span<const Complex> phi, double h, long smax) {
  const long n = static_cast<long>(phi.size());
  std::size_t m = 1;
  while (m < 2 * phi.size()) m *= 2;
  const long ns = 2 * smax + 1;
  std::vector<Complex> out(static_cast<std::size_t>(ns * ns));
  std::vector<Complex> buf(m);
  for (long s = -smax; s <= smax; ++s) {
    std::fill(buf.begin(), buf.end(), Complex{});
    for (long j = 0; j < n; ++j) {
      const long k = j - s;
      if (k >= 0 && k < n) buf[static_cast<std::size_t>(j)] = phi[k] * std::conj(phi[j]);
    }
    spectral::dft_in_place(buf, -1);
    for (auto& z : buf) z = std::norm(z);
    spectral::dft_in_place(buf, +1);
    for (long r = -smax; r <= smax; ++r) {
      const std::size_t idx = static_cast<std::size_t>((r % static_cast<long>(m) + static_cast<long>(m)) %
                                                       static_cast<long>(m));
      out[static_cast<std::size_t>((s + smax) * ns + (r + smax))] = buf[idx] * (h / static_cast<double>(m));
    }
  }
  return out;
}

Complex lattice_q(std::span<const Complex> phi, double h, double half_width, double eps) {
  const long n = static_cast<long>(phi.size());
  const long smax = std::min(n - 1, static_cast<long>(std::floor(half_width / h + 1e-9)));
  const long ns = 2 * smax + 1;
  const auto P = autocorrelation_table(phi, h, smax);
  // The time kernel depends on eta sigma only through the integer product s r.
  const long pmax = smax * smax;
  std::vector<double> cin_v(static_cast<std::size_t>(pmax + 1)), si_v(static_cast<std::size_t>(pmax + 1));
  for (long p = 0; p <= pmax; ++p) {
    const double x = 0.5 * h * h * static_cast<double>(p) / eps;
    cin_v[static_cast<std::size_t>(p)] = cin(x);
    si_v[static_cast<std::size_t>(p)] = gsl_sf_Si(x);
  }
  Complex sum{};
  for (long s = -smax; s <= smax; ++s) {
    for (long r = -smax; r <= smax; ++r) {
      const long p = s * r;
      const std::size_t a = static_cast<std::size_t>(std::abs(p));
      const double si = p < 0 ? -si_v[a] : si_v[a];
      const Complex k(-0.5 * si, 0.5 * cin_v[a]);
      sum += P[static_cast<std::size_t>((s + smax) * ns + (r + smax))] * k;
    }
  }
  return sum * h * h;
}

void check_probe(const spectral::ComplexField& probe, double eps) {
  if (!(eps > 0.0)) throw Error(Diagnostic::InvalidInput, "Q_eps needs eps > 0");
  if (probe.domain() != spectral::Domain::Space) {
    throw Error(Diagnostic::InvalidInput, "Q_eps probe must be a space-domain field");
  }
}

}  // namespace

spectral::Grid1D qeps_lattice(double eps, const QEpsOptions& o) {
  if (!(eps > 0.0)) throw Error(Diagnostic::InvalidInput, "Q_eps needs eps > 0");
  const double h = std::min(2.0 * o.half_width / static_cast<double>(o.points), std::numbers::pi * eps / 6.0);
  auto n = static_cast<std::size_t>(std::ceil(2.0 * o.half_width / h));
  n += n % 2;
  return spectral::Grid1D(n, o.half_width);
}

Complex qeps_time_kernel(double alpha, double eps) {
  const double x = std::abs(alpha) / eps;
  const double si = gsl_sf_Si(x);
  return {-0.5 * (alpha < 0 ? -si : si), 0.5 * cin(x)};
}

QEpsResult q_eps(const spectral::ComplexField& probe, double eps, const QEpsOptions& o) {
  check_probe(probe, eps);
  const auto& g = probe.grid();
  QEpsResult r;
  r.spacing = g.dx();
  r.points = g.size();
  r.value = lattice_q(probe.values(), g.dx(), o.half_width, eps);
  std::vector<Complex> coarse;
  for (std::size_t j = 0; j < probe.size(); j += 2) coarse.push_back(probe[j]);
  const Complex c = lattice_q(coarse, 2.0 * g.dx(), o.half_width, eps);
  r.error_estimate = std::abs(r.value - c);
  r.within_tolerance = r.error_estimate <= o.tolerance * std::max(std::abs(r.value), 1e-300) ||
                       std::abs(r.value) == 0.0;
  return r;
}

QEpsResult q_eps_spectral(const spectral::ComplexField& probe, double eps, const QEpsOptions& o) {
  check_probe(probe, eps);
  std::vector<double> xi(o.xi_points);
  const double dxi = 2.0 * o.xi_window / static_cast<double>(o.xi_points);
  for (std::size_t m = 0; m < xi.size(); ++m) xi[m] = -o.xi_window + dxi * static_cast<double>(m);
  std::vector<Complex> phi_hat(xi.size());
  for (std::size_t m = 0; m < xi.size(); ++m) phi_hat[m] = spectral::fourier_at(probe, xi[m]);

  const TrilinearTable table(probe, probe, probe, xi, o.half_width);
  const Eigen::VectorXcd c = table.contract(phi_hat);
  const Complex minus_i(0.0, -1.0);
  auto integrand_t = [&](double t) { return minus_i * table.apply_kernel(c, t); };

  auto integrate_all = [&](int panels) {
    Complex total = gauss_legendre_complex(
        [&](double tau) { return integrand_t(1.0 / tau) / (tau * tau); }, 0.0, std::min(1.0, 1.0 / eps),
        panels);
    if (eps < 1.0) {
      total += gauss_legendre_complex([&](double tau) { return integrand_t(eps / tau) * eps / (tau * tau); }, eps, 1.0,
                              panels);
    }
    return total;
  };
  QEpsResult r;
  r.spacing = probe.grid().dx();
  r.points = probe.size();
  r.value = integrate_all(2 * o.t_panels);
  r.error_estimate = std::abs(r.value - integrate_all(o.t_panels));
  r.within_tolerance = r.error_estimate <= o.tolerance * std::max(std::abs(r.value), 1e-300) ||
                       std::abs(r.value) == 0.0;
  return r;
}

Complex q_eps_gaussian(double eps) {
  return Complex(0.0, -2.0 * std::pow(std::numbers::pi, 1.5) * (std::log(2.0 * eps) - std::asinh(eps)));
}

}  // namespace nlslab::functionals
