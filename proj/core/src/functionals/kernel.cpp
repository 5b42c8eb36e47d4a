#include "nlslab/functionals/kernel.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "nlslab/error.hpp"

namespace nlslab::functionals {

QuadratureResult kernel_K_eval(double x, const QuadratureSpec& spec) {
  const double x2 = x * x;
  auto f = [x2](double th) {
    const double c = std::cos(th);
    return std::exp(-x2 * c * c);
  };
  return integrate(f, 0.0, 0.5 * std::numbers::pi, spec);
}

double kernel_K(double x, const QuadratureSpec& spec) { return kernel_K_eval(x, spec).value; }

QuadratureResult kernel_K_hat_eval(double xi, const QuadratureSpec& spec) {
  if (xi == 0.0) {
    throw Error(Diagnostic::LogDivergence, "kernel transform is infinite at xi = 0");
  }
  const double q = 0.25 * xi * xi;
  // Beyond s_max the integrand is below tolerance times its value at s = 0.
  const double decay = std::log(1.0 / spec.tolerance) + 5.0;
  const double s_max = std::asinh(std::sqrt(decay / q));
  auto f = [q](double s) {
    const double c = std::cosh(s);
    return std::exp(-q * (c * c - 1.0));
  };
  QuadratureResult r = integrate(f, 0.0, s_max, spec);
  const double scale = std::sqrt(std::numbers::pi) * std::exp(-q);
  // Tail: exp(-q sinh^2 s) <= exp(-q sinh^2 s_max) exp(-2 q sinh s_max (s - s_max)).
  const double sh = std::sinh(s_max);
  const double tail = std::exp(-q * sh * sh) / (2.0 * q * sh);
  return {r.value * scale, (r.error_estimate + tail) * scale};
}

double kernel_K_hat(double xi, const QuadratureSpec& spec) { return kernel_K_hat_eval(xi, spec).value; }

double kernel_K_bessel(double x) {
  return 0.5 * std::numbers::pi * gsl_sf_bessel_I0_scaled(0.5 * x * x);
}

double kernel_K_hat_bessel(double xi) {
  if (xi == 0.0) throw Error(Diagnostic::LogDivergence, "kernel transform is infinite at xi = 0");
  const double y = xi * xi / 8.0;
  return 0.5 * std::sqrt(std::numbers::pi) * std::exp(-2.0 * y) * gsl_sf_bessel_K0_scaled(y);
}

double KernelTable::max_K_error() const {
  double m = 0.0;
  for (std::size_t i = 0; i < K.size(); ++i) m = std::max(m, std::abs(K[i] - K_oracle[i]));
  return m;
}

double KernelTable::max_K_hat_error() const {
  double m = 0.0;
  for (std::size_t i = 0; i < K_hat.size(); ++i) m = std::max(m, std::abs(K_hat[i] - K_hat_oracle[i]));
  return m;
}

std::vector<std::string> KernelTable::check() const {
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] == -x[i] && std::abs(K[i] - K[j]) > tolerance) bad.push_back("K not even at x=" + std::to_string(x[i]));
      if (std::abs(x[j]) > std::abs(x[i]) && K[j] > K[i] + tolerance) {
        bad.push_back("K increases in |x| between " + std::to_string(x[i]) + " and " + std::to_string(x[j]));
      }
    }
    if (!(K[i] > 0.0)) bad.push_back("K not positive at x=" + std::to_string(x[i]));
  }
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (!(K_hat[i] > 0.0)) bad.push_back("K_hat not positive at xi=" + std::to_string(xi[i]));
  }
  return bad;
}

KernelTable make_kernel_table(std::span<const double> xs, std::span<const double> xis,
                              const QuadratureSpec& spec) {
  KernelTable t;
  t.tolerance = std::max(1e-8, 100.0 * spec.tolerance);
  for (double x : xs) {
    t.x.push_back(x);
    t.K.push_back(kernel_K(x, spec));
    t.K_oracle.push_back(kernel_K_bessel(x));
  }
  for (double xi : xis) {
    t.xi.push_back(xi);
    t.K_hat.push_back(kernel_K_hat(xi, spec));
    t.K_hat_oracle.push_back(kernel_K_hat_bessel(xi));
  }
  return t;
}

void write_kernel_csv(const std::filesystem::path& x_path, const std::filesystem::path& xi_path,
                      const KernelTable& t) {
  std::ofstream a(x_path), b(xi_path);
  if (!a || !b) throw Error(Diagnostic::Io, "cannot open kernel table output");
  a.precision(17);
  b.precision(17);
  a << "x,K,K_oracle,abs_error\n";
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    a << t.x[i] << ',' << t.K[i] << ',' << t.K_oracle[i] << ',' << std::abs(t.K[i] - t.K_oracle[i]) << '\n';
  }
  b << "xi,K_hat,K_hat_oracle,abs_error\n";
  for (std::size_t i = 0; i < t.xi.size(); ++i) {
    b << t.xi[i] << ',' << t.K_hat[i] << ',' << t.K_hat_oracle[i] << ','
      << std::abs(t.K_hat[i] - t.K_hat_oracle[i]) << '\n';
  }
}

}  // namespace nlslab::functionals
