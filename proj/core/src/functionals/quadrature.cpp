#include "nlslab/functionals/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "nlslab/error.hpp"

namespace nlslab::functionals {

namespace {

using Rule = boost::math::quadrature::gauss<double, 16>;

template <class T, class F>
T composite(const F& f, double a, double b, int panels) {
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double h = (b - a) / panels;
  T sum{};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    T s{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      s += x[i] == 0.0 ? w[i] * f(mid) : w[i] * (f(mid - half * x[i]) + f(mid + half * x[i]));
    }
    sum += s * half;
  }
  return sum;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(tolerance > 0.0)) throw Error(Diagnostic::InvalidInput, "quadrature tolerance must be positive");
  if (panels < 16) throw Error(Diagnostic::InvalidInput, "quadrature needs at least 16 panels");
  if (!(t_max > 0.0)) throw Error(Diagnostic::InvalidInput, "time cutoff must be positive");
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
  return composite<double>(f, a, b, panels);
}

std::complex<double> gauss_legendre_complex(const std::function<std::complex<double>(double)>& f, double a,
                                    double b, int panels) {
  return composite<std::complex<double>>(f, a, b, panels);
}

QuadratureResult trapezoid(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
  spec.validate();
  int n = spec.panels;
  double h = (b - a) / n;
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) sum += f(a + i * h);
  double prev = sum * h;
  for (int level = 0; level < 20; ++level) {
    for (int i = 0; i < n; ++i) sum += f(a + (i + 0.5) * h);
    n *= 2;
    h *= 0.5;
    const double cur = sum * h;
    const double err = std::abs(cur - prev);
    if (err <= spec.tolerance * std::max(std::abs(cur), 1e-300)) return {cur, err};
    prev = cur;
  }
  throw Error(Diagnostic::ToleranceNotMet, "trapezoid refinement did not reach tolerance");
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
  spec.validate();
  if (spec.method == QuadratureMethod::Trapezoid) return trapezoid(f, a, b, spec);
  boost::math::quadrature::tanh_sinh<double> rule;
  double err = 0.0;
  const double v = rule.integrate(f, a, b, spec.tolerance, &err);
  return {v, err * std::abs(v)};
}

QuadratureResult log_weight_integral(double eps, const QuadratureSpec& spec) {
  if (!(eps > 0.0)) throw Error(Diagnostic::InvalidInput, "log-weight integral needs eps > 0");
  spec.validate();
  auto integrand = [](double s) { return 1.0 / (2.0 * (2.0 + s)); };
  const double coarse = gauss_legendre(integrand, 0.0, 1.0 / eps, spec.panels);
  const double fine = gauss_legendre(integrand, 0.0, 1.0 / eps, 2 * spec.panels);
  return {fine, std::abs(fine - coarse)};
}

double log_weight_exact(double eps) { return 0.5 * std::log1p(1.0 / (2.0 * eps)); }

}  // namespace nlslab::functionals
