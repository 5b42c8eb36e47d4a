#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nlslab/error.hpp"
#include "nlslab/functionals/born.hpp"
#include "nlslab/functionals/kernel.hpp"
#include "nlslab/functionals/qeps.hpp"
#include "nlslab/functionals/quadrature.hpp"
#include "nlslab/functionals/trilinear.hpp"
#include "nlslab/spectral/fourier.hpp"

using namespace nlslab;
using namespace nlslab::functionals;
using spectral::Grid1D;

namespace {

constexpr double kPi = std::numbers::pi;

solver::Inhomogeneity make_a(const Grid1D& g, double (*f)(double)) {
  return solver::check_admissible(spectral::RealField::sample(g, f));
}
double gauss(double x) { return std::exp(-x * x); }
double sech2(double x) {
  const double s = 1.0 / std::cosh(x);
  return s * s;
}

ComplexField probe(const Grid1D& g, double center = 0.0) {
  return ComplexField::sample(g, [center](double x) { return Complex(std::exp(-(x - center) * (x - center) / 4.0)); });
}

}  // namespace

TEST(Quadrature, SpecValidation) {
  QuadratureSpec s;
  s.panels = 8;
  EXPECT_THROW(s.validate(), Error);
  s = {};
  s.tolerance = 0.0;
  EXPECT_THROW(s.validate(), Error);
}

TEST(Quadrature, GaussLegendreIsExactOnPolynomials) {
  EXPECT_NEAR(gauss_legendre([](double x) { return std::pow(x, 9) - 3 * x * x; }, -1.0, 2.0, 16),
              (std::pow(2.0, 10) - 1.0) / 10.0 - 9.0, 1e-11);
}

TEST(Quadrature, TanhSinhMatchesTrapezoid) {
  QuadratureSpec ts;
  ts.method = QuadratureMethod::TanhSinh;
  auto f = [](double th) { return std::exp(-2.0 * std::cos(th) * std::cos(th)); };
  EXPECT_NEAR(integrate(f, 0.0, kPi / 2, ts).value, integrate(f, 0.0, kPi / 2, {}).value, 1e-12);
}

TEST(Quadrature, LogWeightIdentity) {
  EXPECT_NEAR(log_weight_exact(0.1), 0.895879734614027477, 1e-15);
  for (double eps : {0.05, 0.1, 0.5}) {
    EXPECT_LT(std::abs(log_weight_integral(eps).value - log_weight_exact(eps)), 1e-10) << eps;
  }
}

TEST(Kernel, ValueAtOrigin) { EXPECT_NEAR(kernel_K(0.0), kPi / 2, 1e-12); }

TEST(Kernel, ReferenceValues) {
  EXPECT_NEAR(kernel_K(1.0), 1.01321903347467765, 1e-12);
  EXPECT_NEAR(kernel_K(3.0), 0.30504594116855844, 1e-12);
  EXPECT_NEAR(kernel_K_hat(2.0), 0.49689725357612713, 1e-10);
  EXPECT_NEAR(kernel_K_hat(0.5), 3.0774720305012382, 1e-10);
  EXPECT_NEAR(kernel_K_hat(5.0), 0.0011711404642558492, 1e-12);
}

TEST(Kernel, BesselOraclesAgree) {
  for (double x = -6.0; x <= 6.0; x += 0.25) EXPECT_NEAR(kernel_K(x), kernel_K_bessel(x), 1e-8) << x;
  for (double xi = 0.25; xi <= 6.0; xi += 0.25) EXPECT_NEAR(kernel_K_hat(xi), kernel_K_hat_bessel(xi), 1e-8) << xi;
}

TEST(Kernel, EvenPositiveMonotone) {
  double prev = kernel_K(0.0);
  for (double x = 0.1; x <= 8.0; x += 0.1) {
    const double k = kernel_K(x);
    EXPECT_EQ(k, kernel_K(-x));
    EXPECT_GT(k, 0.0);
    EXPECT_LE(k, prev);
    prev = k;
  }
  prev = kernel_K_hat(0.05);
  for (double xi = 0.1; xi <= 8.0; xi += 0.1) {
    const double k = kernel_K_hat(xi);
    EXPECT_GT(k, 0.0);
    EXPECT_LE(k, prev);
    EXPECT_EQ(k, kernel_K_hat(-xi));
    prev = k;
  }
}

TEST(Kernel, ZeroFrequencyRejected) {
  try {
    kernel_K_hat(0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Diagnostic::LogDivergence);
  }
}

TEST(Kernel, TransformNormalization) {
  // int K(x) e^{-x^2} dx = (1/2pi) int K^(xi) sqrt(pi) e^{-xi^2/4} d xi, with xi = u^2 near the log singularity.
  const double lhs = 2.0 * gauss_legendre([](double x) { return kernel_K_bessel(x) * std::exp(-x * x); }, 0.0, 8.0, 32);
  auto g = [](double u) { return u == 0.0 ? 0.0 : 2.0 * u * kernel_K_hat(u * u) * std::exp(-std::pow(u, 4) / 4.0); };
  const double rhs = std::sqrt(kPi) / kPi * (gauss_legendre(g, 0.0, 1e-3, 16) + gauss_legendre(g, 1e-3, 0.5, 64) +
                                             gauss_legendre(g, 0.5, 4.0, 64));
  EXPECT_NEAR(lhs, rhs, 1e-9);
  EXPECT_DOUBLE_EQ(kUnitaryKernelFactor, 1.0 / std::sqrt(2.0 * kPi));
}

TEST(KernelTable, ConsistentAndWritable) {
  std::vector<double> xs, xis;
  for (double x = -6.0; x <= 6.0; x += 0.5) xs.push_back(x);
  for (double xi = 0.25; xi <= 6.0; xi += 0.25) xis.push_back(xi);
  const auto t = make_kernel_table(xs, xis);
  EXPECT_LT(t.max_K_error(), 1e-8);
  EXPECT_LT(t.max_K_hat_error(), 1e-8);
  EXPECT_TRUE(t.check().empty());
  KernelTable bad = t;
  bad.K_hat[3] = -1.0;
  EXPECT_FALSE(bad.check().empty());
}

TEST(Born, ZeroInhomogeneity) {
  const Grid1D g(512, 30.0);
  EXPECT_EQ(born_functional(solver::zero_inhomogeneity(g), GaussianProbe{0.0}).value, 0.0);
}

TEST(Born, MatchesKernelConvolution) {
  const Grid1D g(1024, 30.0);
  for (auto f : {gauss, sech2}) {
    const auto a = make_a(g, f);
    for (double x0 : {-2.0, 0.0, 1.0, 3.0}) {
      const auto b = born_functional(a, GaussianProbe{x0});
      const double k = kernel_convolution(a, x0).value;
      EXPECT_LT(std::abs(b.value - k) / std::abs(k), 1e-6) << x0;
      EXPECT_GT(b.tail_bound, 0.0);
      EXPECT_LT(b.tail_bound, 1e-6 * std::abs(k));
    }
  }
}

TEST(Born, Linearity) {
  const Grid1D g(1024, 30.0);
  const auto a = make_a(g, gauss), b = make_a(g, sech2);
  auto sum_values = a.values.values;
  for (std::size_t i = 0; i < sum_values.size(); ++i) sum_values[i] += b.values.values[i];
  const auto ab = solver::check_admissible(spectral::RealField{g, sum_values});
  const GaussianProbe p{0.7};
  EXPECT_NEAR(born_functional(ab, p).value, born_functional(a, p).value + born_functional(b, p).value, 1e-10);
}

TEST(Born, NumericalProbeAgreesWithClosedForm) {
  const Grid1D g(8192, 200.0);
  const auto a = make_a(g, gauss);
  QuadratureSpec spec;
  spec.t_max = 20.0;
  const auto numeric = born_functional(a, probe(g, 1.0), spec);
  const auto closed = born_functional(a, GaussianProbe{1.0}, spec);
  EXPECT_LT(std::abs(numeric.value - closed.value), 1e-6 * closed.value);
  EXPECT_GT(numeric.tail_bound, 0.0);
}

TEST(Born, ProbeHittingBoundaryAborts) {
  const Grid1D g(256, 20.0);
  QuadratureSpec spec;
  spec.t_max = 200.0;
  EXPECT_THROW(born_functional(make_a(g, gauss), probe(g), spec), Error);
}

TEST(Trilinear, GaussianIdentityResidual) {
  const Grid1D g(512, 40.0);
  const auto p = probe(g);
  const auto r = f2_identity_residual(p, p, p);
  EXPECT_GT(r.scale, 0.0);
  EXPECT_LT(r.residual, 1e-6);
}

TEST(Trilinear, AsymmetricFieldsResidual) {
  const Grid1D g(512, 40.0);
  const auto f = probe(g, 0.5);
  const auto gg = ComplexField::sample(g, [](double x) { return std::polar(std::exp(-x * x / 3.0), 0.3 * x); });
  const auto h = ComplexField::sample(g, [](double x) { return Complex(x * std::exp(-x * x / 4.0), 0.0); });
  EXPECT_LT(f2_identity_residual(f, gg, h).residual, 1e-6);
  EXPECT_LT(f2_symmetry_residual(f, gg, h).residual, 1e-6);
}

TEST(Trilinear, WrongConstantIsDetected) {
  const Grid1D g(512, 40.0);
  const auto p = probe(g);
  F2Options o;
  o.constant = kF2Constant * 1.01;
  EXPECT_GT(f2_identity_residual(p, p, p, o).residual, 1e-3);
}

TEST(Trilinear, ZeroFields) {
  const Grid1D g(256, 20.0);
  const ComplexField z(g);
  const auto r = f2_identity_residual(z, z, z);
  EXPECT_EQ(r.scale, 0.0);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_EQ(trilinear_G(z, z, z, 0.3, 0.1, 0.2), Complex(0.0));
}

TEST(CalG, DecayBounded) {
  const Grid1D g(512, 40.0);
  const auto p = probe(g);
  std::vector<double> xi;
  for (int m = -16; m < 16; ++m) xi.push_back(0.25 * m);
  std::vector<double> scaled;
  for (double t : {10.0, 20.0, 40.0, 80.0}) {
    double sup = 0.0;
    for (const auto& v : calG(p, p, p, t, xi)) sup = std::max(sup, std::abs(v));
    scaled.push_back(sup * std::pow(t, 1.2));
  }
  for (double s : scaled) EXPECT_LE(s, 2.0 * scaled.front());
}

TEST(CalG, LinearizedKernelFirstOrder) {
  const Grid1D g(512, 40.0);
  const auto p = probe(g);
  const TrilinearTable table(p, p, p, {-0.5, 0.0, 0.7}, 12.0);
  auto rel = [&](double t) {
    const auto e = table.calG(t), l = table.calG_linearized(t);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      num = std::max(num, std::abs(e[i] - l[i]));
      den = std::max(den, std::abs(l[i]));
    }
    return num / den;
  };
  double prev = rel(10.0);
  for (double t : {20.0, 40.0, 80.0}) {
    const double cur = rel(t);
    EXPECT_NEAR(cur / prev, 0.5, 0.1) << t;
    prev = cur;
  }
}

TEST(CalG, ZeroFieldsAndZeroTime) {
  const Grid1D g(256, 20.0);
  const ComplexField z(g);
  for (const auto& v : calG(z, z, z, 3.0, {0.0, 1.0})) EXPECT_EQ(v, Complex(0.0));
  EXPECT_THROW(calG(z, z, z, 0.0, {0.0}), Error);
}

TEST(QEps, TimeKernelMatchesQuadrature) {
  for (double alpha : {-3.0, 0.4, 2.5}) {
    const double eps = 0.5;
    // t = eps / s on (0, 1].
    const Complex direct = gauss_legendre_complex(
        [&](double s) {
          if (s == 0.0) return Complex(0.0);
          const double t = eps / s;
          return (std::exp(Complex(0.0, -alpha / t)) - 1.0) / Complex(0.0, 2.0 * t) * (eps / (s * s));
        },
        0.0, 1.0, 512);
    const Complex k = qeps_time_kernel(alpha, eps);
    EXPECT_NEAR(k.real(), direct.real(), 1e-9) << alpha;
    EXPECT_NEAR(k.imag(), direct.imag(), 1e-9) << alpha;
  }
  EXPECT_EQ(qeps_time_kernel(0.0, 1.0), Complex(0.0));
}

TEST(QEps, GaussianClosedForm) {
  EXPECT_NEAR(q_eps_gaussian(1.0).imag(), 2.09621273766400517, 1e-12);
  EXPECT_NEAR(q_eps_gaussian(0.1).imag(), 19.0355741670830852, 1e-11);
  for (double eps : {1.0, 0.5}) {
    const Grid1D g = qeps_lattice(eps);
    const auto r = q_eps(probe(g), eps);
    const Complex exact = q_eps_gaussian(eps);
    EXPECT_LT(std::abs(r.value - exact) / std::abs(exact), 1e-4) << eps;
    EXPECT_TRUE(r.within_tolerance);
  }
}

TEST(QEps, TwoRoutesAgree) {
  const Grid1D g = qeps_lattice(1.0);
  const auto a = q_eps(probe(g), 1.0);
  const auto b = q_eps_spectral(probe(g), 1.0);
  EXPECT_LT(std::abs(a.value - b.value) / std::abs(a.value), 1e-4);
}

TEST(QEps, TranslationInvariance) {
  const Grid1D g = qeps_lattice(1.0, {.half_width = 18.0, .points = 144});
  const QEpsOptions o{.half_width = 18.0, .points = 144};
  const Complex base = q_eps(probe(g), 1.0, o).value;
  for (double x0 : {1.0, 3.0}) {
    EXPECT_LT(std::abs(q_eps(probe(g, x0), 1.0, o).value - base) / std::abs(base), 1e-4) << x0;
  }
}

TEST(QEps, ZeroProbeAndBadEps) {
  const Grid1D g = qeps_lattice(1.0);
  EXPECT_EQ(q_eps(ComplexField(g), 1.0).value, Complex(0.0));
  EXPECT_THROW(q_eps(probe(g), 0.0), Error);
}
