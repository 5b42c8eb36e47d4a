#include <gtest/gtest.h>

#include <cmath>
#include <optional>

#include "nlslab/error.hpp"
#include "nlslab/functionals/born.hpp"
#include "nlslab/functionals/qeps.hpp"
#include "nlslab/inversion/inversion.hpp"

using namespace nlslab;
using namespace nlslab::inversion;

namespace {

double gauss(double x) { return std::exp(-x * x); }

solver::Inhomogeneity sample_a(const Grid1D& g, const std::function<double(double)>& f) {
  return solver::check_admissible(spectral::RealField::sample(g, f));
}

double rel_l2(std::span<const double> a, std::span<const double> b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST(ProbeSet, UniformLattice) {
  const auto p = ProbeSet::uniform();
  EXPECT_EQ(p.centers.size(), 33u);
  EXPECT_DOUBLE_EQ(p.spacing(), 0.5);
  EXPECT_NO_THROW(p.validate(Grid1D::default_grid()));
  EXPECT_THROW(p.validate(Grid1D(256, 9.0)), Error);
  ProbeSet bad = p;
  std::swap(bad.centers[0], bad.centers[1]);
  EXPECT_THROW(bad.validate(Grid1D::default_grid()), Error);
}

TEST(Extract, SyntheticRecordRecoversFunctional) {
  const Grid1D g = Grid1D::default_grid();
  for (double eps : {0.05, 0.1, 0.2}) {
    const Complex q = functionals::q_eps_gaussian(eps);
    const Complex truth(0.8137, 0.0);
    const auto w = synthetic_wplus(g, eps, 1.5, truth, q);
    const auto e = extract_functional(w, eps, q, 1.5);
    EXPECT_LT(std::abs(e.value - truth), 1e-9) << eps;
  }
}

TEST(Extract, RejectsUnconvergedRecord) {
  scattering::ScatteringRecord r;
  r.grid = Grid1D(64, 8.0);
  r.converged = false;
  r.w_plus = ComplexField(r.grid, spectral::Domain::Frequency);
  EXPECT_THROW(extract_functional(r, 0.1, Complex(0.0), 0.0), Error);
}

TEST(Forward, MatchesKernelConvolution) {
  const Grid1D g = Grid1D::default_grid();
  const auto a = sample_a(g, gauss);
  const auto probes = ProbeSet::uniform(-3.0, 3.0, 1.0);
  const auto s = forward_quadrature(a, probes);
  ASSERT_TRUE(s.complete());
  for (std::size_t i = 0; i < s.centers.size(); ++i) {
    const double k = functionals::kernel_convolution(a, s.centers[i]).value;
    EXPECT_LT(std::abs(s.g[i] - k) / k, 1e-6);
    EXPECT_EQ(s.imag[i], 0.0);
  }
  EXPECT_LT(s.noise_floor, 1e-6);
}

TEST(Forward, ZeroInhomogeneity) {
  const Grid1D g = Grid1D::default_grid();
  const auto s = forward_quadrature(solver::zero_inhomogeneity(g), ProbeSet::uniform());
  for (double v : s.g) EXPECT_EQ(v, 0.0);
}

TEST(Forward, TranslationEquivariance) {
  const Grid1D g = Grid1D::default_grid();
  const auto probes = ProbeSet::uniform(-6.0, 6.0, 0.5);
  const auto s0 = forward_quadrature(sample_a(g, gauss), probes);
  const auto s1 = forward_quadrature(sample_a(g, [](double x) { return gauss(x - 1.0); }), probes);
  for (std::size_t i = 0; i + 2 < s0.g.size(); ++i) EXPECT_NEAR(s1.g[i + 2], s0.g[i], 1e-9);
}

TEST(Assemble, GapsAreFlaggedNotFilled) {
  std::vector<double> c{0.0, 0.5, 1.0, 1.5};
  std::vector<std::optional<Complex>> v{Complex(1.0, 0.1), std::nullopt, Complex(0.5, 0.0), Complex(0.2, -0.01)};
  const auto s = assemble_convolution(c, v);
  ASSERT_EQ(s.gaps, std::vector<std::size_t>{1});
  EXPECT_TRUE(std::isnan(s.g[1]));
  EXPECT_DOUBLE_EQ(s.imag[0], 0.1);
  EXPECT_THROW(deconvolve(s), Error);
}

TEST(Deconvolve, ZeroSamples) {
  ConvolutionSamples s;
  s.centers = ProbeSet::uniform().centers;
  s.g.assign(s.centers.size(), 0.0);
  s.imag.assign(s.centers.size(), 0.0);
  const auto r = deconvolve(s);
  for (double v : r.a) EXPECT_EQ(v, 0.0);
  EXPECT_GT(r.retained_count, 0u);
}

TEST(Deconvolve, GaussianRoundTrip) {
  const Grid1D g = Grid1D::default_grid();
  const auto probes = ProbeSet::uniform();
  const auto s = forward_quadrature(sample_a(g, gauss), probes);
  const auto r = deconvolve(s);
  std::vector<double> truth;
  for (double c : probes.centers) truth.push_back(gauss(c));
  EXPECT_LT(band_error(r, truth), 0.1);
}

TEST(Deconvolve, LeftInverseOnRetainedBand) {
  const auto probes = ProbeSet::uniform();
  const auto T = convolution_matrix(probes.centers);
  ConvolutionSamples seed;
  seed.centers = probes.centers;
  seed.g.assign(probes.centers.size(), 0.0);
  seed.imag = seed.g;
  const auto modes = deconvolve(seed);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(probes.centers.size());
  for (std::size_t k = 0, used = 0; k < modes.retained.size() && used < 5; ++k) {
    if (modes.retained[k]) a += (1.0 + used++) * modes.basis.col(k);
  }
  const Eigen::VectorXd gv = T * a;
  ConvolutionSamples s = seed;
  s.g.assign(gv.data(), gv.data() + gv.size());
  const auto r = deconvolve(s);
  EXPECT_LT(rel_l2(r.a, std::vector<double>(a.data(), a.data() + a.size())), 1e-6);
}

TEST(Deconvolve, ImpossibleCutoff) {
  ConvolutionSamples s;
  s.centers = ProbeSet::uniform().centers;
  s.g.assign(s.centers.size(), 1.0);
  s.imag.assign(s.centers.size(), 0.0);
  Regularization reg;
  reg.tau = 1e6;
  try {
    deconvolve(s, reg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Diagnostic::KernelTooSmoothing);
  }
}

TEST(Deconvolve, TikhonovApproachesCutoff) {
  const Grid1D g = Grid1D::default_grid();
  const auto probes = ProbeSet::uniform();
  const auto s = forward_quadrature(sample_a(g, gauss), probes);
  Regularization tik;
  tik.kind = RegularizationKind::Tikhonov;
  tik.lambda = 1e-14;
  std::vector<double> truth;
  for (double c : probes.centers) truth.push_back(gauss(c));
  const auto r = deconvolve(s, tik);
  EXPECT_LT(band_error(r, truth), 0.1);
}

TEST(Periodic, SpectralDivideIsLeftInverse) {
  const std::size_t n = 64;
  const double h = 0.5;
  std::vector<double> a(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double th = 2.0 * std::numbers::pi * j / n;
    a[j] = 0.3 + std::cos(th) - 0.4 * std::sin(3.0 * th) + 0.2 * std::cos(5.0 * th);
  }
  const double dc = 10.0;
  const auto g = periodic_convolve(a, h, dc);
  const auto back = spectral_divide(g, h, dc);
  EXPECT_LT(rel_l2(back, a), 1e-6);
}

TEST(Periodic, BasisOptionInvertsCirculantModel) {
  const auto probes = ProbeSet::uniform();
  const std::size_t n = probes.centers.size();
  const double dc = convolution_matrix(probes.centers).sum() / static_cast<double>(n);
  std::vector<double> a(n);
  for (std::size_t j = 0; j < n; ++j) a[j] = 0.5 + std::cos(2.0 * std::numbers::pi * 2.0 * j / n);
  ConvolutionSamples s;
  s.centers = probes.centers;
  s.g = periodic_convolve(a, probes.spacing(), dc);
  s.imag.assign(n, 0.0);
  Regularization reg;
  reg.basis = DeconvolutionBasis::PeriodicFourier;
  const auto r = deconvolve(s, reg);
  EXPECT_LT(rel_l2(r.a, a), 1e-6);
  EXPECT_LT(band_error(r, a), 1e-6);
}

TEST(CompareMaps, IdenticalMapsAtNoiseFloor) {
  const auto rep = compare_maps(gauss, gauss, ProbeSet::uniform(-4.0, 4.0, 1.0), Mode::Quadrature);
  EXPECT_EQ(rep.functional_sup_diff, 0.0);
  EXPECT_FALSE(rep.distinct);
}

TEST(CompareMaps, LinearityAndSeparation) {
  auto half = [](double x) { return 0.5 * gauss(x); };
  const auto rep = compare_maps(gauss, half, ProbeSet::uniform(-4.0, 4.0, 1.0), Mode::Quadrature);
  EXPECT_LT(rep.linearity_residual, 1e-9);
  EXPECT_TRUE(rep.distinct);
  EXPECT_GT(rep.functional_sup_diff, 10.0 * rep.noise_floor);
}

TEST(CompareMaps, TranslateGivesTranslatedProfile) {
  auto shifted = [](double x) { return gauss(x - 2.0); };
  const auto rep = compare_maps(gauss, shifted, ProbeSet::uniform(-6.0, 6.0, 1.0), Mode::Quadrature);
  for (std::size_t i = 0; i + 2 < rep.g_a.size(); ++i) EXPECT_NEAR(rep.g_b[i + 2], rep.g_a[i], 1e-9);
  EXPECT_TRUE(rep.distinct);
}

TEST(CompareMaps, ScatteringModeIdenticalMaps) {
  ScatteringModeOptions o;
  o.grid = Grid1D::for_horizon(16.0);
  o.solver.t_final = 16.0;
  ProbeSet probes{{0.0}, {0.1}};
  const auto rep = compare_maps(gauss, gauss, probes, Mode::Scattering, o.grid, &o);
  EXPECT_EQ(rep.scattering_sup_diff, 0.0);
  EXPECT_EQ(rep.functional_sup_diff, 0.0);
  EXPECT_EQ(rep.g_a.size(), 1u);
}
