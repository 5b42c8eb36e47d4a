#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "nlslab/error.hpp"
#include "nlslab/scattering/record_io.hpp"
#include "nlslab/scattering/scattering.hpp"
#include "nlslab/spectral/fourier.hpp"

using namespace nlslab;
using namespace nlslab::scattering;
using spectral::ComplexField;
using spectral::Domain;
using spectral::Grid1D;

namespace {

solver::Inhomogeneity sech2(const Grid1D& g) {
  return solver::check_admissible(spectral::RealField::sample(g, [](double x) {
    const double s = 1.0 / std::cosh(x);
    return s * s;
  }));
}

ComplexField datum(const Grid1D& g, double eps) {
  return ComplexField::sample(g, [eps](double x) { return Complex(eps * std::exp(-x * x / 4.0), 0.0); });
}

// One shared mid-length run keeps the suite fast.
const ScatteringRecord& reference_run() {
  static const ScatteringRecord r = [] {
    const Grid1D g = Grid1D::for_horizon(64.0);
    solver::SolverConfig cfg;
    cfg.t_final = 64.0;
    return scattering_map(datum(g, 0.1), sech2(g), cfg);
  }();
  return r;
}

ComplexField constant_field(const Grid1D& g, Complex c) {
  return ComplexField(g, std::vector<Complex>(g.size(), c), Domain::Frequency);
}

}  // namespace

TEST(Profile, FreeRunIsConstant) {
  const Grid1D g = Grid1D::default_grid();
  const ComplexField u0 = datum(g, 1.0);
  solver::SolutionTrace trace;
  for (double t : {0.0, 0.5, 1.0, 2.0, 4.0}) trace.checkpoints.push_back({t, spectral::free_propagate(u0, t)});
  const auto fh = profile(trace);
  const ComplexField u0hat = spectral::fourier_forward(u0);
  for (const auto& f : fh) EXPECT_LT(spectral::sup_distance(f, u0hat), 1e-10);
  EXPECT_EQ(spectral::sup_distance(fh.front(), u0hat), 0.0);
}

TEST(Profile, ContinuousUnderRefinement) {
  const Grid1D g(1024, 60.0);
  const auto a = sech2(g);
  const ComplexField u0 = datum(g, 0.5);
  auto fhat_at_one = [&](std::size_t steps) {
    return profile_at(solver::evolve_fixed(u0, a, 1.0, steps), 1.0);
  };
  const auto f1 = fhat_at_one(25), f2 = fhat_at_one(50), f3 = fhat_at_one(100);
  const double d1 = spectral::sup_distance(f1, f2), d2 = spectral::sup_distance(f2, f3);
  EXPECT_LT(d2, d1);
  EXPECT_LT(d2, 1e-5);
}

TEST(Phase, ZeroProfileGivesZeroPhase) {
  const Grid1D g(32, 4.0);
  std::vector<double> t{0.0, 0.5, 1.0};
  std::vector<ComplexField> f(3, ComplexField(g, Domain::Frequency));
  for (const auto& b : accumulate_phase(t, f)) {
    for (double v : b) EXPECT_EQ(v, 0.0);
  }
}

TEST(Phase, ConstantModulusMatchesLogAntiderivative) {
  const Grid1D g(8, 2.0);
  const double c = 0.3;
  std::vector<double> t;
  for (int i = 0; i <= 4000; ++i) t.push_back(i * 1e-3);
  std::vector<ComplexField> f(t.size(), constant_field(g, std::polar(c, 0.4)));
  const auto b = accumulate_phase(t, f);
  for (std::size_t i : {1000ul, 4000ul}) {
    EXPECT_NEAR(b[i][3], c * c * 0.5 * std::log(2.0 * t[i] + 1.0), 5e-8);
  }
}

TEST(Phase, TrapezoidSecondOrder) {
  const Grid1D g(8, 2.0);
  auto error = [&](int n) {
    std::vector<double> t;
    for (int i = 0; i <= n; ++i) t.push_back(2.0 * i / n);
    std::vector<ComplexField> f(t.size(), constant_field(g, 1.0));
    return std::abs(accumulate_phase(t, f).back()[0] - 0.5 * std::log(5.0));
  };
  EXPECT_NEAR(std::log2(error(20) / error(40)), 2.0, 0.05);
  EXPECT_NEAR(std::log2(error(40) / error(80)), 2.0, 0.05);
}

TEST(Phase, RejectsNonMonotoneTimes) {
  const Grid1D g(8, 2.0);
  std::vector<double> t{0.0, 1.0, 0.5};
  std::vector<ComplexField> f(3, constant_field(g, 1.0));
  EXPECT_THROW(accumulate_phase(t, f), Error);
}

TEST(Phase, StepAccumulatorMatchesLatticeRule) {
  const Grid1D g(16, 3.0);
  std::vector<double> t{0.0, 0.1, 0.25, 0.5, 1.0};
  std::vector<ComplexField> f;
  for (double s : t) {
    f.push_back(ComplexField::sample(g, [s](double xi) { return std::polar(std::exp(-xi * xi) * (1 + s), xi); },
                                     Domain::Frequency));
  }
  PhaseAccumulator acc(g, t);
  for (std::size_t i = 0; i < t.size(); ++i) acc(t[i], f[i].values());
  const auto ref = accumulate_phase(t, f);
  ASSERT_EQ(acc.snapshots().size(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(acc.snapshots()[i][k], ref[i][k], 1e-15);
  }
}

TEST(ModifiedProfile, Properties) {
  const Grid1D g(64, 5.0);
  const ComplexField f = ComplexField::sample(g, [](double xi) { return std::polar(std::exp(-xi * xi), xi); },
                                              Domain::Frequency);
  std::vector<double> zero(g.size(), 0.0), b(g.size()), b2(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    b[k] = 0.3 * g.xi(k) * g.xi(k);
    b2[k] = 2.0 * b[k];
  }
  EXPECT_EQ(spectral::sup_distance(modified_profile(f, zero), f), 0.0);
  const ComplexField w = modified_profile(f, b);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(std::abs(w[k]), std::abs(f[k]), 1e-15);
  EXPECT_LT(spectral::sup_distance(modified_profile(f, b2), modified_profile(w, b)), 1e-15);
}

TEST(CauchyFit, RecoversPowerLaw) {
  const Grid1D g(16, 3.0);
  std::vector<double> t{0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
  std::vector<ComplexField> w;
  for (double s : t) w.push_back(constant_field(g, s > 0.0 ? 1.0 + std::pow(s, -0.5) : 1.0));
  const auto fit = cauchy_fit(t, w, 4.0);
  ASSERT_EQ(fit.diffs.size(), 6u);
  ASSERT_TRUE(fit.slope.has_value());
  EXPECT_NEAR(*fit.slope, -0.5, 0.05);
  EXPECT_TRUE(fit.strictly_decreasing);
}

TEST(ExtractWplus, ZeroDatum) {
  const Grid1D g(512, 40.0);
  solver::SolverConfig cfg;
  cfg.t_final = 16.0;
  const auto r = scattering_map(ComplexField(g), sech2(g), cfg);
  ASSERT_TRUE(r.w_plus.has_value());
  EXPECT_EQ(r.w_plus->sup_norm(), 0.0);
  for (const auto& d : r.cauchy_diffs) EXPECT_EQ(d.diff, 0.0);
  EXPECT_TRUE(r.converged);
  EXPECT_FALSE(r.fitted_rate.has_value());
}

TEST(ExtractWplus, NeedsFourCheckpointsPastOne) {
  const Grid1D g(512, 40.0);
  solver::SolverConfig cfg;
  cfg.t_final = 8.0;
  EXPECT_THROW(scattering_map(ComplexField(g), sech2(g), cfg), Error);
}

TEST(ScatteringMap, RecordInvariants) {
  const auto& r = reference_run();
  ASSERT_EQ(r.w.size(), r.times.size());
  for (std::size_t i = 0; i < r.w.size(); ++i) {
    for (std::size_t k = 0; k < r.grid.size(); k += 7) {
      EXPECT_NEAR(std::abs(r.w[i][k]), std::abs(r.fhat[i][k]), 1e-12);
    }
  }
  for (std::size_t i = 1; i < r.phase.size(); ++i) {
    for (std::size_t k = 0; k < r.grid.size(); k += 7) EXPECT_GE(r.phase[i][k], r.phase[i - 1][k]);
  }
  EXPECT_EQ(spectral::sup_distance(*r.w_plus, r.w.back()), 0.0);
  EXPECT_TRUE(r.solver.accepted);
}

TEST(ScatteringMap, PhaseCorrectionIsNecessary) {
  const auto& r = reference_run();
  ASSERT_TRUE(r.fitted_rate && r.unmodified_rate);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(*r.fitted_rate, -0.1);
  EXPECT_GT(*r.unmodified_rate, -0.1);
  EXPECT_TRUE(r.strictly_decreasing);
}

TEST(ScatteringMap, DenseCheckpointQuadratureAgrees) {
  const Grid1D g = Grid1D::for_horizon(16.0);
  solver::SolverConfig cfg;
  cfg.t_final = 16.0;
  for (int i = 0; i <= 160; ++i) cfg.checkpoint_times.push_back(0.1 * i);
  ScatteringOptions lattice;
  lattice.quadrature = PhaseQuadrature::Checkpoints;
  const auto a = scattering_map(datum(g, 0.1), sech2(g), cfg);
  const auto b = scattering_map(datum(g, 0.1), sech2(g), cfg, lattice);
  const double d = spectral::sup_distance(*a.w_plus, *b.w_plus);
  EXPECT_GT(d, 0.0);
  EXPECT_LT(d, 1e-4 * a.w_plus->sup_norm());
}

TEST(ScatteringMap, AmplitudeSweep) {
  const Grid1D g = Grid1D::for_horizon(16.0);
  solver::SolverConfig cfg;
  cfg.t_final = 16.0;
  const ComplexField phi_hat = spectral::fourier_forward(datum(g, 1.0));
  std::vector<double> eps{0.05, 0.1, 0.2}, ratio, dev;
  for (double e : eps) {
    const auto r = scattering_map(datum(g, e), sech2(g), cfg);
    ratio.push_back(r.w_plus->sup_norm() / e);
    ComplexField lin = phi_hat;
    lin *= e;
    dev.push_back(spectral::sup_distance(*r.w_plus, lin));
  }
  for (double q : ratio) EXPECT_NEAR(q, std::sqrt(2.0), 0.05);
  const double power = solver::loglog_slope(eps, dev, 0.0);
  EXPECT_GE(power, 2.5);
}

TEST(ScatteringMap, InadmissibleRejected) {
  const Grid1D g(512, 40.0);
  const auto a = solver::check_admissible(spectral::RealField::sample(g, [](double) { return 1.0; }));
  solver::SolverConfig cfg;
  cfg.t_final = 16.0;
  EXPECT_THROW(scattering_map(datum(g, 0.1), a, cfg), Error);
}

TEST(RecordIo, JsonAndCsv) {
  const auto& r = reference_run();
  const auto dir = std::filesystem::temp_directory_path();
  write_record_json(dir / "nlslab_record.json", r);
  write_cauchy_csv(dir / "nlslab_cauchy.csv", r);
  std::ifstream in(dir / "nlslab_record.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["grid"]["n_points"].get<std::size_t>(), r.grid.size());
  EXPECT_EQ(j["times"].size(), r.times.size());
  EXPECT_EQ(j["w_plus"]["re"].size(), r.grid.size());
  EXPECT_DOUBLE_EQ(j["fitted_rate"].get<double>(), *r.fitted_rate);
  std::ifstream csv(dir / "nlslab_cauchy.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "T,diff_w,diff_fhat");
  std::size_t rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, r.cauchy_diffs.size());
}
