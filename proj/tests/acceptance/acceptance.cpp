// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset; --strict turns any FAIL into a nonzero exit and
// --report <path> copies the lines to a file.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>

#include "nlslab/error.hpp"
#include "nlslab/functionals/born.hpp"
#include "nlslab/functionals/kernel.hpp"
#include "nlslab/functionals/qeps.hpp"
#include "nlslab/functionals/quadrature.hpp"
#include "nlslab/functionals/trilinear.hpp"
#include "nlslab/inversion/inversion.hpp"
#include "nlslab/scattering/scattering.hpp"
#include "nlslab/solver/solver.hpp"
#include "nlslab/spectral/fourier.hpp"
#include "nlslab/spectral/operators.hpp"

using namespace nlslab;
using spectral::ComplexField;
using spectral::Grid1D;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::check(bool ok, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  if (!detail.empty()) detail += "; ";
  detail += buf;
  if (!ok) detail += " [x]";
  pass = pass && ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ComplexField gaussian(const Grid1D& g, double center = 0.0, double scale = 1.0) {
  return ComplexField::sample(g, [=](double x) { return Complex(scale * std::exp(-(x - center) * (x - center) / 4.0)); });
}

double sech2(double x) {
  const double s = 1.0 / std::cosh(x);
  return s * s;
}
double gauss(double x) { return std::exp(-x * x); }

solver::Inhomogeneity admissible(const Grid1D& g, const std::function<double(double)>& f) {
  return solver::check_admissible(spectral::RealField::sample(g, f));
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const Grid1D g = Grid1D::default_grid();
  const ComplexField phi = gaussian(g);
  for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
    // Beyond t = 5 the Gaussian reaches the box edge at the 1e-4 level; the
    // oracle is then the closed form summed over all periodic images.
    const bool images = t > 5.0;
    const auto u = spectral::free_propagate(phi, t, images ? spectral::BoundaryGuard::disabled() : spectral::BoundaryGuard{});
    const auto exact = spectral::gaussian_exact(t, 0.0, g, images ? spectral::Periodization::Images : spectral::Periodization::None);
    const double err = spectral::sup_distance(u, exact);
    o.check(err < 1e-10, "t=%g%s err %.2e", t, images ? " (periodic images)" : "", err);
  }
  const double dt = seconds_since(t0);
  o.check(dt < 5.0, "runtime %.2fs < 5s", dt);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  {
    const Grid1D g(256, 4.0 * std::numbers::pi);
    const double k = 3.0 * g.dxi();
    const Complex c(0.6, 0.2);
    const auto u0 = ComplexField::sample(g, [&](double x) { return c * std::polar(1.0, k * x); });
    solver::SolverConfig cfg;
    cfg.t_final = 1.0;
    cfg.guard = spectral::BoundaryGuard::disabled();
    const auto trace = solver::evolve(u0, solver::zero_inhomogeneity(g), cfg);
    const auto& u1 = trace.checkpoints.back().u;
    double err = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      err = std::max(err, std::abs(u1[j] - c * std::polar(1.0, k * g.x(j) - k * k - std::norm(c))));
    }
    o.check(err < 1e-10, "plane wave err %.2e", err);
  }
  {
    const Grid1D g = Grid1D::default_grid();
    const auto a = admissible(g, sech2);
    const auto u0 = gaussian(g, 0.0, 0.1);
    const auto u10 = solver::evolve_fixed(u0, a, 1.0, 10);
    const auto u20 = solver::evolve_fixed(u0, a, 1.0, 20);
    const auto u40 = solver::evolve_fixed(u0, a, 1.0, 40);
    const double order = std::log2((u10 - u20).l2_norm() / (u20 - u40).l2_norm());
    o.check(std::abs(order - 2.0) <= 0.2, "Strang order %.3f", order);
  }
  const double dt = seconds_since(t0);
  o.check(dt < 60.0, "runtime %.1fs < 60s", dt);
  return o;
}

struct LongRun {
  scattering::ScatteringRecord record;
  double seconds = 0.0;
};

const LongRun& sech2_run() {
  static const LongRun run = [] {
    LongRun r;
    const auto t0 = std::chrono::steady_clock::now();
    const Grid1D g = Grid1D::for_horizon(1024.0);
    solver::SolverConfig cfg;
    cfg.t_final = 1024.0;
    r.record = scattering::scattering_map(gaussian(g, 0.0, 0.1), admissible(g, sech2), cfg);
    r.seconds = seconds_since(t0);
    return r;
  }();
  return run;
}

Outcome criterion3() {
  Outcome o;
  const auto& r = sech2_run();
  o.check(r.record.solver.max_mass_drift < 1e-6, "max relative L2 drift %.2e over [0, 1024] (%zu steps)",
          r.record.solver.max_mass_drift, r.record.steps);
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto& r = sech2_run();
  std::string diffs;
  for (const auto& d : r.record.cauchy_diffs) {
    char b[48];
    std::snprintf(b, sizeof b, "%s%g:%.2e", diffs.empty() ? "" : " ", d.T, d.diff);
    diffs += b;
  }
  o.check(r.record.strictly_decreasing, "w diffs strictly decreasing for T>=4 [%s]", diffs.c_str());
  const double s = r.record.fitted_rate.value_or(NAN);
  o.check(s <= -0.1, "w slope %.4f <= -0.1", s);
  const double u = r.record.unmodified_rate.value_or(NAN);
  o.check(u > -0.02, "B=0 slope %.4f > -0.02", u);
  o.check(r.seconds < 900.0, "runtime %.0fs < 900s", r.seconds);
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  {
    const Grid1D g(512, 40.0);
    const auto p = gaussian(g);
    double res = functionals::f2_identity_residual(p, p, p).residual;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 2; ++i) {
      auto smoke = [&] {
        const Complex amp(n(rng), n(rng));
        const double c = n(rng), k = 0.5 * n(rng);
        return ComplexField::sample(g, [=](double x) { return amp * std::exp(-(x - c) * (x - c) / 3.0) * std::polar(1.0, k * x); });
      };
      const auto f = smoke(), gg = smoke(), h = smoke();
      res = std::max(res, functionals::f2_identity_residual(f, gg, h).residual);
    }
    o.check(res < 1e-6, "F2 residual %.2e", res);
  }
  {
    const auto lattice = functionals::qeps_lattice(1.0);
    const auto p = gaussian(lattice);
    const auto a = functionals::q_eps(p, 1.0), b = functionals::q_eps_spectral(p, 1.0);
    const double rel = std::abs(a.value - b.value) / std::abs(a.value);
    o.check(rel < 1e-4, "Q_eps two-route %.2e (Q = %.6f%+.6fi)", rel, a.value.real(), a.value.imag());
  }
  for (double eps : {0.05, 0.1, 0.5}) {
    const double d = std::abs(functionals::log_weight_integral(eps).value - functionals::log_weight_exact(eps));
    o.check(d < 1e-10, "log weight eps=%g %.1e", eps, d);
  }
  {
    const Grid1D g = Grid1D::default_grid();
    const auto phi = gaussian(g);
    const double f = spectral::factorization_check(phi, 1.0);
    o.check(f < 1e-8, "factorization %.2e", f);
    const auto guard = spectral::BoundaryGuard::disabled();
    ComplexField xv = spectral::free_propagate(phi, -1.0, guard);
    for (std::size_t k = 0; k < g.size(); ++k) xv.mutable_values()[k] *= g.x(k);
    const double j = (spectral::galilean_J(phi, 1.0) - spectral::free_propagate(xv, 1.0, guard)).l2_norm() / phi.l2_norm();
    o.check(j < 1e-8, "Galilean %.2e", j);
  }
  const double dt = seconds_since(t0);
  o.check(dt < 600.0, "runtime %.1fs < 600s", dt);
  return o;
}

Outcome criterion6() {
  Outcome o;
  const double k0 = std::abs(functionals::kernel_K(0.0) - std::numbers::pi / 2);
  o.check(k0 < 1e-10, "|K(0) - pi/2| %.1e", k0);
  std::vector<double> xs, xis;
  for (int i = -24; i <= 24; ++i) xs.push_back(0.25 * i);
  for (int i = 1; i <= 24; ++i) xis.push_back(0.25 * i);
  const auto t = functionals::make_kernel_table(xs, xis);
  o.check(t.max_K_error() < 1e-8, "K vs Bessel %.1e on [-6,6]", t.max_K_error());
  o.check(t.max_K_hat_error() < 1e-8, "K^ vs Bessel %.1e on [0.25,6]", t.max_K_hat_error());
  const double mn = *std::min_element(t.K_hat.begin(), t.K_hat.end());
  o.check(mn > 0.0, "min K^ %.3e > 0", mn);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const Grid1D g = Grid1D::default_grid();
  const std::pair<const char*, double (*)(double)> as[] = {{"exp(-x^2)", gauss}, {"sech^2", sech2}};
  for (const auto& [name, f] : as) {
    const auto a = admissible(g, f);
    double worst = 0.0, tail = 0.0;
    for (double x0 : {-2.0, 0.0, 1.0, 3.0}) {
      const auto b = functionals::born_functional(a, functionals::GaussianProbe{x0});
      const double k = functionals::kernel_convolution(a, x0).value;
      worst = std::max(worst, std::abs(b.value - k) / std::abs(k));
      tail = std::max(tail, b.tail_bound);
    }
    o.check(worst < 1e-6, "a=%s rel err %.2e (tail bound %.1e at T_max 1e8)", name, worst, tail);
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const Grid1D g = Grid1D::for_horizon(1024.0);
  inversion::ScatteringModeOptions so;
  so.grid = g;
  so.solver.t_final = 1024.0;
  const double born = functionals::born_functional(admissible(Grid1D::default_grid(), gauss), functionals::GaussianProbe{0.0}).value;
  std::vector<double> eps{0.05, 0.1, 0.2}, err, imag;
  for (double e : eps) {
    const auto q = functionals::q_eps(gaussian(functionals::qeps_lattice(e)), e).value;
    const auto ex = inversion::functional_from_scattering(gauss, 0.0, e, q, so);
    err.push_back(std::abs(ex.value.real() - born));
    imag.push_back(std::abs(ex.value.imag()));
    o.check(true, "eps=%g I=%.6f%+.6fi err %.3e", e, ex.value.real(), ex.value.imag(), err.back());
  }
  const double slope = solver::loglog_slope(eps, err, 0.0);
  o.check(slope >= 0.7 && slope <= 1.3, "born %.6f, error slope %.3f in [0.7, 1.3]", born, slope);
  o.check(imag[0] < imag[1] && imag[1] < imag[2], "|Im I| %.2e < %.2e < %.2e", imag[0], imag[1], imag[2]);
  const double dt = seconds_since(t0);
  o.check(dt < 7200.0, "runtime %.0fs < 7200s", dt);
  return o;
}

Outcome criterion9() {
  Outcome o;
  const Grid1D g = Grid1D::default_grid();
  const auto probes = inversion::ProbeSet::uniform();
  std::vector<double> truth;
  for (double c : probes.centers) truth.push_back(gauss(c));
  const auto s = inversion::forward_quadrature(admissible(g, gauss), probes);
  const auto rec = inversion::deconvolve(s);
  const double band = inversion::band_error(rec, truth);
  o.check(band < 0.1, "gaussian-bump band error %.2e (%zu/%zu modes, tau 1e-6)", band, rec.retained_count,
          probes.centers.size());
  const auto s0 = inversion::forward_quadrature(solver::zero_inhomogeneity(g), probes);
  const auto rec0 = inversion::deconvolve(s0);
  double zero = 0.0;
  for (double v : rec0.a) zero = std::max(zero, std::abs(v));
  o.check(zero < 1e-6, "zero recovery %.1e", zero);
  double l2 = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) l2 += std::pow(gauss(g.x(j)) - sech2(g.x(j)), 2) * g.dx();
  const auto rep = inversion::compare_maps(gauss, sech2, probes, inversion::Mode::Quadrature, g);
  o.check(std::sqrt(l2) > 0.1 && rep.functional_sup_diff > 10.0 * rep.noise_floor,
          "|a-b|_2 %.3f, sample gap %.3e vs noise floor %.1e", std::sqrt(l2), rep.functional_sup_diff, rep.noise_floor);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::function<Outcome()>> criteria{{1, criterion1}, {2, criterion2}, {3, criterion3},
                                                          {4, criterion4}, {5, criterion5}, {6, criterion6},
                                                          {7, criterion7}, {8, criterion8}, {9, criterion9}};
  bool strict = false;
  std::FILE* report = nullptr;
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--strict") == 0) {
      strict = true;
    } else if (std::strcmp(argv[i], "--report") == 0 && i + 1 < argc) {
      report = std::fopen(argv[++i], "w");
    } else {
      selected.insert(std::atoi(argv[i]));
    }
  }
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    for (std::FILE* f : {stdout, report}) {
      if (!f) continue;
      std::fprintf(f, "CRITERION %d %s: %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
      std::fflush(f);
    }
  }
  for (std::FILE* f : {stdout, report}) {
    if (f) std::fprintf(f, "SUMMARY %d failed\n", failed);
  }
  if (report) std::fclose(report);
  return strict && failed > 0 ? 1 : 0;
}
