#include "nlslab/inversion/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "nlslab/error.hpp"
#include "nlslab/functionals/kernel.hpp"
#include "nlslab/functionals/qeps.hpp"
#include "nlslab/spectral/fourier.hpp"

namespace nlslab::inversion {

using functionals::QuadratureSpec;

ProbeSet ProbeSet::uniform(double lo, double hi, double spacing, std::vector<double> eps_list) {
  if (!(spacing > 0.0) || !(hi >= lo)) throw Error(Diagnostic::InvalidInput, "invalid probe lattice");
  ProbeSet p;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / spacing + 1e-9)) + 1;
  for (std::size_t i = 0; i < n; ++i) p.centers.push_back(lo + spacing * static_cast<double>(i));
  p.eps_list = std::move(eps_list);
  return p;
}

double ProbeSet::spacing() const {
  return centers.size() > 1 ? centers[1] - centers[0] : 0.0;
}

void ProbeSet::validate(const Grid1D& grid, double trusted) const {
  if (centers.empty()) throw Error(Diagnostic::InvalidInput, "probe set has no centers");
  const double h = spacing();
  for (std::size_t i = 1; i < centers.size(); ++i) {
    if (std::abs(centers[i] - centers[i - 1] - h) > 1e-9 * std::max(1.0, h)) {
      throw Error(Diagnostic::InvalidInput, "probe centers must be sorted and uniformly spaced");
    }
  }
  const double limit = trusted * grid.half_length();
  if (std::abs(centers.front()) > limit || std::abs(centers.back()) > limit) {
    throw Error(Diagnostic::InvalidInput, "probe centers outside the trusted interior");
  }
  for (double e : eps_list) {
    if (!(e > 0.0)) throw Error(Diagnostic::InvalidInput, "probe eps values must be positive");
  }
}

ComplexField gaussian_probe(const Grid1D& grid, double center) {
  return ComplexField::sample(grid, [center](double x) {
    const double d = x - center;
    return Complex(std::exp(-0.25 * d * d), 0.0);
  });
}

namespace {

struct Pairings {
  ComplexField phi_hat;
  Complex norm;  // <phi^, phi^>
};

Pairings probe_pairings(const Grid1D& grid, double center) {
  ComplexField phi_hat = spectral::fourier_forward(gaussian_probe(grid, center));
  const Complex norm = spectral::pairing(phi_hat, phi_hat);
  return {std::move(phi_hat), norm};
}

ComplexField cube(const ComplexField& w) {
  std::vector<Complex> v(w.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::norm(w[k]) * w[k];
  return ComplexField(w.grid(), std::move(v), w.domain());
}

}  // namespace

ExtractedFunctional extract_functional(const ComplexField& w_plus, double eps, Complex q, double center) {
  if (!(eps > 0.0)) throw Error(Diagnostic::InvalidInput, "extraction needs eps > 0");
  if (w_plus.domain() != spectral::Domain::Frequency) {
    throw Error(Diagnostic::InvalidInput, "w_plus must be a frequency-domain field");
  }
  const auto p = probe_pairings(w_plus.grid(), center);
  ExtractedFunctional out;
  out.epsilon = eps;
  out.center = center;
  out.linear_pairing = spectral::pairing(w_plus, p.phi_hat);
  const double ell = std::log1p(1.0 / (2.0 * eps));
  out.log_term = ell / Complex(0.0, 2.0) * spectral::pairing(cube(w_plus), p.phi_hat);
  const double e3 = eps * eps * eps;
  out.q_term = e3 * kQScale * q;
  out.value = (out.linear_pairing - eps * p.norm - out.log_term - out.q_term) / Complex(0.0, -e3);
  return out;
}

ExtractedFunctional extract_functional(const scattering::ScatteringRecord& record, double eps, Complex q,
                                       double center) {
  if (!record.converged || !record.w_plus) {
    throw Error(Diagnostic::NotConverged, "extraction requires a converged scattering record");
  }
  if (record.epsilon > 0.0) {
    ComplexField u0 = gaussian_probe(record.grid, center);
    u0 *= eps;
    const double expected = spectral::weighted_norm(u0, 1, 1);
    if (std::abs(record.epsilon - expected) > 1e-6 * expected) {
      throw Error(Diagnostic::InvalidInput, "record datum size does not match eps");
    }
  }
  return extract_functional(*record.w_plus, eps, q, center);
}

ComplexField synthetic_wplus(const Grid1D& grid, double eps, double center, Complex functional, Complex q) {
  const auto p = probe_pairings(grid, center);
  const Complex m = spectral::pairing(cube(p.phi_hat), p.phi_hat);
  const double ell = std::log1p(1.0 / (2.0 * eps));
  const double e3 = eps * eps * eps;
  // w = (eps + beta) phi^; beta solves a contraction of size O(eps^2).
  Complex beta{};
  for (int it = 0; it < 200; ++it) {
    const Complex c = eps + beta;
    const Complex next = (ell / Complex(0.0, 2.0) * std::norm(c) * c * m +
                          e3 * (kQScale * q - Complex(0.0, 1.0) * functional)) /
                         p.norm;
    if (std::abs(next - beta) <= 1e-17 * std::max(std::abs(next), 1e-300)) {
      beta = next;
      break;
    }
    beta = next;
  }
  ComplexField w = p.phi_hat;
  w *= (eps + beta);
  return w;
}

ConvolutionSamples assemble_convolution(std::span<const double> centers,
                                        std::span<const std::optional<Complex>> values) {
  if (centers.size() != values.size()) {
    throw Error(Diagnostic::InvalidInput, "one value per probe center required");
  }
  ConvolutionSamples s;
  s.centers.assign(centers.begin(), centers.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) {
      s.g.push_back(values[i]->real());
      s.imag.push_back(values[i]->imag());
    } else {
      s.g.push_back(std::nan(""));
      s.imag.push_back(std::nan(""));
      s.gaps.push_back(i);
    }
  }
  return s;
}

ConvolutionSamples forward_quadrature(const solver::Inhomogeneity& a, const ProbeSet& probes,
                                      const QuadratureSpec& spec) {
  std::vector<std::optional<Complex>> vals;
  double floor = 0.0;
  for (double c : probes.centers) {
    const auto born = functionals::born_functional(a, functionals::GaussianProbe{c}, spec);
    const auto conv = functionals::kernel_convolution(a, c, spec);
    vals.emplace_back(Complex(born.value, 0.0));
    floor = std::max(floor, std::abs(born.value - conv.value) + born.error_estimate + born.tail_bound);
  }
  ConvolutionSamples s = assemble_convolution(probes.centers, vals);
  s.noise_floor = floor;
  return s;
}

Eigen::MatrixXd convolution_matrix(std::span<const double> centers, const QuadratureSpec& spec) {
  const auto n = static_cast<Eigen::Index>(centers.size());
  if (n < 2) throw Error(Diagnostic::InvalidInput, "deconvolution needs at least two samples");
  const double h = centers[1] - centers[0];
  std::vector<double> k(static_cast<std::size_t>(n));
  for (Eigen::Index m = 0; m < n; ++m) k[static_cast<std::size_t>(m)] = functionals::kernel_K(h * static_cast<double>(m), spec);
  Eigen::MatrixXd T(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) T(i, j) = h * k[static_cast<std::size_t>(std::abs(i - j))];
  }
  return T;
}

namespace {

double filter(double lambda, const Regularization& reg) {
  if (reg.kind == RegularizationKind::Tikhonov) return lambda / (lambda * lambda + reg.lambda);
  return 1.0 / lambda;
}

std::vector<double> lattice_symbol(std::size_t n, double h, const QuadratureSpec& spec) {
  std::vector<double> sym(n);
  for (std::size_t k = 1; k < n; ++k) {
    const long kk = k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
    sym[k] = functionals::kernel_K_hat(2.0 * std::numbers::pi * static_cast<double>(kk) /
                                           (static_cast<double>(n) * h),
                                       spec);
  }
  return sym;
}

Reconstruction fourier_deconvolve(const ConvolutionSamples& s, const Regularization& reg,
                                  const QuadratureSpec& spec) {
  const std::size_t n = s.g.size();
  const double h = s.centers[1] - s.centers[0];
  // Mean fixed by matching total mass against the discrete operator's row sums.
  const Eigen::MatrixXd T = convolution_matrix(s.centers, spec);
  const double dc = T.sum() / static_cast<double>(n);
  Reconstruction rec;
  rec.x = s.centers;
  rec.regularization = reg;
  rec.spectrum = lattice_symbol(n, h, spec);
  rec.spectrum[0] = dc;
  rec.a = spectral_divide(s.g, h, dc, reg, spec);
  rec.retained.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    rec.retained[k] = k == 0 || rec.spectrum[k] >= reg.tau;
    rec.retained_count += rec.retained[k] ? 1 : 0;
  }
  // Real orthonormal Fourier modes in the same order as the spectrum.
  rec.basis = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const long kk = k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(kk * static_cast<long>(j)) / static_cast<double>(n);
      double v;
      if (kk == 0 || 2 * std::abs(kk) == static_cast<long>(n)) {
        v = std::cos(th) / std::sqrt(static_cast<double>(n));
      } else {
        v = (kk > 0 ? std::cos(th) : std::sin(th)) * std::sqrt(2.0 / static_cast<double>(n));
      }
      rec.basis(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = v;
    }
  }
  return rec;
}

}  // namespace

Reconstruction deconvolve(const ConvolutionSamples& s, const Regularization& reg, const QuadratureSpec& spec) {
  if (!s.complete()) {
    throw Error(Diagnostic::MissingSamples, std::to_string(s.gaps.size()) + " probe centers missing");
  }
  if (s.g.size() < 2) throw Error(Diagnostic::InvalidInput, "deconvolution needs at least two samples");
  if (!(reg.tau > 0.0) || reg.lambda < 0.0) {
    throw Error(Diagnostic::InvalidInput, "regularization needs tau > 0 and lambda >= 0");
  }
  if (reg.kind == RegularizationKind::Tikhonov && !(reg.lambda > 0.0)) {
    throw Error(Diagnostic::InvalidInput, "Tikhonov regularization needs lambda > 0");
  }
  if (reg.basis == DeconvolutionBasis::PeriodicFourier) return fourier_deconvolve(s, reg, spec);

  const Eigen::MatrixXd T = convolution_matrix(s.centers, spec);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T);
  if (eig.info() != Eigen::Success) throw Error(Diagnostic::NotConverged, "eigendecomposition failed");
  Reconstruction rec;
  rec.x = s.centers;
  rec.regularization = reg;
  rec.basis = eig.eigenvectors();
  const Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(s.g.data(), static_cast<Eigen::Index>(s.g.size()));
  const Eigen::VectorXd coeff = rec.basis.transpose() * g;
  Eigen::VectorXd a = Eigen::VectorXd::Zero(g.size());
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    const double lambda = eig.eigenvalues()(k);
    rec.spectrum.push_back(lambda);
    const bool keep = reg.kind == RegularizationKind::Tikhonov ? lambda > 0.0 : lambda >= reg.tau;
    rec.retained.push_back(keep);
    if (!keep) continue;
    ++rec.retained_count;
    a += filter(lambda, reg) * coeff(k) * rec.basis.col(k);
  }
  if (rec.retained_count == 0) {
    throw Error(Diagnostic::KernelTooSmoothing, "every mode lies below the cutoff");
  }
  rec.a.assign(a.data(), a.data() + a.size());
  return rec;
}

std::vector<double> band_projection(const Reconstruction& rec, std::span<const double> a_true) {
  if (a_true.size() != rec.x.size()) throw Error(Diagnostic::InvalidInput, "truth length mismatch");
  const Eigen::VectorXd t = Eigen::Map<const Eigen::VectorXd>(a_true.data(), static_cast<Eigen::Index>(a_true.size()));
  Eigen::VectorXd p = Eigen::VectorXd::Zero(t.size());
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    if (rec.retained[static_cast<std::size_t>(k)]) p += rec.basis.col(k).dot(t) * rec.basis.col(k);
  }
  return {p.data(), p.data() + p.size()};
}

double band_error(const Reconstruction& rec, std::span<const double> a_true) {
  const auto p = band_projection(rec, a_true);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    num += (rec.a[i] - p[i]) * (rec.a[i] - p[i]);
    den += p[i] * p[i];
  }
  if (den > 1e-300) return std::sqrt(num / den);
  return std::sqrt(num / static_cast<double>(p.size()));
}

std::vector<double> periodic_convolve(std::span<const double> a, double h, double dc_symbol,
                                      const QuadratureSpec& spec) {
  const auto sym = lattice_symbol(a.size(), h, spec);
  std::vector<Complex> v(a.begin(), a.end());
  spectral::dft_in_place(v, -1);
  v[0] *= dc_symbol;
  for (std::size_t k = 1; k < v.size(); ++k) v[k] *= sym[k];
  spectral::dft_in_place(v, +1);
  std::vector<double> out(a.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = v[j].real() / static_cast<double>(a.size());
  return out;
}

std::vector<double> spectral_divide(std::span<const double> g, double h, double dc_symbol,
                                    const Regularization& reg, const QuadratureSpec& spec) {
  const auto sym = lattice_symbol(g.size(), h, spec);
  std::vector<Complex> v(g.begin(), g.end());
  spectral::dft_in_place(v, -1);
  std::size_t kept = 0;
  if (dc_symbol >= reg.tau) {
    v[0] *= filter(dc_symbol, reg);
    ++kept;
  } else {
    v[0] = 0.0;
  }
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (sym[k] >= reg.tau) {
      v[k] *= filter(sym[k], reg);
      ++kept;
    } else {
      v[k] = 0.0;
    }
  }
  if (kept == 0) throw Error(Diagnostic::KernelTooSmoothing, "every mode lies below the cutoff");
  spectral::dft_in_place(v, +1);
  std::vector<double> out(g.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = v[j].real() / static_cast<double>(g.size());
  return out;
}

ExtractedFunctional functional_from_scattering(const std::function<double(double)>& a, double center,
                                               double eps, Complex q, const ScatteringModeOptions& o,
                                               scattering::ScatteringRecord* record_out) {
  const auto inh = solver::check_admissible(spectral::RealField::sample(o.grid, a));
  ComplexField u0 = gaussian_probe(o.grid, center);
  u0 *= eps;
  auto record = scattering::scattering_map(u0, inh, o.solver, o.scattering);
  auto out = extract_functional(record, eps, q, center);
  if (record_out) *record_out = std::move(record);
  return out;
}

CompareReport compare_maps(const std::function<double(double)>& a, const std::function<double(double)>& b,
                           const ProbeSet& probes, Mode mode, const Grid1D& grid,
                           const ScatteringModeOptions* so) {
  CompareReport rep;
  rep.centers = probes.centers;
  if (mode == Mode::Quadrature) {
    probes.validate(grid);
    const auto ia = solver::check_admissible(spectral::RealField::sample(grid, a));
    const auto ib = solver::check_admissible(spectral::RealField::sample(grid, b));
    const auto id = solver::check_admissible(
        spectral::RealField::sample(grid, [&](double x) { return a(x) - b(x); }));
    auto fa = std::async(std::launch::async, [&] { return forward_quadrature(ia, probes); });
    auto fb = std::async(std::launch::async, [&] { return forward_quadrature(ib, probes); });
    const auto ga = fa.get();
    const auto gb = fb.get();
    const auto gd = forward_quadrature(id, probes);
    rep.g_a = ga.g;
    rep.g_b = gb.g;
    rep.noise_floor = std::max(ga.noise_floor, gb.noise_floor);
    for (std::size_t i = 0; i < ga.g.size(); ++i) {
      rep.functional_sup_diff = std::max(rep.functional_sup_diff, std::abs(ga.g[i] - gb.g[i]));
      rep.linearity_residual = std::max(rep.linearity_residual, std::abs(ga.g[i] - gb.g[i] - gd.g[i]));
    }
  } else {
    if (!so) throw Error(Diagnostic::InvalidInput, "scattering mode needs solver options");
    probes.validate(so->grid);
    for (double eps : probes.eps_list) {
      const auto lattice = functionals::qeps_lattice(eps);
      const Complex q = functionals::q_eps(gaussian_probe(lattice, 0.0), eps).value;
      for (double c : probes.centers) {
        scattering::ScatteringRecord ra, rb;
        const auto ea = functional_from_scattering(a, c, eps, q, *so, &ra);
        const auto eb = functional_from_scattering(b, c, eps, q, *so, &rb);
        rep.g_a.push_back(ea.value.real());
        rep.g_b.push_back(eb.value.real());
        rep.functional_sup_diff = std::max(rep.functional_sup_diff, std::abs(ea.value - eb.value));
        rep.scattering_sup_diff = std::max(rep.scattering_sup_diff, spectral::sup_distance(*ra.w_plus, *rb.w_plus));
        // Remainder of the expansion is O(eps) after division by eps^3.
        rep.noise_floor = std::max(rep.noise_floor, eps);
      }
    }
  }
  rep.distinct = rep.functional_sup_diff > 10.0 * rep.noise_floor;
  return rep;
}

}  // namespace nlslab::inversion
