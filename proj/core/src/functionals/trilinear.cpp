#include "nlslab/functionals/trilinear.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/error.hpp"
#include "nlslab/spectral/fourier.hpp"
#include "nlslab/spectral/operators.hpp"

namespace nlslab::functionals {

namespace {

ComplexField conjugate(const ComplexField& g) {
  std::vector<Complex> v(g.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::conj(g[j]);
  return ComplexField(g.grid(), std::move(v));
}

void check_fields(const ComplexField& f, const ComplexField& g, const ComplexField& h,
                  double tail_threshold) {
  if (!(f.grid() == g.grid()) || !(f.grid() == h.grid())) {
    throw Error(Diagnostic::InvalidInput, "trilinear fields must share a grid");
  }
  for (const ComplexField* p : {&f, &g, &h}) {
    if (p->domain() != spectral::Domain::Space) {
      throw Error(Diagnostic::InvalidInput, "trilinear fields must be space-domain");
    }
    if (spectral::spectral_tail(*p) > tail_threshold) {
      throw Error(Diagnostic::UnderResolved, "trilinear field has a spectral tail above threshold");
    }
  }
}

Complex at(const ComplexField& f, long j) {
  return (j < 0 || j >= static_cast<long>(f.size())) ? Complex{} : f[static_cast<std::size_t>(j)];
}

// Sample of output offsets (in lattice units) and evaluation of route (i) for one xi.
struct TransformRoute {
  std::vector<double> axis;
  std::vector<Complex> fh, hh, gh;  // f^(xi - eta_a), h^(xi - sigma_b), (conj g)^(eta_a + sigma_b - xi)
  double step;

  TransformRoute(const ComplexField& f, const ComplexField& gbar, const ComplexField& h, double xi,
                 const F2Options& o) {
    step = 2.0 * o.window / static_cast<double>(o.points);
    for (std::size_t a = 0; a < o.points; ++a) axis.push_back(-o.window + step * static_cast<double>(a));
    for (double e : axis) {
      fh.push_back(spectral::fourier_at(f, xi - e));
      hh.push_back(spectral::fourier_at(h, xi - e));
    }
    for (std::size_t k = 0; k + 1 < 2 * o.points; ++k) {
      gh.push_back(spectral::fourier_at(gbar, -2.0 * o.window + step * static_cast<double>(k) - xi));
    }
  }

  Complex inverse(double eta, double sigma) const {
    const std::size_t m = axis.size();
    Complex total{};
    for (std::size_t a = 0; a < m; ++a) {
      Complex row{};
      for (std::size_t b = 0; b < m; ++b) {
        row += std::polar(1.0, axis[b] * sigma) * gh[a + b] * hh[b];
      }
      total += std::polar(1.0, axis[a] * eta) * fh[a] * row;
    }
    return total * step * step / (2.0 * std::numbers::pi);
  }
};

std::vector<long> offset_sample(const ComplexField& f, const F2Options& o) {
  const long stride = std::max(1L, std::lround(o.offset_step / f.grid().dx()));
  std::vector<long> out;
  for (int m = -o.offsets; m <= o.offsets; ++m) out.push_back(m * stride);
  return out;
}

}  // namespace

Complex trilinear_G(const ComplexField& f, const ComplexField& g, const ComplexField& h, double xi,
                    double eta, double sigma) {
  return spectral::fourier_at(f, xi - eta) * spectral::fourier_at(conjugate(g), eta - xi + sigma) *
         spectral::fourier_at(h, xi - sigma);
}

Complex trilinear_closed_form(const ComplexField& f, const ComplexField& g, const ComplexField& h,
                              double xi, long eta_shift, long sigma_shift, double constant) {
  const auto& grid = f.grid();
  const double eta = static_cast<double>(eta_shift) * grid.dx();
  const double sigma = static_cast<double>(sigma_shift) * grid.dx();
  Complex s{};
  for (long j = 0; j < static_cast<long>(grid.size()); ++j) {
    const Complex prod = at(f, j - eta_shift) * std::conj(g[static_cast<std::size_t>(j)]) * at(h, j - sigma_shift);
    if (prod == Complex{}) continue;
    s += prod * std::polar(1.0, xi * (eta + sigma - grid.x(static_cast<std::size_t>(j))));
  }
  return constant * s * grid.dx();
}

F2Report f2_identity_residual(const ComplexField& f, const ComplexField& g, const ComplexField& h,
                              const F2Options& o) {
  check_fields(f, g, h, o.tail_threshold);
  const ComplexField gbar = conjugate(g);
  const auto offs = offset_sample(f, o);
  const double dx = f.grid().dx();
  F2Report rep;
  double worst = 0.0;
  for (double xi : o.xi_samples) {
    const TransformRoute route(f, gbar, h, xi, o);
    for (long se : offs) {
      for (long ss : offs) {
        const Complex one = route.inverse(static_cast<double>(se) * dx, static_cast<double>(ss) * dx);
        const Complex two = trilinear_closed_form(f, g, h, xi, se, ss, o.constant);
        worst = std::max(worst, std::abs(one - two));
        rep.scale = std::max(rep.scale, std::abs(two));
        ++rep.samples;
      }
    }
  }
  rep.residual = rep.scale > 0.0 ? worst / rep.scale : worst;
  return rep;
}

F2Report f2_symmetry_residual(const ComplexField& f, const ComplexField& g, const ComplexField& h,
                              const F2Options& o) {
  check_fields(f, g, h, o.tail_threshold);
  const ComplexField gbar = conjugate(g);
  const auto offs = offset_sample(f, o);
  const double dx = f.grid().dx();
  F2Report rep;
  double worst = 0.0;
  for (double xi : o.xi_samples) {
    const TransformRoute swapped(h, gbar, f, xi, o);
    for (long se : offs) {
      for (long ss : offs) {
        const Complex lhs = swapped.inverse(static_cast<double>(se) * dx, static_cast<double>(ss) * dx);
        const Complex rhs = trilinear_closed_form(f, g, h, xi, ss, se, o.constant);
        worst = std::max(worst, std::abs(lhs - rhs));
        rep.scale = std::max(rep.scale, std::abs(rhs));
        ++rep.samples;
      }
    }
  }
  rep.residual = rep.scale > 0.0 ? worst / rep.scale : worst;
  return rep;
}

TrilinearTable::TrilinearTable(const ComplexField& f, const ComplexField& g, const ComplexField& h,
                               std::vector<double> xi, double shift_window, double constant)
    : xi_(std::move(xi)) {
  if (!(f.grid() == g.grid()) || !(f.grid() == h.grid())) {
    throw Error(Diagnostic::InvalidInput, "trilinear fields must share a grid");
  }
  const auto& grid = f.grid();
  const long n = static_cast<long>(grid.size());
  shift_step_ = grid.dx();
  const long smax = std::min(static_cast<long>(std::floor(shift_window / grid.dx() + 1e-9)), n - 1);
  for (long s = -smax; s <= smax; ++s) shifts_.push_back(static_cast<double>(s) * grid.dx());
  const long ns = static_cast<long>(shifts_.size());

  // Pair products r_{s,r}(z_j), then the sums over z for every xi at once.
  Eigen::MatrixXcd prod(ns * ns, n);
  for (long a = 0; a < ns; ++a) {
    for (long b = 0; b < ns; ++b) {
      for (long j = 0; j < n; ++j) {
        prod(a * ns + b, j) = at(f, j - (a - smax)) * std::conj(g[static_cast<std::size_t>(j)]) *
                              at(h, j - (b - smax));
      }
    }
  }
  const long nx = static_cast<long>(xi_.size());
  Eigen::MatrixXcd phase(n, nx);
  for (long j = 0; j < n; ++j) {
    for (long m = 0; m < nx; ++m) phase(j, m) = std::polar(1.0, -xi_[m] * grid.x(static_cast<std::size_t>(j)));
  }
  table_ = prod * phase;
  for (long a = 0; a < ns; ++a) {
    for (long b = 0; b < ns; ++b) {
      for (long m = 0; m < nx; ++m) {
        table_(a * ns + b, m) *= constant * grid.dx() * std::polar(1.0, xi_[m] * (shifts_[a] + shifts_[b]));
      }
    }
  }
}

Eigen::VectorXcd TrilinearTable::weights(double t, bool linearized) const {
  if (!(t > 0.0)) throw Error(Diagnostic::InvalidInput, "G_t needs t > 0");
  const long ns = static_cast<long>(shifts_.size());
  Eigen::VectorXcd w(ns * ns);
  const double pre = shift_step_ * shift_step_ / (2.0 * t);
  for (long a = 0; a < ns; ++a) {
    for (long b = 0; b < ns; ++b) {
      const double th = shifts_[a] * shifts_[b] / (2.0 * t);
      const double sh = std::sin(0.5 * th);
      const Complex k = linearized ? Complex(0.0, -th) : Complex(-2.0 * sh * sh, -std::sin(th));
      w(a * ns + b) = pre * k;
    }
  }
  return w;
}

std::vector<Complex> TrilinearTable::calG(double t) const {
  const Eigen::VectorXcd v = table_.transpose() * weights(t, false);
  return {v.data(), v.data() + v.size()};
}

std::vector<Complex> TrilinearTable::calG_linearized(double t) const {
  const Eigen::VectorXcd v = table_.transpose() * weights(t, true);
  return {v.data(), v.data() + v.size()};
}

Eigen::VectorXcd TrilinearTable::contract(const std::vector<Complex>& psi_hat) const {
  if (psi_hat.size() != xi_.size()) throw Error(Diagnostic::InvalidInput, "psi_hat length mismatch");
  const double dxi = xi_.size() > 1 ? xi_[1] - xi_[0] : 1.0;
  Eigen::VectorXcd c(static_cast<long>(psi_hat.size()));
  for (std::size_t m = 0; m < psi_hat.size(); ++m) c(static_cast<long>(m)) = std::conj(psi_hat[m]) * dxi;
  return table_ * c;
}

Complex TrilinearTable::apply_kernel(const Eigen::VectorXcd& contracted, double t) const {
  return weights(t, false).cwiseProduct(contracted).sum();
}

std::vector<Complex> calG(const ComplexField& f, const ComplexField& g, const ComplexField& h,
                          double t, const std::vector<double>& xi, double shift_window) {
  if (!(t > 0.0)) throw Error(Diagnostic::InvalidInput, "G_t needs t > 0");
  return TrilinearTable(f, g, h, xi, shift_window).calG(t);
}

}  // namespace nlslab::functionals
