#include "nlslab/solver/inhomogeneity.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/error.hpp"
#include "nlslab/spectral/operators.hpp"

namespace nlslab::solver {

using spectral::ComplexField;
using spectral::RealField;

Inhomogeneity check_admissible(const RealField& a) {
  const auto& g = a.grid;
  Inhomogeneity out{a};
  std::vector<Complex> c(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double v = a.values[j];
    out.l1 += std::abs(v) * g.dx();
    out.linf = std::max(out.linf, std::abs(v));
    out.x_l2 += g.x(j) * g.x(j) * v * v * g.dx();
    c[j] = v;
  }
  out.x_l2 = std::sqrt(out.x_l2);
  const ComplexField d = spectral::spectral_derivative(ComplexField(g, std::move(c)));
  for (std::size_t j = 0; j < g.size(); ++j) out.dx_l1 += std::abs(d[j].real()) * g.dx();
  const std::size_t m = g.edge_count(0.05);
  for (std::size_t j = 0; j < m; ++j) {
    out.edge_sup = std::max({out.edge_sup, std::abs(a.values[j]),
                             std::abs(a.values[g.size() - 1 - j])});
  }
  const bool finite = std::isfinite(out.l1) && std::isfinite(out.linf) &&
                      std::isfinite(out.x_l2) && std::isfinite(out.dx_l1);
  out.admissible = finite && out.edge_sup < kAdmissibleEdge;
  return out;
}

Inhomogeneity check_admissible(const ComplexField& a) {
  if (a.domain() != spectral::Domain::Space) {
    throw Error(Diagnostic::InvalidInput, "inhomogeneity must be given in space");
  }
  const double scale = std::max(a.sup_norm(), 1.0);
  std::vector<double> re(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (std::abs(a[j].imag()) > 1e-14 * scale) {
      throw Error(Diagnostic::InvalidInput, "inhomogeneity must be real-valued");
    }
    re[j] = a[j].real();
  }
  return check_admissible(RealField(a.grid(), std::move(re)));
}

Inhomogeneity zero_inhomogeneity(const spectral::Grid1D& grid) {
  return check_admissible(RealField(grid));
}

}  // namespace nlslab::solver
