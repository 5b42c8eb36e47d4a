#include <benchmark/benchmark.h>

#include <cmath>

#include "nlslab/functionals/kernel.hpp"
#include "nlslab/functionals/qeps.hpp"
#include "nlslab/solver/solver.hpp"
#include "nlslab/spectral/fourier.hpp"
#include "nlslab/spectral/operators.hpp"

using namespace nlslab;
using spectral::ComplexField;
using spectral::Grid1D;

namespace {

ComplexField gaussian(const Grid1D& g) {
  return ComplexField::sample(g, [](double x) { return Complex(0.1 * std::exp(-x * x / 4.0)); });
}

void BM_FourierRoundTrip(benchmark::State& state) {
  const Grid1D g(static_cast<std::size_t>(state.range(0)), 60.0);
  const auto u = gaussian(g);
  std::vector<Complex> v(u.values().begin(), u.values().end());
  for (auto _ : state) {
    spectral::fourier_forward_in_place(g, v);
    spectral::fourier_inverse_in_place(g, v);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FourierRoundTrip)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oNLogN);

void BM_FreePropagate(benchmark::State& state) {
  const Grid1D g = Grid1D::default_grid();
  const auto u = gaussian(g);
  for (auto _ : state) benchmark::DoNotOptimize(spectral::free_propagate(u, 1.0));
}
BENCHMARK(BM_FreePropagate);

void BM_StrangStep(benchmark::State& state) {
  const Grid1D g(static_cast<std::size_t>(state.range(0)), 60.0);
  const auto a = solver::check_admissible(spectral::RealField::sample(g, [](double x) {
    const double s = 1.0 / std::cosh(x);
    return s * s;
  }));
  auto u = gaussian(g);
  for (auto _ : state) {
    u = solver::step_strang(u, a, 0.01);
    benchmark::DoNotOptimize(u.values().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StrangStep)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_KernelK(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(functionals::kernel_K(x));
    x = x > 6.0 ? 0.0 : x + 0.37;
  }
}
BENCHMARK(BM_KernelK);

void BM_KernelKHat(benchmark::State& state) {
  double xi = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(functionals::kernel_K_hat(xi));
    xi = xi > 6.0 ? 0.25 : xi + 0.37;
  }
}
BENCHMARK(BM_KernelKHat);

void BM_QEps(benchmark::State& state) {
  const double eps = 1.0 / static_cast<double>(state.range(0));
  const auto lattice = functionals::qeps_lattice(eps);
  const auto p = ComplexField::sample(lattice, [](double x) { return Complex(std::exp(-x * x / 4.0)); });
  for (auto _ : state) benchmark::DoNotOptimize(functionals::q_eps(p, eps));
}
BENCHMARK(BM_QEps)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
