#include "nlslab/solver/trace_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "nlslab/error.hpp"

namespace nlslab::solver {

static_assert(std::endian::native == std::endian::little, "trace format assumes little-endian host");

namespace {

constexpr char kMagic[8] = {'N', 'L', 'S', 'T', 'R', 'A', 'C', 'E'};

template <class T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T take(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw Error(Diagnostic::Io, "truncated trace file");
  return v;
}

}  // namespace

void write_trace(const std::filesystem::path& path, const SolutionTrace& trace) {
  if (trace.checkpoints.empty()) throw Error(Diagnostic::InvalidInput, "empty trace");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Diagnostic::Io, "cannot open " + path.string());
  const auto& g = trace.grid();
  out.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, kTraceVersion);
  put<std::uint64_t>(out, g.size());
  put<double>(out, g.half_length());
  put<std::uint64_t>(out, trace.checkpoints.size());
  put<double>(out, trace.epsilon);
  for (const auto& cp : trace.checkpoints) {
    put<double>(out, cp.t);
    out.write(reinterpret_cast<const char*>(cp.u.values().data()),
              static_cast<std::streamsize>(cp.u.size() * sizeof(Complex)));
  }
  if (!out) throw Error(Diagnostic::Io, "write failed for " + path.string());
}

SolutionTrace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Diagnostic::Io, "cannot open " + path.string());
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw Error(Diagnostic::Io, "not a trace file: " + path.string());
  }
  if (take<std::uint32_t>(in) != kTraceVersion) throw Error(Diagnostic::Io, "unsupported trace version");
  const auto n = take<std::uint64_t>(in);
  const auto half_length = take<double>(in);
  const auto count = take<std::uint64_t>(in);
  const spectral::Grid1D grid(n, half_length);
  SolutionTrace trace;
  trace.epsilon = take<double>(in);
  for (std::uint64_t c = 0; c < count; ++c) {
    const double t = take<double>(in);
    std::vector<Complex> v(n);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(Complex)));
    if (!in) throw Error(Diagnostic::Io, "truncated trace file");
    trace.checkpoints.push_back({t, spectral::ComplexField(grid, std::move(v))});
  }
  return trace;
}

}  // namespace nlslab::solver
