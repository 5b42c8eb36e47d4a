#pragma once

#include <filesystem>

#include "nlslab/solver/solver.hpp"

namespace nlslab::solver {

/// Binary checkpoint file, little-endian throughout:
///   "NLSTRACE" | u32 version | u64 n_points | f64 half_length | u64 n_checkpoints | f64 epsilon
///   then per checkpoint: f64 t | n_points x (f64 re, f64 im)
inline constexpr std::uint32_t kTraceVersion = 1;

void write_trace(const std::filesystem::path& path, const SolutionTrace& trace);
/// Restores checkpoints and epsilon; diagnostics are not stored.
SolutionTrace read_trace(const std::filesystem::path& path);

}  // namespace nlslab::solver
