#pragma once

#include <filesystem>
#include <string>

#include "nlslab/scattering/scattering.hpp"

namespace nlslab::scattering {

/// JSON document: grid, times, per-time sup norms, Cauchy differences, fitted
/// rates, w_plus as parallel re/im arrays. Snapshots themselves are not stored.
std::string record_to_json(const ScatteringRecord& record, int indent = 2);
void write_record_json(const std::filesystem::path& path, const ScatteringRecord& record);

/// CSV with header T,diff_w,diff_fhat.
void write_cauchy_csv(const std::filesystem::path& path, const ScatteringRecord& record);

}  // namespace nlslab::scattering
