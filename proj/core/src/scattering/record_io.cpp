#include "nlslab/scattering/record_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "nlslab/error.hpp"

namespace nlslab::scattering {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json diffs_json(const std::vector<CauchyDiff>& diffs) {
  json arr = json::array();
  for (const auto& d : diffs) arr.push_back({{"T", d.T}, {"diff", d.diff}});
  return arr;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Diagnostic::Io, "cannot open " + path.string());
  return out;
}

}  // namespace

std::string record_to_json(const ScatteringRecord& r, int indent) {
  json j;
  j["grid"] = {{"n_points", r.grid.size()}, {"half_length", r.grid.half_length()}, {"dx", r.grid.dx()}};
  j["epsilon_h11"] = r.epsilon;
  j["steps"] = r.steps;
  j["times"] = r.times;
  json norms = json::array();
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    json row = {{"t", r.times[i]}, {"fhat_sup", r.fhat[i].sup_norm()}};
    double bmax = 0.0;
    for (double b : r.phase[i]) bmax = std::max(bmax, b);
    row["phase_sup"] = bmax;
    if (i < r.solver.mass_drift.size()) {
      row["mass_drift"] = r.solver.mass_drift[i];
      row["u_sup_times_sqrt_t"] = r.solver.sup_decay[i];
      row["profile_weight"] = r.solver.profile_weight[i];
    }
    norms.push_back(row);
  }
  j["per_time"] = norms;
  j["fit_start"] = r.fit_start;
  j["cauchy_diffs"] = diffs_json(r.cauchy_diffs);
  j["fitted_rate"] = optional_number(r.fitted_rate);
  j["unmodified_diffs"] = diffs_json(r.unmodified_diffs);
  j["unmodified_rate"] = optional_number(r.unmodified_rate);
  j["delta_fit"] = optional_number(r.delta_fit);
  j["strictly_decreasing"] = r.strictly_decreasing;
  j["converged"] = r.converged;
  j["diagnostic"] = r.diagnostic;
  j["acceptance_rule"] = r.solver.acceptance_rule;
  j["accepted"] = r.solver.accepted;
  if (r.w_plus) {
    std::vector<double> xi, re, im;
    for (std::size_t k = 0; k < r.w_plus->size(); ++k) {
      xi.push_back(r.grid.xi(k));
      re.push_back((*r.w_plus)[k].real());
      im.push_back((*r.w_plus)[k].imag());
    }
    j["w_plus"] = {{"xi", xi}, {"re", re}, {"im", im}};
  } else {
    j["w_plus"] = nullptr;
  }
  return j.dump(indent);
}

void write_record_json(const std::filesystem::path& path, const ScatteringRecord& record) {
  auto out = open_out(path);
  out << record_to_json(record) << '\n';
}

void write_cauchy_csv(const std::filesystem::path& path, const ScatteringRecord& r) {
  auto out = open_out(path);
  out.precision(17);
  out << "T,diff_w,diff_fhat\n";
  for (std::size_t i = 0; i < r.cauchy_diffs.size(); ++i) {
    out << r.cauchy_diffs[i].T << ',' << r.cauchy_diffs[i].diff << ',';
    if (i < r.unmodified_diffs.size()) out << r.unmodified_diffs[i].diff;
    out << '\n';
  }
}

}  // namespace nlslab::scattering
