#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nlslab::lab {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

/// Static line plot; non-positive values are dropped on log axes and
/// non-finite values everywhere.
std::string render_svg(const std::vector<Series>& series, const PlotSpec& spec);
void write_svg(const std::filesystem::path& path, const std::vector<Series>& series, const PlotSpec& spec);

}  // namespace nlslab::lab
