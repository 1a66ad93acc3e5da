#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace qrc {

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

/// Static line plot as a standalone SVG document.
void write_line_plot_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<PlotSeries>& series, bool log_x = false);

}  // namespace qrc
