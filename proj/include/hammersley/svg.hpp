#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace hammersley {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool steps = false;  ///< draw as a right-continuous staircase
};

/// Minimal line chart; output depends only on the inputs.
void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::vector<Series>& series);

}  // namespace hammersley
