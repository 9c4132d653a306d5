#include "hammersley/svg.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include "hammersley/csv.hpp"

namespace hammersley {

void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::vector<Series>& series) {
  constexpr double W = 640, H = 480, M = 50;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!(xmax > xmin)) xmin = 0, xmax = std::max(1.0, xmax);
  if (!(ymax > ymin)) ymin = 0, ymax = std::max(1.0, ymax);
  auto px = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
  auto py = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << M << "\" y=\"30\" font-size=\"16\">" << title << "</text>\n"
      << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
      << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << M << "\" y=\"" << H - 20 << "\" font-size=\"11\">" << format_coord(xmin)
      << "</text><text x=\"" << W - M << "\" y=\"" << H - 20 << "\" font-size=\"11\">"
      << format_coord(xmax) << "</text>\n"
      << "<text x=\"5\" y=\"" << H - M << "\" font-size=\"11\">" << format_coord(ymin)
      << "</text><text x=\"5\" y=\"" << M << "\" font-size=\"11\">" << format_coord(ymax)
      << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* c = colors[i % 5];
    out << "<polyline fill=\"none\" stroke=\"" << c << "\" points=\"";
    bool first = true;
    double last_y = 0;
    for (const auto& [x, y] : s.points) {
      if (s.steps && !first) out << px(x) << ',' << py(last_y) << ' ';
      out << px(x) << ',' << py(y) << ' ';
      last_y = y;
      first = false;
    }
    out << "\"/>\n<text x=\"" << W - M - 120 << "\" y=\"" << M + 15 * static_cast<double>(i)
        << "\" font-size=\"12\" fill=\"" << c << "\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace hammersley
