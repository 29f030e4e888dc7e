#include "slitpath/cli/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <unistd.h>

namespace slitpath::cli {

namespace fs = std::filesystem;

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), end);
}

void ArtifactSet::add(std::string file_name, std::string contents) {
  files_.emplace_back(std::move(file_name), std::move(contents));
}

std::vector<fs::path> ArtifactSet::commit() const {
  fs::create_directories(directory_);
  const std::string suffix = ".tmp." + std::to_string(::getpid());

  std::vector<fs::path> temps;
  auto cleanup = [&temps] {
    std::error_code ignored;
    for (const auto& t : temps) fs::remove(t, ignored);
  };

  try {
    for (const auto& [name, contents] : files_) {
      const fs::path tmp = directory_ / ("." + name + suffix);
      temps.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
      out.close();
      if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    }
  } catch (...) {
    cleanup();
    throw;
  }

  std::vector<fs::path> finals;
  for (std::size_t i = 0; i < files_.size(); ++i) {
    const fs::path target = directory_ / files_[i].first;
    fs::rename(temps[i], target);
    finals.push_back(target);
  }
  return finals;
}

std::string line_plot_svg(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                          const std::vector<PlotSeries>& series) {
  constexpr double width = 800.0, height = 480.0, margin = 50.0;
  constexpr std::array<const char*, 6> colours{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  for (double v : x) {
    x_lo = std::min(x_lo, v);
    x_hi = std::max(x_hi, v);
  }
  double y_hi = 0.0;
  for (const auto& s : series)
    for (double v : s.y)
      if (std::isfinite(v)) y_hi = std::max(y_hi, v);
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > 0.0)) y_hi = 1.0;

  auto px = [&](double v) { return margin + (v - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
  auto py = [&](double v) { return height - margin - v / y_hi * (height - 2 * margin); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << margin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title
      << "</text>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << x_label << "</text>\n";
  svg << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin << "\" height=\""
      << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    svg << "<polyline fill=\"none\" stroke-width=\"1\" stroke=\"" << colours[k % colours.size()] << "\" points=\"";
    const std::size_t n = std::min(x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.y[i])) continue;
      svg << format_number(std::round(px(x[i]) * 100) / 100) << ',' << format_number(std::round(py(s.y[i]) * 100) / 100)
          << ' ';
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << width - margin - 150 << "\" y=\"" << margin + 16 + 16 * static_cast<double>(k)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << colours[k % colours.size()] << "\">" << s.name
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

} // namespace slitpath::cli
