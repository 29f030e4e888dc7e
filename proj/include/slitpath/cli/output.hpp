#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace slitpath::cli {

/// Shortest decimal that parses back to exactly `value` ('.' separator, no locale).
std::string format_number(double value);

/// Collects artifact contents and publishes them together. Nothing is
/// visible under the target names until every file has been written to a
/// temporary sibling; on failure the temporaries are removed.
class ArtifactSet {
public:
  explicit ArtifactSet(std::filesystem::path directory) : directory_(std::move(directory)) {}

  void add(std::string file_name, std::string contents);
  bool empty() const noexcept { return files_.empty(); }
  /// Returns the final paths. Throws std::filesystem::filesystem_error or
  /// std::runtime_error if anything cannot be written.
  std::vector<std::filesystem::path> commit() const;

private:
  std::filesystem::path directory_;
  std::vector<std::pair<std::string, std::string>> files_;
};

struct PlotSeries {
  std::string name;
  std::vector<double> y;
};

/// Minimal line plot of several series over a shared abscissa.
std::string line_plot_svg(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                          const std::vector<PlotSeries>& series);

} // namespace slitpath::cli
