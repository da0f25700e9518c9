#ifndef GRBENCH_REPORT_HPP_
#define GRBENCH_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grbench/workload.hpp"

namespace grbench {

/// One cell of the result matrix. The parameter columns fingerprint the run;
/// stddev visibility is derived from the stored numbers (the 1% rule), so a
/// CSV round trip loses nothing.
struct ResultRow {
  std::string backend;
  std::string workload;
  std::uint64_t nodes = 0;
  std::string dimensionality;
  std::string distribution;
  bool concurrency = false;
  std::string cache;
  std::string query_type;
  double mean_time_s = 0.0;
  double stddev_time_s = 0.0;
  std::optional<double> mean_ram_b;
  std::optional<double> stddev_ram_b;

  bool time_stddev_visible() const { return stddev_visible(mean_time_s, stddev_time_s); }
  bool ram_stddev_visible() const {
    return mean_ram_b && stddev_ram_b && stddev_visible(*mean_ram_b, *stddev_ram_b);
  }

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

ResultRow row_from_summary(const Summary& summary, std::string_view backend_label);

inline constexpr std::string_view kResultsHeader =
    "backend,workload,nodes,dimensionality,distribution,concurrency,cache,"
    "query_type,mean_time_s,stddev_time_s,mean_ram_b,stddev_ram_b";

/// Sorts by (workload, backend, nodes) and renders the CSV text. Absent RAM
/// values become empty fields. Rejects an empty row list.
std::string render_results_csv(std::vector<ResultRow> rows);

void write_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path);

std::vector<ResultRow> parse_results(std::string_view text);
std::vector<ResultRow> read_results(const std::filesystem::path& path);

/// Grouped bar chart over mean_time_s as standalone SVG text. One bar group
/// per sweep value, one series per backend; error bars only where the 1%
/// rule shows them. `sweep_parameter` is one of "concurrency", "cache",
/// "dimensionality", "nodes". Rows must agree on every other parameter
/// (backend is the series, and a dimensionality sweep may also vary the node
/// count, since it holds the edge count roughly constant instead). Output is
/// a pure function of the rows: identical input gives byte-identical SVG.
std::string render_plot(const std::vector<ResultRow>& rows, std::string_view sweep_parameter,
                        bool log_time = false);

void render_plot_svg(const std::vector<ResultRow>& rows, std::string_view sweep_parameter,
                     const std::filesystem::path& path, bool log_time = false);

}  // namespace grbench

#endif  // GRBENCH_REPORT_HPP_
