#ifndef GRBENCH_SUITE_HPP_
#define GRBENCH_SUITE_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "grbench/report.hpp"
#include "grbench/workload.hpp"

namespace grbench {

/// One storage engine a suite runs against: the built-in in-memory engine
/// ("reference") or an INI file describing an external HTTP endpoint.
struct BackendRef {
  std::string label;
  std::string config_path;  // "reference" or a config file path
};

struct SuiteSpec {
  std::vector<BackendRef> backends;
  std::filesystem::path out_dir = "results";
  std::uint64_t seed = 0;
  std::uint32_t repetitions = 10;
  std::vector<std::string> sweeps = {"concurrency", "cache", "dimensionality", "size"};

  void validate() const;
};

SuiteSpec parse_suite(std::string_view json_text);
SuiteSpec load_suite(const std::filesystem::path& file);

struct SuiteCell {
  std::string sweep;
  RunConfig config;
  RunOptions options;
};

/// Expands a spec into its cells. Every cell keeps the stock defaults except
/// for the parameter its sweep varies:
///   concurrency    route search and per-item import, sequential vs concurrent
///   cache          route search across cold/warm/warmer/hot
///   dimensionality one-way line / two-way line / grid / lattice at a
///                  near-constant edge count, plus a bulk import per shape
///   size           50x50 / 100x100 / 190x190 grids, search plus bulk import
/// Sweeps share cells where their parameters coincide (the stock search cell
/// appears in several sweeps); runners deduplicate by fingerprint. Search
/// times are recorded per query, which keeps the sequential and concurrent
/// arms comparable without forcing equal batch sizes.
std::vector<SuiteCell> suite_cells(const SuiteSpec& spec);

struct SuiteOutcome {
  std::vector<ResultRow> rows;
  std::vector<std::string> failures;
  std::filesystem::path csv_path;
  std::vector<std::filesystem::path> plot_paths;

  bool complete() const { return failures.empty(); }
};

using ProgressFn = std::function<void(const std::string&)>;

/// Runs every cell against every backend, strictly sequentially. A failing
/// cell is recorded and skipped; the rest continue. Writes results.csv and
/// one route-search plot per sweep into spec.out_dir.
SuiteOutcome run_suite(const SuiteSpec& spec, const ProgressFn& progress = {});

}  // namespace grbench

#endif  // GRBENCH_SUITE_HPP_
