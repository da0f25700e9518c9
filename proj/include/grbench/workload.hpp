#ifndef GRBENCH_WORKLOAD_HPP_
#define GRBENCH_WORKLOAD_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grbench/backend.hpp"
#include "grbench/maze.hpp"

namespace grbench {

enum class CacheState { Cold, Warm, Warmer, Hot };
enum class QueryType { Bulk, Single };
enum class WorkloadKind { Import, PathSearch, UpdateEdges };

std::string to_string(CacheState state);
CacheState cache_state_from_string(std::string_view text);
std::string to_string(QueryType type);
QueryType query_type_from_string(std::string_view text);
std::string to_string(WorkloadKind kind);
WorkloadKind workload_from_string(std::string_view text);

/// One benchmark scenario. Defaults are the standard values: 10^4 nodes,
/// 2D grid (4 edges per node), beta costs, sequential submission, warm
/// cache, bulk import, 10 repetitions on 10 distinct datasets.
struct RunConfig {
  std::uint64_t nodes = 10'000;
  Dimensionality dim = Dimensionality::TwoD;
  CostDistribution dist = CostDistribution{};  // beta(0.5, 0.5)
  bool concurrency = false;
  CacheState cache = CacheState::Warm;
  QueryType query_type = QueryType::Bulk;
  WorkloadKind workload = WorkloadKind::PathSearch;
  std::uint32_t repetitions = 10;
  std::uint32_t workers = 10;
  std::uint64_t seed = 0;
  double target_euclid = 0.0;  // 0 = half the shortest grid side

  GridSpec grid() const { return grid_spec_for(dim, nodes); }
  double effective_target_euclid() const;
};

struct Measurement {
  double wall_time_s = 0.0;
  std::optional<std::uint64_t> peak_ram = {};
  std::size_t query_count = 0;
  std::uint32_t repetition = 0;
};

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
  bool show_stddev = false;
};

///// The visualization rule: a standard deviation is shown only when it
/// exceeds 1% of the mean.
bool stddev_visible(double mean, double stddev);

Stats compute_stats(std::span<const double> values);

struct Summary {
  std::string label;  // import | import_nodes | import_edges | path_search | update
  Stats time;
  std::optional<Stats> ram;
  std::size_t samples = 0;
  RunConfig config;
};

/// Arithmetic mean and sample (n-1) standard deviation of wall time and
/// peak RAM. Rejects an empty list.
Summary summarize(std::span<const Measurement> measurements,
                  const std::string& label = "", const RunConfig& config = {});

using RamProbe = std::function<std::optional<std::uint64_t>()>;

/// Wall time from submission to full response; RAM sampled every 100 ms
/// during the window through the probe, maximum recorded.
Measurement measure(const std::function<void()>& submit,
                    const RamProbe& probe = {});

/// Submits the queries round-robin across `workers` lanes after a common
/// start barrier. Wall time spans first submission to last response. One
/// lane reproduces sequential submission exactly.
Measurement run_concurrent(const std::vector<std::function<void()>>& queries,
                           unsigned workers, const RamProbe& probe = {},
                           std::size_t query_count_override = 0);

/// Cache preparation after the dataset is loaded:
///   Cold   -> reset
///   Warm   -> reset, then 1 unmeasured path search
///   Warmer -> reset, then 2 unmeasured path searches on distinct pairs
///   Hot    -> nothing
void prepare_cache(Backend& backend, CacheState state,
                   std::span<const Endpoints> warmup_pairs);

/// Splits nodes and edges into `portions` contiguous chunks of equal size;
/// the last chunk absorbs the remainder. Concatenation reproduces the
/// dataset exactly.
std::vector<GraphDataset> partition_dataset(const GraphDataset& dataset,
                                            std::size_t portions);

/// Submission-mode hooks for comparisons that submit the same batch both
/// sequentially and concurrently (the concurrency sweep).
struct RunOptions {
  std::optional<std::size_t> force_search_batch;
  std::optional<unsigned> force_lanes;
};

struct RunResult {
  RunConfig config;
  std::vector<Summary> summaries;  // one per measured stream
  std::vector<std::vector<Measurement>> raw;
  std::vector<std::uint64_t> dataset_hashes;  // per completed repetition
  std::vector<std::optional<std::uint64_t>> search_costs;
  bool aborted = false;
  std::string error;
};

/// Executes the full procedure: per repetition a fresh dataset (seed =
/// config.seed + repetition), provisioning + cache preparation, one
/// measured workload; then aggregates. A backend error aborts the run with
/// partial results preserved and flagged.
///
/// Recorded times: path-search and update measurements are per query (a
/// concurrent batch's wall time divided by its query count), so sequential
/// and concurrent runs of the same shape are directly comparable. Import
/// measurements are whole-phase wall times (all nodes, then all edges).
RunResult run_test(const RunConfig& config, Backend& backend,
                   const RunOptions& options = {});

}  // namespace grbench

#endif  // GRBENCH_WORKLOAD_HPP_
