#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <chrono>
#include <memory>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "grbench/backend.hpp"
#include "grbench/errors.hpp"
#include "grbench/workload.hpp"

using namespace grbench;

namespace {

template <typename Fn>
std::optional<ErrorCode> thrown_code(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
    return std::nullopt;
  } catch (const Error& e) {
    return e.code();
  }
}

/// Forwards to a ReferenceBackend while counting calls; optionally throws on
/// the nth search.
class CountingBackend : public Backend {
 public:
  std::string label() const override { return "counting"; }
  void insert_node(NodeId id) override {
    ++single_nodes;
    inner_.insert_node(id);
  }
  void insert_edge(const WeightedEdge& edge) override {
    ++single_edges;
    inner_.insert_edge(edge);
  }
  void bulk_import(const GraphDataset& dataset) override {
    ++bulk_imports;
    inner_.bulk_import(dataset);
  }
  void bulk_import_nodes(const std::vector<NodeId>& ids) override {
    ++bulk_node_phases;
    inner_.bulk_import_nodes(ids);
  }
  void bulk_import_edges(const std::vector<WeightedEdge>& edges) override {
    ++bulk_edge_phases;
    inner_.bulk_import_edges(edges);
  }
  void update_edge_weight(NodeId from, NodeId to, std::int64_t weight) override {
    ++updates;
    inner_.update_edge_weight(from, to, weight);
  }
  void delete_edge(NodeId from, NodeId to) override {
    inner_.delete_edge(from, to);
  }
  std::optional<Path> shortest_path(NodeId start, NodeId goal) override {
    const int n = ++searches;
    if (fail_on_search > 0 && n >= fail_on_search) {
      raise(ErrorCode::transport, "injected failure");
    }
    return inner_.shortest_path(start, goal);
  }
  void reset() override {
    ++resets;
    inner_.reset();
  }
  void wipe() override {
    ++wipes;
    inner_.wipe();
  }
  std::optional<std::uint64_t> ram_probe() override { return ram_value; }

  ReferenceBackend inner_;
  std::atomic<int> single_nodes{0};
  std::atomic<int> single_edges{0};
  std::atomic<int> bulk_imports{0};
  std::atomic<int> bulk_node_phases{0};
  std::atomic<int> bulk_edge_phases{0};
  std::atomic<int> updates{0};
  std::atomic<int> searches{0};
  std::atomic<int> resets{0};
  std::atomic<int> wipes{0};
  int fail_on_search = 0;
  std::optional<std::uint64_t> ram_value;
};

GraphDataset numbered_dataset(std::size_t nodes) {
  GraphDataset d;
  for (NodeId id = 0; id < nodes; ++id) d.nodes.push_back(id);
  for (NodeId id = 0; id + 1 < nodes; ++id) {
    d.edges.push_back({id, id + 1, static_cast<std::int64_t>(id % 7)});
  }
  return d;
}

RunConfig small_config() {
  RunConfig config;
  config.nodes = 100;
  config.repetitions = 2;
  return config;
}

}  // namespace

TEST_CASE("workload names round-trip") {
  for (const auto state : {CacheState::Cold, CacheState::Warm, CacheState::Warmer,
                           CacheState::Hot}) {
    CHECK(cache_state_from_string(to_string(state)) == state);
  }
  for (const auto type : {QueryType::Bulk, QueryType::Single}) {
    CHECK(query_type_from_string(to_string(type)) == type);
  }
  for (const auto kind : {WorkloadKind::Import, WorkloadKind::PathSearch,
                          WorkloadKind::UpdateEdges}) {
    CHECK(workload_from_string(to_string(kind)) == kind);
  }
  CHECK(thrown_code([] { cache_state_from_string("lukewarm"); }) ==
        ErrorCode::invalid_argument);
  CHECK(thrown_code([] { workload_from_string("scan"); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("the one percent rule decides stddev visibility") {
  CHECK_FALSE(stddev_visible(100.0, 0.5));
  CHECK(stddev_visible(100.0, 2.0));
  CHECK_FALSE(stddev_visible(100.0, 1.0));  // exactly 1% stays hidden
  CHECK_FALSE(stddev_visible(0.0, 0.0));
}

TEST_CASE("stats are mean and sample stddev") {
  const std::vector<double> values{1.0, 2.0, 3.0};
  const Stats stats = compute_stats(values);
  CHECK(stats.mean == doctest::Approx(2.0));
  CHECK(stats.stddev == doctest::Approx(1.0));
  CHECK(stats.show_stddev);  // 1 > 0.02

  const std::vector<double> one{5.0};
  CHECK(compute_stats(one).stddev == 0.0);
  CHECK(thrown_code([] { compute_stats(std::vector<double>{}); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("summarize aggregates times and the present ram samples") {
  std::vector<Measurement> ms(3);
  ms[0].wall_time_s = 1.0;
  ms[1].wall_time_s = 2.0;
  ms[2].wall_time_s = 3.0;
  ms[0].peak_ram = 100;
  ms[2].peak_ram = 300;

  const Summary summary = summarize(ms, "path_search");
  CHECK(summary.label == "path_search");
  CHECK(summary.samples == 3);
  CHECK(summary.time.mean == doctest::Approx(2.0));
  CHECK(summary.time.stddev == doctest::Approx(1.0));
  REQUIRE(summary.ram.has_value());
  CHECK(summary.ram->mean == doctest::Approx(200.0));

  std::vector<Measurement> no_ram(2);
  no_ram[0].wall_time_s = 1.0;
  no_ram[1].wall_time_s = 1.0;
  CHECK_FALSE(summarize(no_ram).ram.has_value());

  CHECK(thrown_code([] { summarize(std::vector<Measurement>{}); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("measure times the submission window") {
  const Measurement m = measure(
      [] { std::this_thread::sleep_for(std::chrono::milliseconds(50)); });
  CHECK(m.wall_time_s >= 0.050);
  CHECK(m.wall_time_s < 0.080);  // generous single-trial bound
  CHECK(m.query_count == 1);
}

TEST_CASE("measure records the probe's peak") {
  const Measurement m = measure([] {}, [] { return std::optional<std::uint64_t>(4242); });
  CHECK(m.peak_ram == std::uint64_t{4242});

  const Measurement none = measure([] {}, [] { return std::optional<std::uint64_t>(); });
  CHECK_FALSE(none.peak_ram.has_value());
}

TEST_CASE("run_concurrent executes every query exactly once") {
  std::vector<std::atomic<int>> hits(23);
  std::vector<std::function<void()>> queries;
  for (auto& h : hits) queries.push_back([&h] { ++h; });

  for (const unsigned workers : {1u, 4u, 10u}) {
    for (auto& h : hits) h = 0;
    const Measurement m = run_concurrent(queries, workers);
    CHECK(m.query_count == 23);
    for (auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("one lane preserves submission order") {
  std::vector<int> order;
  std::vector<std::function<void()>> queries;
  for (int i = 0; i < 8; ++i) {
    queries.push_back([&order, i] { order.push_back(i); });
  }
  run_concurrent(queries, 1);
  CHECK(order == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("worker exceptions surface after the batch") {
  std::vector<std::function<void()>> queries;
  queries.push_back([] {});
  queries.push_back([] { raise(ErrorCode::transport, "boom"); });
  queries.push_back([] {});
  CHECK(thrown_code([&] { run_concurrent(queries, 2); }) == ErrorCode::transport);
}

TEST_CASE("query count override feeds bulk accounting") {
  std::vector<std::function<void()>> queries{[] {}, [] {}};
  const Measurement m = run_concurrent(queries, 2, {}, 5000);
  CHECK(m.query_count == 5000);
}

TEST_CASE("partitioning is contiguous and lossless") {
  const GraphDataset d = numbered_dataset(103);
  const auto portions = partition_dataset(d, 10);
  REQUIRE(portions.size() == 10);
  for (std::size_t i = 0; i + 1 < portions.size(); ++i) {
    CHECK(portions[i].nodes.size() == 10);
  }
  CHECK(portions.back().nodes.size() == 13);

  GraphDataset glued;
  for (const GraphDataset& p : portions) {
    glued.nodes.insert(glued.nodes.end(), p.nodes.begin(), p.nodes.end());
    glued.edges.insert(glued.edges.end(), p.edges.begin(), p.edges.end());
  }
  CHECK(glued == d);

  CHECK(partition_dataset(d, 1).size() == 1);
  CHECK(thrown_code([&] { partition_dataset(d, 0); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("cache preparation follows the state protocol") {
  const GraphDataset d = numbered_dataset(50);
  const std::vector<Endpoints> pairs{{0, 40, 40.0}, {1, 45, 44.0}};

  const struct {
    CacheState state;
    int searches;
    int resets;
  } expected[] = {
      {CacheState::Cold, 0, 1},
      {CacheState::Warm, 1, 1},
      {CacheState::Warmer, 2, 1},
      {CacheState::Hot, 0, 0},
  };
  for (const auto& row : expected) {
    CountingBackend backend;
    backend.bulk_import(d);
    prepare_cache(backend, row.state, pairs);
    CHECK(backend.searches.load() == row.searches);
    CHECK(backend.resets.load() == row.resets);
  }

  CountingBackend backend;
  backend.bulk_import(d);
  CHECK(thrown_code([&] {
          prepare_cache(backend, CacheState::Warm, std::vector<Endpoints>{});
        }) == ErrorCode::invalid_argument);
  const std::vector<Endpoints> one{{0, 40, 40.0}};
  CHECK(thrown_code([&] { prepare_cache(backend, CacheState::Warmer, one); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("run_test provisions per repetition and summarizes the stream") {
  CountingBackend backend;
  RunConfig config = small_config();
  config.repetitions = 3;
  const RunResult result = run_test(config, backend);

  CHECK_FALSE(result.aborted);
  CHECK(backend.wipes.load() == 3);       // fresh store per repetition
  CHECK(backend.bulk_imports.load() == 3);  // provisioning import
  REQUIRE(result.summaries.size() == 1);
  CHECK(result.summaries.front().label == "path_search");
  CHECK(result.summaries.front().samples == 3);
  REQUIRE(result.raw.size() == 1);
  CHECK(result.raw.front().size() == 3);
  CHECK(result.search_costs.size() == 3);

  // Distinct repetitions use distinct datasets.
  REQUIRE(result.dataset_hashes.size() == 3);
  const std::set<std::uint64_t> unique(result.dataset_hashes.begin(),
                                       result.dataset_hashes.end());
  CHECK(unique.size() == 3);
}

TEST_CASE("identical seeds reproduce identical runs") {
  CountingBackend a;
  CountingBackend b;
  const RunConfig config = small_config();
  const RunResult first = run_test(config, a);
  const RunResult second = run_test(config, b);
  CHECK(first.dataset_hashes == second.dataset_hashes);
  CHECK(first.search_costs == second.search_costs);
}

TEST_CASE("search times are per query regardless of batching") {
  CountingBackend backend;
  RunConfig config = small_config();
  config.repetitions = 1;

  RunOptions batched;
  batched.force_search_batch = 4;
  const RunResult result = run_test(config, backend, batched);
  REQUIRE(result.raw.size() == 1);
  REQUIRE(result.raw.front().size() == 1);
  CHECK(result.raw.front().front().query_count == 4);
  CHECK(result.search_costs.size() == 4);
  // 1 warmup (warm cache) + 4 measured searches
  CHECK(backend.searches.load() == 5);
}

TEST_CASE("sequential and concurrent submission find the same costs") {
  CountingBackend sequential;
  CountingBackend concurrent;
  RunConfig config = small_config();
  config.repetitions = 2;

  RunOptions pinned;
  pinned.force_search_batch = 10;
  pinned.force_lanes = 1;
  const RunResult seq = run_test(config, sequential, pinned);

  config.concurrency = true;  // 10 workers, batch of 10
  const RunResult conc = run_test(config, concurrent);

  CHECK(seq.dataset_hashes == conc.dataset_hashes);
  CHECK(seq.search_costs.size() == 20);
  CHECK(seq.search_costs == conc.search_costs);
}

TEST_CASE("bulk import measures one request per phase and portion") {
  CountingBackend backend;
  RunConfig config = small_config();
  config.workload = WorkloadKind::Import;
  config.repetitions = 2;

  const RunResult result = run_test(config, backend);
  CHECK_FALSE(result.aborted);
  REQUIRE(result.summaries.size() == 2);
  CHECK(result.summaries[0].label == "import_nodes");
  CHECK(result.summaries[1].label == "import_edges");
  // Sequential bulk: a single portion per phase.
  CHECK(backend.bulk_node_phases.load() == 2);
  CHECK(backend.bulk_edge_phases.load() == 2);
  CHECK(result.raw[0].front().query_count == 1);

  CountingBackend conc_backend;
  config.concurrency = true;
  const RunResult conc = run_test(config, conc_backend);
  CHECK(conc_backend.bulk_node_phases.load() == 20);  // 10 portions x 2 reps
  CHECK(conc.raw[0].front().query_count == 10);
}

TEST_CASE("single import measures per item") {
  CountingBackend backend;
  RunConfig config = small_config();
  config.workload = WorkloadKind::Import;
  config.query_type = QueryType::Single;
  config.repetitions = 1;

  const RunResult result = run_test(config, backend);
  CHECK(backend.single_nodes.load() == 100);
  CHECK(backend.bulk_imports.load() == 0);
  CHECK(result.raw[0].front().query_count == 100);
  const auto edges = expected_edge_count(config.grid());
  CHECK(backend.single_edges.load() == static_cast<int>(edges));
  CHECK(result.raw[1].front().query_count == edges);
}

TEST_CASE("the update workload touches distinct edges") {
  CountingBackend backend;
  RunConfig config = small_config();
  config.workload = WorkloadKind::UpdateEdges;
  config.concurrency = true;
  config.repetitions = 1;

  const RunResult result = run_test(config, backend);
  CHECK_FALSE(result.aborted);
  REQUIRE(result.summaries.size() == 1);
  CHECK(result.summaries.front().label == "update");
  CHECK(backend.updates.load() == 10);
}

TEST_CASE("a backend failure aborts with partial results") {
  CountingBackend backend;
  backend.fail_on_search = 4;
  RunConfig config = small_config();
  config.repetitions = 5;

  const RunResult result = run_test(config, backend);
  CHECK(result.aborted);
  CHECK(result.error.find("injected failure") != std::string::npos);
  CHECK(result.dataset_hashes.size() < 5);
}

TEST_CASE("ram summaries reflect the backend probe") {
  CountingBackend backend;
  backend.ram_value = 5555;
  RunConfig config = small_config();
  config.repetitions = 2;
  const RunResult result = run_test(config, backend);
  REQUIRE(result.summaries.front().ram.has_value());
  CHECK(result.summaries.front().ram->mean == doctest::Approx(5555.0));
  CHECK(result.summaries.front().ram->stddev == doctest::Approx(0.0));

  CountingBackend no_probe;
  const RunResult bare = run_test(config, no_probe);
  CHECK_FALSE(bare.summaries.front().ram.has_value());
}

TEST_CASE("the default search target is half the shortest side") {
  RunConfig config;
  CHECK(config.effective_target_euclid() == doctest::Approx(50.0));
  config.target_euclid = 12.5;
  CHECK(config.effective_target_euclid() == doctest::Approx(12.5));
  config.nodes = 400;  // 20x20
  config.target_euclid = 0.0;
  CHECK(config.effective_target_euclid() == doctest::Approx(10.0));
}

TEST_CASE("invalid run configurations are rejected up front") {
  CountingBackend backend;
  RunConfig config = small_config();
  config.repetitions = 0;
  CHECK(thrown_code([&] { run_test(config, backend); }) ==
        ErrorCode::invalid_argument);
  config = small_config();
  config.workers = 0;
  CHECK(thrown_code([&] { run_test(config, backend); }) ==
        ErrorCode::invalid_argument);
  config = small_config();
  RunOptions options;
  options.force_lanes = 0;
  CHECK(thrown_code([&] { run_test(config, backend, options); }) ==
        ErrorCode::invalid_argument);
}
