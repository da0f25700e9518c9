#include "grbench/workload.hpp"

#include <algorithm>
#include <barrier>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <random>
#include <set>
#include <thread>
#include <utility>

#include "grbench/errors.hpp"
#include "grbench/util.hpp"

namespace grbench {

std::string to_string(CacheState state) {
  switch (state) {
    case CacheState::Cold: return "cold";
    case CacheState::Warm: return "warm";
    case CacheState::Warmer: return "warmer";
    case CacheState::Hot: return "hot";
  }
  return "?";
}

CacheState cache_state_from_string(std::string_view text) {
  if (text == "cold") return CacheState::Cold;
  if (text == "warm") return CacheState::Warm;
  if (text == "warmer") return CacheState::Warmer;
  if (text == "hot") return CacheState::Hot;
  raise(ErrorCode::invalid_argument,
        "unknown cache state '" + std::string(text) + "' (cold|warm|warmer|hot)");
}

std::string to_string(QueryType type) {
  return type == QueryType::Bulk ? "bulk" : "single";
}

QueryType query_type_from_string(std::string_view text) {
  if (text == "bulk") return QueryType::Bulk;
  if (text == "single") return QueryType::Single;
  raise(ErrorCode::invalid_argument,
        "unknown query type '" + std::string(text) + "' (bulk|single)");
}

std::string to_string(WorkloadKind kind) {
  switch (kind) {
    case WorkloadKind::Import: return "import";
    case WorkloadKind::PathSearch: return "path_search";
    case WorkloadKind::UpdateEdges: return "update";
  }
  return "?";
}

WorkloadKind workload_from_string(std::string_view text) {
  if (text == "import") return WorkloadKind::Import;
  if (text == "path_search") return WorkloadKind::PathSearch;
  if (text == "update") return WorkloadKind::UpdateEdges;
  raise(ErrorCode::invalid_argument,
        "unknown workload '" + std::string(text) + "' (import|path_search|update)");
}

double RunConfig::effective_target_euclid() const {
  if (target_euclid > 0.0) return target_euclid;
  return static_cast<double>(grid().min_side()) / 2.0;
}

bool stddev_visible(double mean, double stddev) { return stddev > 0.01 * mean; }

Stats compute_stats(std::span<const double> values) {
  if (values.empty()) {
    raise(ErrorCode::invalid_argument, "cannot aggregate an empty sample list");
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  const double stddev =
      values.size() > 1 ? std::sqrt(acc / static_cast<double>(values.size() - 1)) : 0.0;
  return Stats{mean, stddev, stddev_visible(mean, stddev)};
}

Summary summarize(std::span<const Measurement> measurements, const std::string& label,
                  const RunConfig& config) {
  if (measurements.empty()) {
    raise(ErrorCode::invalid_argument, "cannot summarize an empty measurement list");
  }
  std::vector<double> times;
  times.reserve(measurements.size());
  std::vector<double> rams;
  for (const Measurement& m : measurements) {
    times.push_back(m.wall_time_s);
    if (m.peak_ram) rams.push_back(static_cast<double>(*m.peak_ram));
  }
  Summary summary;
  summary.label = label;
  summary.config = config;
  summary.samples = measurements.size();
  summary.time = compute_stats(times);
  if (!rams.empty()) summary.ram = compute_stats(rams);
  return summary;
}

namespace {

/// Samples the probe at the window edges and every 100 ms in between,
/// keeping the maximum. finish() (or destruction) stops the thread.
class RamSampler {
 public:
  explicit RamSampler(const RamProbe& probe) : probe_(probe) {
    if (!probe_) return;
    record(probe_());
    worker_ = std::thread([this] { loop(); });
  }

  RamSampler(const RamSampler&) = delete;
  RamSampler& operator=(const RamSampler&) = delete;

  ~RamSampler() { stop(); }

  std::optional<std::uint64_t> finish() {
    stop();
    return peak_;
  }

 private:
  void stop() {
    if (!worker_.joinable()) return;
    {
      std::lock_guard lock(mu_);
      done_ = true;
    }
    cv_.notify_all();
    worker_.join();
    record(probe_());
  }

  void loop() {
    std::unique_lock lock(mu_);
    while (!cv_.wait_for(lock, std::chrono::milliseconds(100), [this] { return done_; })) {
      lock.unlock();
      record(probe_());
      lock.lock();
    }
  }

  void record(std::optional<std::uint64_t> value) {
    if (!value) return;
    std::lock_guard lock(peak_mu_);
    if (!peak_ || *value > *peak_) peak_ = value;
  }

  const RamProbe& probe_;
  std::thread worker_;
  std::mutex mu_;
  std::condition_variable cv_;
  bool done_ = false;
  std::mutex peak_mu_;
  std::optional<std::uint64_t> peak_;
};

double seconds_between(std::chrono::steady_clock::time_point t0,
                       std::chrono::steady_clock::time_point t1) {
  const double s = std::chrono::duration<double>(t1 - t0).count();
  return std::max(s, 1e-9);  // a wall time of exactly zero is meaningless
}

}  // namespace

Measurement measure(const std::function<void()>& submit, const RamProbe& probe) {
  if (!submit) raise(ErrorCode::invalid_argument, "nothing to measure");
  RamSampler sampler(probe);
  const auto t0 = std::chrono::steady_clock::now();
  submit();
  const auto t1 = std::chrono::steady_clock::now();
  Measurement m;
  m.wall_time_s = seconds_between(t0, t1);
  m.peak_ram = sampler.finish();
  m.query_count = 1;
  return m;
}

Measurement run_concurrent(const std::vector<std::function<void()>>& queries,
                           unsigned workers, const RamProbe& probe,
                           std::size_t query_count_override) {
  if (queries.empty()) raise(ErrorCode::invalid_argument, "no queries to submit");
  if (workers == 0) raise(ErrorCode::invalid_argument, "need at least one worker");

  RamSampler sampler(probe);
  // The start stamp lives in the barrier's completion step so it exists
  // before any lane is released; stamping after our own arrive_and_wait
  // would race the lanes (on one core a short batch can finish first).
  std::chrono::steady_clock::time_point t0;
  const auto stamp_start = [&t0]() noexcept {
    t0 = std::chrono::steady_clock::now();
  };
  std::barrier start(static_cast<std::ptrdiff_t>(workers) + 1, stamp_start);
  std::mutex error_mu;
  std::exception_ptr first_error;

  std::vector<std::thread> lanes;
  lanes.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    lanes.emplace_back([&, w] {
      start.arrive_and_wait();
      try {
        for (std::size_t i = w; i < queries.size(); i += workers) queries[i]();
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }

  start.arrive_and_wait();
  for (std::thread& lane : lanes) lane.join();
  const auto t1 = std::chrono::steady_clock::now();

  const auto peak = sampler.finish();
  if (first_error) std::rethrow_exception(first_error);

  Measurement m;
  m.wall_time_s = seconds_between(t0, t1);
  m.peak_ram = peak;
  m.query_count = query_count_override != 0 ? query_count_override : queries.size();
  return m;
}

void prepare_cache(Backend& backend, CacheState state,
                   std::span<const Endpoints> warmup_pairs) {
  switch (state) {
    case CacheState::Hot:
      return;  // loaded and untouched: measurement starts immediately
    case CacheState::Cold:
      backend.reset();
      return;
    case CacheState::Warm:
      if (warmup_pairs.empty()) {
        raise(ErrorCode::invalid_argument, "warm state needs a warmup endpoint pair");
      }
      backend.reset();
      backend.shortest_path(warmup_pairs[0].start, warmup_pairs[0].goal);
      return;
    case CacheState::Warmer:
      if (warmup_pairs.size() < 2 ||
          (warmup_pairs[0].start == warmup_pairs[1].start &&
           warmup_pairs[0].goal == warmup_pairs[1].goal)) {
        raise(ErrorCode::invalid_argument,
              "warmer state needs two distinct warmup endpoint pairs");
      }
      backend.reset();
      backend.shortest_path(warmup_pairs[0].start, warmup_pairs[0].goal);
      backend.shortest_path(warmup_pairs[1].start, warmup_pairs[1].goal);
      return;
  }
}

std::vector<GraphDataset> partition_dataset(const GraphDataset& dataset,
                                            std::size_t portions) {
  if (portions == 0) raise(ErrorCode::invalid_argument, "need at least one portion");
  std::vector<GraphDataset> parts(portions);
  const std::size_t node_base = dataset.nodes.size() / portions;
  const std::size_t edge_base = dataset.edges.size() / portions;
  for (std::size_t i = 0; i < portions; ++i) {
    const bool last = (i + 1 == portions);
    const std::size_t nb = i * node_base;
    const std::size_t ne = last ? dataset.nodes.size() : nb + node_base;
    parts[i].nodes.assign(dataset.nodes.begin() + nb, dataset.nodes.begin() + ne);
    const std::size_t eb = i * edge_base;
    const std::size_t ee = last ? dataset.edges.size() : eb + edge_base;
    parts[i].edges.assign(dataset.edges.begin() + eb, dataset.edges.begin() + ee);
  }
  return parts;
}

namespace {

std::vector<Endpoints> distinct_endpoint_pairs(const GridMaze& maze, double target,
                                               std::uint64_t seed, std::size_t count,
                                               std::uint64_t stream_base) {
  std::vector<Endpoints> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Endpoints candidate;
    bool fresh = false;
    for (std::uint64_t attempt = 0; attempt < 100 && !fresh; ++attempt) {
      candidate = sample_endpoints(
          maze, target, util::mix_seed(seed, stream_base + i + attempt * 1000));
      fresh = std::none_of(pairs.begin(), pairs.end(), [&](const Endpoints& p) {
        return p.start == candidate.start && p.goal == candidate.goal;
      });
    }
    if (!fresh) {
      raise(ErrorCode::infeasible_target,
            "cannot find " + std::to_string(count) + " distinct endpoint pairs");
    }
    pairs.push_back(candidate);
  }
  return pairs;
}

}  // namespace

RunResult run_test(const RunConfig& config, Backend& backend,
                   const RunOptions& options) {
  if (config.repetitions == 0) {
    raise(ErrorCode::invalid_argument, "need at least one repetition");
  }
  if (config.workers == 0) raise(ErrorCode::invalid_argument, "need at least one worker");
  if (options.force_lanes && *options.force_lanes == 0) {
    raise(ErrorCode::invalid_argument, "lane override must be >= 1");
  }
  if (options.force_search_batch && *options.force_search_batch == 0) {
    raise(ErrorCode::invalid_argument, "batch override must be >= 1");
  }
  config.dist.validate();
  const GridSpec spec = config.grid();

  struct Stream {
    std::string label;
    std::vector<Measurement> measurements;
  };
  std::vector<Stream> streams;
  if (config.workload == WorkloadKind::Import) {
    streams.push_back({"import_nodes", {}});
    streams.push_back({"import_edges", {}});
  } else if (config.workload == WorkloadKind::PathSearch) {
    streams.push_back({"path_search", {}});
  } else {
    streams.push_back({"update", {}});
  }

  RunResult result;
  result.config = config;
  RamProbe probe = [&backend] { return backend.ram_probe(); };
  const unsigned lanes =
      config.concurrency ? config.workers : options.force_lanes.value_or(1);

  for (std::uint32_t rep = 0; rep < config.repetitions; ++rep) {
    try {
      const std::uint64_t dataset_seed = config.seed + rep;
      const GridMaze maze = generate_maze(spec, config.dist, dataset_seed);
      const GraphDataset dataset = maze_to_graph(maze);

      backend.wipe();

      if (config.workload == WorkloadKind::Import) {
        const auto portions =
            partition_dataset(dataset, config.concurrency ? config.workers : 1);
        std::vector<std::function<void()>> node_q;
        std::vector<std::function<void()>> edge_q;
        node_q.reserve(portions.size());
        edge_q.reserve(portions.size());
        for (const GraphDataset& p : portions) {
          if (config.query_type == QueryType::Bulk) {
            node_q.push_back([&backend, &p] { backend.bulk_import_nodes(p.nodes); });
            edge_q.push_back([&backend, &p] { backend.bulk_import_edges(p.edges); });
          } else {
            node_q.push_back([&backend, &p] {
              for (NodeId id : p.nodes) backend.insert_node(id);
            });
            edge_q.push_back([&backend, &p] {
              for (const WeightedEdge& e : p.edges) backend.insert_edge(e);
            });
          }
        }
        const bool bulk = config.query_type == QueryType::Bulk;
        Measurement mn = run_concurrent(
            node_q, lanes, probe, bulk ? portions.size() : dataset.nodes.size());
        mn.repetition = rep;
        streams[0].measurements.push_back(mn);
        Measurement me = run_concurrent(
            edge_q, lanes, probe, bulk ? portions.size() : dataset.edges.size());
        me.repetition = rep;
        streams[1].measurements.push_back(me);
      } else {
        backend.bulk_import(dataset);
        const double target = config.effective_target_euclid();
        const auto warmups =
            distinct_endpoint_pairs(maze, target, dataset_seed, 2, 2);
        prepare_cache(backend, config.cache, warmups);

        if (config.workload == WorkloadKind::PathSearch) {
          const std::size_t batch =
              config.concurrency ? config.workers
                                 : options.force_search_batch.value_or(1);
          const auto pairs =
              distinct_endpoint_pairs(maze, target, dataset_seed, batch, 10);
          std::vector<std::optional<std::uint64_t>> costs(batch);
          std::vector<std::function<void()>> queries;
          queries.reserve(batch);
          for (std::size_t i = 0; i < batch; ++i) {
            queries.push_back([&backend, &pairs, &costs, i] {
              const auto path = backend.shortest_path(pairs[i].start, pairs[i].goal);
              costs[i] = path ? std::optional(path->total_cost) : std::nullopt;
            });
          }
          Measurement m = run_concurrent(queries, lanes, probe, batch);
          m.wall_time_s /= static_cast<double>(m.query_count);
          m.repetition = rep;
          streams[0].measurements.push_back(m);
          for (const auto& c : costs) result.search_costs.push_back(c);
        } else {  // UpdateEdges
          const std::size_t batch = config.concurrency ? config.workers : 1;
          if (dataset.edges.size() < batch) {
            raise(ErrorCode::invalid_argument,
                  "dataset has fewer edges than update queries");
          }
          std::mt19937_64 rng(util::mix_seed(dataset_seed, 40));
          std::uniform_int_distribution<std::size_t> pick(0, dataset.edges.size() - 1);
          std::uniform_int_distribution<int> new_weight(0, 255);
          std::set<std::size_t> chosen;
          while (chosen.size() < batch) chosen.insert(pick(rng));
          std::vector<std::function<void()>> queries;
          queries.reserve(batch);
          for (std::size_t index : chosen) {
            const WeightedEdge e = dataset.edges[index];
            const std::int64_t w = new_weight(rng);
            queries.push_back([&backend, e, w] {
              backend.update_edge_weight(e.from, e.to, w);
            });
          }
          Measurement m = run_concurrent(queries, lanes, probe, batch);
          m.wall_time_s /= static_cast<double>(m.query_count);
          m.repetition = rep;
          streams[0].measurements.push_back(m);
        }
      }

      result.dataset_hashes.push_back(dataset.content_hash());
    } catch (const std::exception& e) {
      result.aborted = true;
      result.error = e.what();
      break;
    }
  }

  for (Stream& s : streams) {
    if (!s.measurements.empty()) {
      result.summaries.push_back(summarize(s.measurements, s.label, config));
    }
    result.raw.push_back(std::move(s.measurements));
  }
  return result;
}

}  // namespace grbench
