#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "grbench/backend.hpp"
#include "grbench/errors.hpp"
#include "grbench/graph.hpp"
#include "grbench/maze.hpp"
#include "grbench/report.hpp"
#include "grbench/suite.hpp"
#include "grbench/util.hpp"
#include "grbench/workload.hpp"

namespace {

using namespace grbench;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBackend = 2;
constexpr int kExitPartial = 3;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::transport:
    case ErrorCode::query:
      return kExitBackend;
    default:
      return kExitUsage;
  }
}

std::string default_backend() {
  const char* env = std::getenv("GRB_BACKEND_CONFIG");
  return env != nullptr && *env != '\0' ? env : "reference";
}

struct DatasetFlags {
  std::string dim = "2d";
  std::vector<std::uint32_t> side;
  std::uint64_t nodes = 0;  // 0: fall back to --side, else 10^4
  std::string dist = "beta";
  double alpha = 0.5;
  double beta = 0.5;
};

CostDistribution dist_from(const DatasetFlags& flags) {
  CostDistribution dist;
  if (dist_kind_from_string(flags.dist) == CostDistribution::Kind::Uniform) {
    dist = CostDistribution::uniform();
  } else {
    dist = CostDistribution::beta(flags.alpha, flags.beta);
  }
  dist.validate();
  return dist;
}

GridSpec spec_from(const DatasetFlags& flags) {
  const Dimensionality dim = dimensionality_from_string(flags.dim);
  if (!flags.side.empty() && flags.nodes != 0) {
    raise(ErrorCode::invalid_argument, "give --side or --nodes, not both");
  }
  if (!flags.side.empty()) {
    std::vector<std::uint32_t> sides = flags.side;
    if (sides.size() == 1) sides.assign(axis_count(dim), sides[0]);
    const GridSpec spec{dim, sides};
    spec.validate();
    return spec;
  }
  return grid_spec_for(dim, flags.nodes != 0 ? flags.nodes : 10000);
}

std::string describe(const RunConfig& c) {
  std::string out = to_string(c.workload);
  out += ' ';
  out += to_string(c.dim);
  out += " n=";
  out += std::to_string(c.nodes);
  out += " dist=";
  out += to_string(c.dist.kind);
  out += c.concurrency ? " concurrent" : " sequential";
  out += " cache=";
  out += to_string(c.cache);
  out += ' ';
  out += to_string(c.query_type);
  out += " reps=";
  out += std::to_string(c.repetitions);
  return out;
}

std::string row_key(const ResultRow& r) {
  std::string out = r.backend;
  for (const std::string& part :
       {r.workload, std::to_string(r.nodes), r.dimensionality, r.distribution,
        std::string(r.concurrency ? "true" : "false"), r.cache, r.query_type}) {
    out += '|';
    out += part;
  }
  return out;
}

// Re-running the same configuration replaces its rows instead of stacking
// duplicates with equal keys.
void merge_rows(std::vector<ResultRow>& all, const std::vector<ResultRow>& fresh) {
  for (const ResultRow& row : fresh) {
    const auto it = std::find_if(all.begin(), all.end(), [&](const ResultRow& r) {
      return row_key(r) == row_key(row);
    });
    if (it != all.end()) {
      *it = row;
    } else {
      all.push_back(row);
    }
  }
}

int cmd_generate(const DatasetFlags& flags, std::uint64_t seed,
                 const std::string& out_dir) {
  const GridSpec spec = spec_from(flags);
  const CostDistribution dist = dist_from(flags);
  const GridMaze maze = generate_maze(spec, dist, seed);
  const GraphDataset dataset = maze_to_graph(maze);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path nodes_file = std::filesystem::path(out_dir) / "nodes.csv";
  const std::filesystem::path edges_file = std::filesystem::path(out_dir) / "edges.csv";
  write_dataset(dataset, nodes_file, edges_file);
  std::cout << "seed " << seed << '\n'
            << dataset.nodes.size() << " nodes -> " << nodes_file.string() << '\n'
            << dataset.edges.size() << " edges -> " << edges_file.string() << '\n';
  return kExitOk;
}

struct BenchFlags {
  DatasetFlags dataset;
  std::string workload = "path_search";
  std::string query_type = "bulk";
  bool concurrent = false;
  std::uint32_t workers = 10;
  std::string cache = "warm";
  std::uint32_t reps = 10;
  std::uint64_t seed = 0;
  std::string backend = default_backend();
  std::string out_dir = "results";
  double euclid = 0.0;
};

int cmd_bench(const BenchFlags& flags) {
  RunConfig config;
  config.nodes = flags.dataset.nodes != 0 ? flags.dataset.nodes : 10000;
  config.dim = dimensionality_from_string(flags.dataset.dim);
  config.dist = dist_from(flags.dataset);
  config.workload = workload_from_string(flags.workload);
  config.query_type = query_type_from_string(flags.query_type);
  config.concurrency = flags.concurrent;
  config.workers = flags.workers;
  config.cache = cache_state_from_string(flags.cache);
  config.repetitions = flags.reps;
  config.seed = flags.seed;
  config.target_euclid = flags.euclid;
  config.grid().validate();

  const BackendConfig backend_config = flags.backend == "reference"
                                           ? BackendConfig::reference()
                                           : BackendConfig::load(flags.backend);
  const std::unique_ptr<Backend> backend = connect(backend_config);
  std::cout << "backend " << backend->label() << ", seed " << config.seed << ", "
            << describe(config) << '\n';

  const RunResult run = run_test(config, *backend);
  if (run.aborted) {
    std::cerr << "run aborted: " << run.error << '\n';
    return kExitBackend;
  }

  std::vector<ResultRow> rows;
  rows.reserve(run.summaries.size());
  for (const Summary& summary : run.summaries) {
    rows.push_back(row_from_summary(summary, backend->label()));
  }
  for (const ResultRow& row : rows) {
    std::cout << row.workload << ": mean " << util::format_double(row.mean_time_s)
              << " s";
    if (row.time_stddev_visible()) {
      std::cout << " +- " << util::format_double(row.stddev_time_s) << " s";
    }
    if (row.mean_ram_b) {
      std::cout << ", ram " << util::format_double(*row.mean_ram_b) << " B";
    }
    std::cout << '\n';
  }

  std::filesystem::create_directories(flags.out_dir);
  const std::filesystem::path csv = std::filesystem::path(flags.out_dir) / "results.csv";
  std::vector<ResultRow> all;
  if (std::filesystem::exists(csv)) all = read_results(csv);
  merge_rows(all, rows);
  write_results(all, csv);
  std::cout << rows.size() << " row(s) -> " << csv.string() << '\n';
  return kExitOk;
}

int cmd_suite(const std::string& file, const std::string& out_override) {
  SuiteSpec spec = load_suite(file);
  if (!out_override.empty()) spec.out_dir = out_override;
  std::cout << "suite seed " << spec.seed << ", " << spec.backends.size()
            << " backend(s), " << spec.repetitions << " repetitions\n";
  const SuiteOutcome outcome = run_suite(
      spec, [](const std::string& line) { std::cout << "  " << line << '\n'; });
  if (!outcome.rows.empty()) {
    std::cout << outcome.rows.size() << " rows -> " << outcome.csv_path.string()
              << '\n';
  }
  for (const std::filesystem::path& plot : outcome.plot_paths) {
    std::cout << "plot -> " << plot.string() << '\n';
  }
  for (const std::string& failure : outcome.failures) {
    std::cerr << "failed: " << failure << '\n';
  }
  return outcome.complete() ? kExitOk : kExitPartial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark driver for shortest-path workloads on graph storage engines"};
  app.require_subcommand(1);

  auto add_dataset_flags = [](CLI::App& cmd, DatasetFlags& flags, bool with_side) {
    cmd.add_option("--dim", flags.dim, "Maze shape: 1dstar, 1d, 2d or 3d")
        ->capture_default_str();
    if (with_side) {
      cmd.add_option("--side", flags.side,
                     "Cells per axis, comma separated (e.g. 100 or 4,5,6)")
          ->delimiter(',');
    }
    cmd.add_option("--nodes", flags.nodes,
                   "Target node count; the nearest square/cubic grid is used");
    cmd.add_option("--dist", flags.dist, "Cell cost distribution: uniform or beta")
        ->capture_default_str();
    cmd.add_option("--alpha", flags.alpha, "Beta distribution alpha")
        ->capture_default_str();
    cmd.add_option("--beta", flags.beta, "Beta distribution beta")
        ->capture_default_str();
  };

  DatasetFlags gen_flags;
  std::uint64_t gen_seed = 0;
  std::string gen_out = ".";
  CLI::App* gen = app.add_subcommand("generate", "Write a maze dataset as CSV files");
  add_dataset_flags(*gen, gen_flags, true);
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->capture_default_str();

  BenchFlags bench_flags;
  CLI::App* bench = app.add_subcommand("bench", "Run one benchmark configuration");
  add_dataset_flags(*bench, bench_flags.dataset, false);
  bench->add_option("--workload", bench_flags.workload,
                    "import, path_search or update")
      ->capture_default_str();
  bench->add_option("--query-type", bench_flags.query_type, "bulk or single")
      ->capture_default_str();
  bench->add_flag("--concurrent", bench_flags.concurrent,
                  "Submit queries from concurrent workers");
  bench->add_option("--workers", bench_flags.workers, "Concurrent worker count")
      ->capture_default_str();
  bench->add_option("--cache", bench_flags.cache, "cold, warm, warmer or hot")
      ->capture_default_str();
  bench->add_option("--reps", bench_flags.reps, "Repetitions per configuration")
      ->capture_default_str();
  bench->add_option("--seed", bench_flags.seed, "Root seed")->capture_default_str();
  bench->add_option("--backend", bench_flags.backend,
                    "'reference' or a backend config file (default from "
                    "GRB_BACKEND_CONFIG)")
      ->capture_default_str();
  bench->add_option("--out", bench_flags.out_dir, "Results directory")
      ->capture_default_str();
  bench->add_option("--euclid", bench_flags.euclid,
                    "Euclidean start-goal distance (0: half the shortest side)");

  std::string suite_file;
  std::string suite_out;
  CLI::App* suite = app.add_subcommand("suite", "Run a sweep suite from a JSON spec");
  suite->add_option("file", suite_file, "Suite spec (JSON)")->required();
  suite->add_option("--out", suite_out, "Override the spec's output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_flags, gen_seed, gen_out);
    if (bench->parsed()) return cmd_bench(bench_flags);
    return cmd_suite(suite_file, suite_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
