#include "grbench/suite.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "grbench/backend.hpp"
#include "grbench/errors.hpp"
#include "grbench/util.hpp"

namespace grbench {

namespace {

using nlohmann::json;

constexpr std::array<const char*, 4> kKnownSweeps = {"concurrency", "cache",
                                                    "dimensionality", "size"};

struct DimPoint {
  Dimensionality dim;
  std::uint64_t nodes;
};

// Node counts chosen so every shape lands near 4e4 edges.
constexpr std::array<DimPoint, 4> kDimPoints = {{
    {Dimensionality::OneDStar, 40000},
    {Dimensionality::OneD, 20000},
    {Dimensionality::TwoD, 10000},
    {Dimensionality::ThreeD, 6859},
}};

// 50x50, 100x100, 190x190.
constexpr std::array<std::uint64_t, 3> kSizePoints = {2500, 10000, 36100};

bool known_sweep(const std::string& name) {
  return std::find(kKnownSweeps.begin(), kKnownSweeps.end(), name) !=
         kKnownSweeps.end();
}

RunConfig base_config(const SuiteSpec& spec) {
  RunConfig config;
  config.seed = spec.seed;
  config.repetitions = spec.repetitions;
  return config;
}

std::string cell_fingerprint(const RunConfig& c) {
  std::string out = to_string(c.workload);
  out += '|';
  out += std::to_string(c.nodes);
  out += '|';
  out += to_string(c.dim);
  out += '|';
  out += to_string(c.dist.kind);
  out += '|';
  out += c.concurrency ? "true" : "false";
  out += '|';
  out += to_string(c.cache);
  out += '|';
  out += to_string(c.query_type);
  return out;
}

std::string describe_cell(const RunConfig& c) {
  std::string out = to_string(c.workload);
  out += ' ';
  out += to_string(c.dim);
  out += " n=";
  out += std::to_string(c.nodes);
  if (c.workload == WorkloadKind::Import) {
    out += ' ';
    out += to_string(c.query_type);
  } else {
    out += " cache=";
    out += to_string(c.cache);
  }
  out += c.concurrency ? " concurrent" : " sequential";
  return out;
}

std::string require_string(const json& value, const char* what) {
  if (!value.is_string()) {
    raise(ErrorCode::config, std::string(what) + " must be a string");
  }
  return value.get<std::string>();
}

BackendRef parse_backend_ref(const json& entry) {
  BackendRef ref;
  if (entry.is_string()) {
    ref.config_path = entry.get<std::string>();
  } else if (entry.is_object()) {
    for (const auto& [key, value] : entry.items()) {
      if (key == "label") {
        ref.label = require_string(value, "backend label");
      } else if (key == "config") {
        ref.config_path = require_string(value, "backend config");
      } else {
        raise(ErrorCode::config, "unknown backend key '" + key + "'");
      }
    }
  } else {
    raise(ErrorCode::config,
          "each backend must be a config path or an object with "
          "'config' and optional 'label'");
  }
  if (ref.config_path.empty()) {
    raise(ErrorCode::config, "backend entry needs a config path");
  }
  if (ref.label.empty()) {
    ref.label = ref.config_path == "reference"
                    ? std::string("reference")
                    : std::filesystem::path(ref.config_path).stem().string();
  }
  return ref;
}

/// Route-search rows belonging to one sweep's plot: stock values everywhere
/// except the swept parameter.
std::vector<ResultRow> plot_rows(const std::string& sweep,
                                 const std::vector<ResultRow>& rows,
                                 const RunConfig& base) {
  std::vector<ResultRow> out;
  for (const ResultRow& row : rows) {
    if (row.workload != to_string(WorkloadKind::PathSearch)) continue;
    if (row.distribution != to_string(base.dist.kind)) continue;
    if (row.query_type != to_string(base.query_type)) continue;
    if (sweep != "concurrency" && row.concurrency != base.concurrency) continue;
    if (sweep != "cache" && row.cache != to_string(base.cache)) continue;
    if (sweep == "dimensionality") {
      const bool on_curve =
          std::any_of(kDimPoints.begin(), kDimPoints.end(), [&](const DimPoint& p) {
            return row.dimensionality == to_string(p.dim) && row.nodes == p.nodes;
          });
      if (!on_curve) continue;
    } else {
      if (row.dimensionality != to_string(base.dim)) continue;
      if (sweep == "size") {
        if (std::find(kSizePoints.begin(), kSizePoints.end(), row.nodes) ==
            kSizePoints.end()) {
          continue;
        }
      } else if (row.nodes != base.nodes) {
        continue;
      }
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace

void SuiteSpec::validate() const {
  if (backends.empty()) {
    raise(ErrorCode::config, "suite needs at least one backend");
  }
  for (const BackendRef& ref : backends) {
    if (ref.config_path.empty()) {
      raise(ErrorCode::config, "backend entry needs a config path");
    }
  }
  if (out_dir.empty()) {
    raise(ErrorCode::config, "suite output directory must not be empty");
  }
  if (repetitions == 0) {
    raise(ErrorCode::config, "suite needs at least one repetition");
  }
  if (sweeps.empty()) {
    raise(ErrorCode::config, "suite needs at least one sweep");
  }
  std::set<std::string> seen;
  for (const std::string& sweep : sweeps) {
    if (!known_sweep(sweep)) {
      raise(ErrorCode::config, "unknown sweep '" + sweep + "'");
    }
    if (!seen.insert(sweep).second) {
      raise(ErrorCode::config, "duplicate sweep '" + sweep + "'");
    }
  }
}

SuiteSpec parse_suite(std::string_view json_text) {
  const json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    raise(ErrorCode::config, "suite file must be a JSON object");
  }
  SuiteSpec spec;
  for (const auto& [key, value] : doc.items()) {
    if (key == "backends") {
      if (!value.is_array()) {
        raise(ErrorCode::config, "'backends' must be an array");
      }
      for (const json& entry : value) {
        spec.backends.push_back(parse_backend_ref(entry));
      }
    } else if (key == "out_dir") {
      spec.out_dir = require_string(value, "'out_dir'");
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        raise(ErrorCode::config, "'seed' must be an unsigned integer");
      }
      spec.seed = value.get<std::uint64_t>();
    } else if (key == "repetitions") {
      if (!value.is_number_unsigned()) {
        raise(ErrorCode::config, "'repetitions' must be an unsigned integer");
      }
      spec.repetitions = value.get<std::uint32_t>();
    } else if (key == "sweeps") {
      if (!value.is_array()) {
        raise(ErrorCode::config, "'sweeps' must be an array of names");
      }
      spec.sweeps.clear();
      for (const json& entry : value) {
        spec.sweeps.push_back(require_string(entry, "each sweep"));
      }
    } else {
      raise(ErrorCode::config, "unknown suite key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

SuiteSpec load_suite(const std::filesystem::path& file) {
  return parse_suite(util::read_file(file));
}

std::vector<SuiteCell> suite_cells(const SuiteSpec& spec) {
  spec.validate();
  const RunConfig base = base_config(spec);
  std::vector<SuiteCell> cells;
  for (const std::string& sweep : spec.sweeps) {
    if (sweep == "concurrency") {
      for (const bool concurrent : {false, true}) {
        RunConfig search = base;
        search.concurrency = concurrent;
        cells.push_back({sweep, search, {}});
      }
      for (const bool concurrent : {false, true}) {
        RunConfig import = base;
        import.workload = WorkloadKind::Import;
        import.query_type = QueryType::Single;
        import.concurrency = concurrent;
        cells.push_back({sweep, import, {}});
      }
    } else if (sweep == "cache") {
      for (const CacheState state : {CacheState::Cold, CacheState::Warm,
                                     CacheState::Warmer, CacheState::Hot}) {
        RunConfig search = base;
        search.cache = state;
        cells.push_back({sweep, search, {}});
      }
    } else if (sweep == "dimensionality") {
      for (const DimPoint& point : kDimPoints) {
        RunConfig search = base;
        search.dim = point.dim;
        search.nodes = point.nodes;
        cells.push_back({sweep, search, {}});
      }
      for (const DimPoint& point : kDimPoints) {
        RunConfig import = base;
        import.workload = WorkloadKind::Import;
        import.dim = point.dim;
        import.nodes = point.nodes;
        cells.push_back({sweep, import, {}});
      }
    } else {  // size
      for (const std::uint64_t nodes : kSizePoints) {
        RunConfig search = base;
        search.nodes = nodes;
        cells.push_back({sweep, search, {}});
      }
      for (const std::uint64_t nodes : kSizePoints) {
        RunConfig import = base;
        import.workload = WorkloadKind::Import;
        import.nodes = nodes;
        cells.push_back({sweep, import, {}});
      }
    }
  }
  return cells;
}

SuiteOutcome run_suite(const SuiteSpec& spec, const ProgressFn& progress) {
  spec.validate();
  std::filesystem::create_directories(spec.out_dir);
  const std::vector<SuiteCell> cells = suite_cells(spec);
  SuiteOutcome outcome;

  for (const BackendRef& ref : spec.backends) {
    std::unique_ptr<Backend> backend;
    std::string label = ref.label;
    try {
      const BackendConfig config = ref.config_path == "reference"
                                       ? BackendConfig::reference()
                                       : BackendConfig::load(ref.config_path);
      backend = connect(config);
      if (label.empty()) label = backend->label();
    } catch (const std::exception& e) {
      outcome.failures.push_back(
          "backend " + (label.empty() ? ref.config_path : label) + ": " + e.what());
      continue;
    }

    std::set<std::string> done;  // sweeps share cells; run each shape once
    for (const SuiteCell& cell : cells) {
      if (!done.insert(cell_fingerprint(cell.config)).second) continue;
      if (progress) {
        progress(label + ": " + cell.sweep + " / " + describe_cell(cell.config));
      }
      try {
        const RunResult run = run_test(cell.config, *backend, cell.options);
        if (run.aborted) {
          outcome.failures.push_back(label + ": " + describe_cell(cell.config) +
                                     ": " + run.error);
          continue;
        }
        for (const Summary& summary : run.summaries) {
          outcome.rows.push_back(row_from_summary(summary, label));
        }
      } catch (const std::exception& e) {
        outcome.failures.push_back(label + ": " + describe_cell(cell.config) +
                                   ": " + e.what());
      }
    }
  }

  if (outcome.rows.empty()) {
    outcome.failures.push_back("no cell produced results");
    return outcome;
  }

  outcome.csv_path = spec.out_dir / "results.csv";
  write_results(outcome.rows, outcome.csv_path);

  const RunConfig base = base_config(spec);
  for (const std::string& sweep : spec.sweeps) {
    try {
      const std::vector<ResultRow> rows = plot_rows(sweep, outcome.rows, base);
      if (rows.empty()) {
        outcome.failures.push_back("no rows left for the " + sweep + " plot");
        continue;
      }
      const std::filesystem::path path = spec.out_dir / (sweep + ".svg");
      render_plot_svg(rows, sweep == "size" ? "nodes" : sweep, path);
      outcome.plot_paths.push_back(path);
    } catch (const std::exception& e) {
      outcome.failures.push_back(sweep + " plot: " + e.what());
    }
  }
  return outcome;
}

}  // namespace grbench
