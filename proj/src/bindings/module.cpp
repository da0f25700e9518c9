#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>
#include <string>
#include <vector>

#include "grbench/backend.hpp"
#include "grbench/errors.hpp"
#include "grbench/graph.hpp"
#include "grbench/maze.hpp"
#include "grbench/oracle.hpp"
#include "grbench/report.hpp"
#include "grbench/roadnet.hpp"
#include "grbench/store.hpp"
#include "grbench/suite.hpp"
#include "grbench/workload.hpp"

namespace py = pybind11;
using namespace grbench;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Graph store benchmarking core: maze datasets, a reference engine, an "
      "external-engine adapter, the workload driver, and report rendering.";

  py::register_exception<Error>(m, "Error");

  // --- graph exchange form --------------------------------------------------
  py::class_<WeightedEdge>(m, "WeightedEdge")
      .def(py::init<>())
      .def(py::init([](NodeId from, NodeId to, std::int64_t weight) {
             return WeightedEdge{from, to, weight};
           }),
           py::arg("from_node"), py::arg("to_node"), py::arg("weight"))
      .def_readwrite("from_node", &WeightedEdge::from)
      .def_readwrite("to_node", &WeightedEdge::to)
      .def_readwrite("weight", &WeightedEdge::weight)
      .def(py::self == py::self)
      .def("__repr__", [](const WeightedEdge& e) {
        return "WeightedEdge(" + std::to_string(e.from) + ", " +
               std::to_string(e.to) + ", " + std::to_string(e.weight) + ")";
      });

  py::class_<GraphDataset>(m, "GraphDataset")
      .def(py::init<>())
      .def_readwrite("nodes", &GraphDataset::nodes)
      .def_readwrite("edges", &GraphDataset::edges)
      .def("sort_canonical", &GraphDataset::sort_canonical)
      .def("nodes_text", &GraphDataset::nodes_text)
      .def("edges_text", &GraphDataset::edges_text)
      .def("content_hash", &GraphDataset::content_hash)
      .def(py::self == py::self);

  m.def("write_dataset", &write_dataset, py::arg("dataset"), py::arg("nodes_file"),
        py::arg("edges_file"));
  m.def("read_dataset", &read_dataset, py::arg("nodes_file"), py::arg("edges_file"));
  m.def("parse_dataset", &parse_dataset, py::arg("nodes_text"), py::arg("edges_text"));

  // --- maze generation ------------------------------------------------------
  py::enum_<Dimensionality>(m, "Dimensionality")
      .value("OneDStar", Dimensionality::OneDStar)
      .value("OneD", Dimensionality::OneD)
      .value("TwoD", Dimensionality::TwoD)
      .value("ThreeD", Dimensionality::ThreeD);

  py::class_<CostDistribution> dist(m, "CostDistribution");
  py::enum_<CostDistribution::Kind>(dist, "Kind")
      .value("Uniform", CostDistribution::Kind::Uniform)
      .value("Beta", CostDistribution::Kind::Beta);
  dist.def(py::init<>())
      .def_readwrite("kind", &CostDistribution::kind)
      .def_readwrite("alpha", &CostDistribution::alpha)
      .def_readwrite("beta_param", &CostDistribution::beta_param)
      .def_static("uniform", &CostDistribution::uniform)
      .def_static("beta", &CostDistribution::beta, py::arg("alpha"),
                  py::arg("beta_param"))
      .def("validate", &CostDistribution::validate)
      .def(py::self == py::self);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def(py::init([](Dimensionality dim, std::vector<std::uint32_t> sides) {
             return GridSpec{dim, std::move(sides)};
           }),
           py::arg("dim"), py::arg("side_lengths"))
      .def_readwrite("dim", &GridSpec::dim)
      .def_readwrite("side_lengths", &GridSpec::side_lengths)
      .def("validate", &GridSpec::validate)
      .def("cell_count", &GridSpec::cell_count)
      .def("min_side", &GridSpec::min_side)
      .def("diagonal", &GridSpec::diagonal)
      .def("coords_of", &GridSpec::coords_of, py::arg("cell"))
      .def("cell_at", &GridSpec::cell_at, py::arg("coords"))
      .def("euclid", &GridSpec::euclid, py::arg("a"), py::arg("b"))
      .def("interior_degree", &GridSpec::interior_degree)
      .def(py::self == py::self);

  py::class_<GridMaze>(m, "GridMaze")
      .def_readwrite("spec", &GridMaze::spec)
      .def_readwrite("costs", &GridMaze::costs)
      .def_readwrite("seed", &GridMaze::seed);

  py::class_<Endpoints>(m, "Endpoints")
      .def_readwrite("start", &Endpoints::start)
      .def_readwrite("goal", &Endpoints::goal)
      .def_readwrite("target_euclid", &Endpoints::target_euclid);

  m.def("axis_count", &axis_count, py::arg("dim"));
  m.def("grid_spec_for", &grid_spec_for, py::arg("dim"), py::arg("target_nodes"));
  m.def("expected_edge_count", &expected_edge_count, py::arg("spec"));
  m.def("generate_maze", &generate_maze, py::arg("spec"), py::arg("dist"),
        py::arg("seed"), py::call_guard<py::gil_scoped_release>());
  m.def("maze_to_graph", &maze_to_graph, py::arg("maze"),
        py::call_guard<py::gil_scoped_release>());
  m.def("sample_endpoints", &sample_endpoints, py::arg("maze"),
        py::arg("target_euclid"), py::arg("seed"));

  // --- engines --------------------------------------------------------------
  py::class_<Path>(m, "Path")
      .def_readwrite("nodes", &Path::nodes)
      .def_readwrite("total_cost", &Path::total_cost)
      .def_readwrite("hops", &Path::hops)
      .def(py::self == py::self);

  py::class_<Backend>(m, "Backend")
      .def("label", &Backend::label)
      .def("insert_node", &Backend::insert_node, py::arg("id"))
      .def("insert_edge", &Backend::insert_edge, py::arg("edge"))
      .def("bulk_import", &Backend::bulk_import, py::arg("dataset"),
           py::call_guard<py::gil_scoped_release>())
      .def("bulk_import_nodes", &Backend::bulk_import_nodes, py::arg("ids"),
           py::call_guard<py::gil_scoped_release>())
      .def("bulk_import_edges", &Backend::bulk_import_edges, py::arg("edges"),
           py::call_guard<py::gil_scoped_release>())
      .def("update_edge_weight", &Backend::update_edge_weight, py::arg("from_node"),
           py::arg("to_node"), py::arg("weight"))
      .def("delete_edge", &Backend::delete_edge, py::arg("from_node"),
           py::arg("to_node"))
      .def("shortest_path", &Backend::shortest_path, py::arg("start"),
           py::arg("goal"), py::call_guard<py::gil_scoped_release>())
      .def("reset", &Backend::reset)
      .def("wipe", &Backend::wipe)
      .def("ram_probe", &Backend::ram_probe);

  py::class_<ReferenceBackend, Backend>(m, "ReferenceBackend")
      .def(py::init<>())
      .def("snapshot",
           [](ReferenceBackend& b) { return b.store().snapshot(); });

  m.def(
      "connect",
      [](const std::string& config_path) {
        const BackendConfig config = config_path == "reference"
                                         ? BackendConfig::reference()
                                         : BackendConfig::load(config_path);
        return connect(config);
      },
      py::arg("config_path"),
      "Opens an engine handle: 'reference' for the built-in in-memory engine, "
      "anything else as the path of an external-endpoint config file.");

  m.def("oracle_shortest_path", &oracle_shortest_path, py::arg("dataset"),
        py::arg("start"), py::arg("goal"), py::call_guard<py::gil_scoped_release>());

  // --- workload driver ------------------------------------------------------
  py::enum_<CacheState>(m, "CacheState")
      .value("Cold", CacheState::Cold)
      .value("Warm", CacheState::Warm)
      .value("Warmer", CacheState::Warmer)
      .value("Hot", CacheState::Hot);

  py::enum_<QueryType>(m, "QueryType")
      .value("Bulk", QueryType::Bulk)
      .value("Single", QueryType::Single);

  py::enum_<WorkloadKind>(m, "WorkloadKind")
      .value("Import", WorkloadKind::Import)
      .value("PathSearch", WorkloadKind::PathSearch)
      .value("UpdateEdges", WorkloadKind::UpdateEdges);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("nodes", &RunConfig::nodes)
      .def_readwrite("dim", &RunConfig::dim)
      .def_readwrite("dist", &RunConfig::dist)
      .def_readwrite("concurrency", &RunConfig::concurrency)
      .def_readwrite("cache", &RunConfig::cache)
      .def_readwrite("query_type", &RunConfig::query_type)
      .def_readwrite("workload", &RunConfig::workload)
      .def_readwrite("repetitions", &RunConfig::repetitions)
      .def_readwrite("workers", &RunConfig::workers)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("target_euclid", &RunConfig::target_euclid)
      .def("grid", &RunConfig::grid)
      .def("effective_target_euclid", &RunConfig::effective_target_euclid);

  py::class_<Measurement>(m, "Measurement")
      .def(py::init<>())
      .def_readwrite("wall_time_s", &Measurement::wall_time_s)
      .def_readwrite("peak_ram", &Measurement::peak_ram)
      .def_readwrite("query_count", &Measurement::query_count)
      .def_readwrite("repetition", &Measurement::repetition);

  py::class_<Stats>(m, "Stats")
      .def_readwrite("mean", &Stats::mean)
      .def_readwrite("stddev", &Stats::stddev)
      .def_readwrite("show_stddev", &Stats::show_stddev);

  py::class_<Summary>(m, "Summary")
      .def_readwrite("label", &Summary::label)
      .def_readwrite("time", &Summary::time)
      .def_readwrite("ram", &Summary::ram)
      .def_readwrite("samples", &Summary::samples)
      .def_readwrite("config", &Summary::config);

  py::class_<RunResult>(m, "RunResult")
      .def_readwrite("config", &RunResult::config)
      .def_readwrite("summaries", &RunResult::summaries)
      .def_readwrite("raw", &RunResult::raw)
      .def_readwrite("dataset_hashes", &RunResult::dataset_hashes)
      .def_readwrite("search_costs", &RunResult::search_costs)
      .def_readwrite("aborted", &RunResult::aborted)
      .def_readwrite("error", &RunResult::error);

  m.def("stddev_visible", &stddev_visible, py::arg("mean"), py::arg("stddev"));
  m.def(
      "compute_stats",
      [](const std::vector<double>& values) { return compute_stats(values); },
      py::arg("values"));
  m.def(
      "summarize",
      [](const std::vector<Measurement>& measurements, const std::string& label,
         const RunConfig& config) { return summarize(measurements, label, config); },
      py::arg("measurements"), py::arg("label") = std::string(),
      py::arg("config") = RunConfig{});
  m.def(
      "run_test",
      [](const RunConfig& config, Backend& backend) {
        return run_test(config, backend);
      },
      py::arg("config"), py::arg("backend"),
      py::call_guard<py::gil_scoped_release>());

  // --- road network ingestion ----------------------------------------------
  py::class_<CostWeights>(m, "CostWeights")
      .def(py::init<>())
      .def(py::init([](double w_time, double w_distance, double w_fuel) {
             return CostWeights{w_time, w_distance, w_fuel};
           }),
           py::arg("w_time"), py::arg("w_distance"), py::arg("w_fuel"))
      .def_readwrite("w_time", &CostWeights::w_time)
      .def_readwrite("w_distance", &CostWeights::w_distance)
      .def_readwrite("w_fuel", &CostWeights::w_fuel)
      .def("validate", &CostWeights::validate);

  m.def("ingest_roadnet", &ingest_roadnet, py::arg("file"),
        py::arg("weights") = CostWeights{},
        py::call_guard<py::gil_scoped_release>());
  m.def("ingest_roadnet_text", &ingest_roadnet_text, py::arg("text"),
        py::arg("weights") = CostWeights{},
        py::call_guard<py::gil_scoped_release>());

  // --- reports --------------------------------------------------------------
  py::class_<ResultRow>(m, "ResultRow")
      .def(py::init<>())
      .def_readwrite("backend", &ResultRow::backend)
      .def_readwrite("workload", &ResultRow::workload)
      .def_readwrite("nodes", &ResultRow::nodes)
      .def_readwrite("dimensionality", &ResultRow::dimensionality)
      .def_readwrite("distribution", &ResultRow::distribution)
      .def_readwrite("concurrency", &ResultRow::concurrency)
      .def_readwrite("cache", &ResultRow::cache)
      .def_readwrite("query_type", &ResultRow::query_type)
      .def_readwrite("mean_time_s", &ResultRow::mean_time_s)
      .def_readwrite("stddev_time_s", &ResultRow::stddev_time_s)
      .def_readwrite("mean_ram_b", &ResultRow::mean_ram_b)
      .def_readwrite("stddev_ram_b", &ResultRow::stddev_ram_b)
      .def("time_stddev_visible", &ResultRow::time_stddev_visible)
      .def("ram_stddev_visible", &ResultRow::ram_stddev_visible)
      .def(py::self == py::self);

  m.def("row_from_summary", &row_from_summary, py::arg("summary"),
        py::arg("backend_label"));
  m.def("render_results_csv", &render_results_csv, py::arg("rows"));
  m.def("write_results", &write_results, py::arg("rows"), py::arg("path"));
  m.def(
      "parse_results",
      [](const std::string& text) { return parse_results(text); },
      py::arg("text"));
  m.def("read_results", &read_results, py::arg("path"));
  m.def(
      "render_plot",
      [](const std::vector<ResultRow>& rows, const std::string& sweep_parameter,
         bool log_time) { return render_plot(rows, sweep_parameter, log_time); },
      py::arg("rows"), py::arg("sweep_parameter"), py::arg("log_time") = false);
  m.def(
      "render_plot_svg",
      [](const std::vector<ResultRow>& rows, const std::string& sweep_parameter,
         const std::filesystem::path& path, bool log_time) {
        render_plot_svg(rows, sweep_parameter, path, log_time);
      },
      py::arg("rows"), py::arg("sweep_parameter"), py::arg("path"),
      py::arg("log_time") = false);

  // --- sweep suites ---------------------------------------------------------
  py::class_<BackendRef>(m, "BackendRef")
      .def(py::init<>())
      .def(py::init([](std::string label, std::string config_path) {
             return BackendRef{std::move(label), std::move(config_path)};
           }),
           py::arg("label"), py::arg("config_path"))
      .def_readwrite("label", &BackendRef::label)
      .def_readwrite("config_path", &BackendRef::config_path);

  py::class_<SuiteSpec>(m, "SuiteSpec")
      .def(py::init<>())
      .def_readwrite("backends", &SuiteSpec::backends)
      .def_readwrite("out_dir", &SuiteSpec::out_dir)
      .def_readwrite("seed", &SuiteSpec::seed)
      .def_readwrite("repetitions", &SuiteSpec::repetitions)
      .def_readwrite("sweeps", &SuiteSpec::sweeps)
      .def("validate", &SuiteSpec::validate);

  py::class_<SuiteOutcome>(m, "SuiteOutcome")
      .def_readwrite("rows", &SuiteOutcome::rows)
      .def_readwrite("failures", &SuiteOutcome::failures)
      .def_readwrite("csv_path", &SuiteOutcome::csv_path)
      .def_readwrite("plot_paths", &SuiteOutcome::plot_paths)
      .def("complete", &SuiteOutcome::complete);

  m.def(
      "parse_suite",
      [](const std::string& text) { return parse_suite(text); },
      py::arg("json_text"));
  m.def("load_suite", &load_suite, py::arg("file"));
  m.def("run_suite", &run_suite, py::arg("spec"),
        py::arg("progress") = ProgressFn{},
        py::call_guard<py::gil_scoped_release>());
}
