#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grbench/errors.hpp"
#include "grbench/report.hpp"
#include "grbench/util.hpp"

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

std::filesystem::path test_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "grbench_test_report";
  std::filesystem::create_directories(dir);
  return dir;
}

ResultRow make_row(std::string backend, std::string workload, std::uint64_t nodes,
                   double mean_time) {
  ResultRow r;
  r.backend = std::move(backend);
  r.workload = std::move(workload);
  r.nodes = nodes;
  r.dimensionality = "2d";
  r.distribution = "beta";
  r.concurrency = false;
  r.cache = "warm";
  r.query_type = "bulk";
  r.mean_time_s = mean_time;
  r.stddev_time_s = mean_time * 0.1;
  return r;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("summary fields map onto the result row") {
  RunConfig config;
  config.nodes = 6859;
  config.dim = Dimensionality::ThreeD;
  config.dist = CostDistribution::uniform();
  config.concurrency = true;
  config.cache = CacheState::Hot;
  config.query_type = QueryType::Single;

  Summary s;
  s.label = "path_search";
  s.time = {0.125, 0.004, false};
  s.ram = Stats{1.0e6, 2.5e4, false};
  s.config = config;

  const ResultRow row = row_from_summary(s, "neo4j");
  CHECK(row.backend == "neo4j");
  CHECK(row.workload == "path_search");
  CHECK(row.nodes == 6859);
  CHECK(row.dimensionality == "3d");
  CHECK(row.distribution == "uniform");
  CHECK(row.concurrency);
  CHECK(row.cache == "hot");
  CHECK(row.query_type == "single");
  CHECK(row.mean_time_s == 0.125);
  CHECK(row.stddev_time_s == 0.004);
  REQUIRE(row.mean_ram_b.has_value());
  CHECK(*row.mean_ram_b == 1.0e6);
  CHECK(*row.stddev_ram_b == 2.5e4);

  s.ram.reset();
  const ResultRow bare = row_from_summary(s, "reference");
  CHECK_FALSE(bare.mean_ram_b.has_value());
  CHECK_FALSE(bare.stddev_ram_b.has_value());
}

TEST_CASE("row visibility flags follow the one percent rule") {
  ResultRow r = make_row("ref", "path_search", 100, 100.0);
  r.stddev_time_s = 1.0;  // exactly 1%: hidden
  CHECK_FALSE(r.time_stddev_visible());
  r.stddev_time_s = 1.01;
  CHECK(r.time_stddev_visible());

  CHECK_FALSE(r.ram_stddev_visible());  // absent
  r.mean_ram_b = 1000.0;
  r.stddev_ram_b = 5.0;
  CHECK_FALSE(r.ram_stddev_visible());
  r.stddev_ram_b = 50.0;
  CHECK(r.ram_stddev_visible());
}

TEST_CASE("rendered table starts with the pinned header and sorts rows") {
  std::vector<ResultRow> rows = {
      make_row("zeta", "import", 100, 1.0),
      make_row("alpha", "path_search", 100, 2.0),
      make_row("alpha", "import", 200, 3.0),
      make_row("alpha", "import", 100, 4.0),
  };
  const std::string text = render_results_csv(rows);
  const auto lines = util::text_lines(text);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == kResultsHeader);
  // (workload, backend, nodes) ordering.
  CHECK(lines[1].rfind("alpha,import,100,", 0) == 0);
  CHECK(lines[2].rfind("alpha,import,200,", 0) == 0);
  CHECK(lines[3].rfind("zeta,import,100,", 0) == 0);
  CHECK(lines[4].rfind("alpha,path_search,100,", 0) == 0);
}

TEST_CASE("one row renders as header plus one line") {
  const std::string text = render_results_csv({make_row("ref", "import", 14, 0.5)});
  CHECK(count_of(text, "\n") == 2);
  CHECK(text.back() == '\n');
}

TEST_CASE("absent memory values render as empty cells") {
  ResultRow bare = make_row("ref", "path_search", 100, 0.25);
  const std::string text = render_results_csv({bare});
  const auto lines = util::text_lines(text);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].substr(lines[1].size() - 2) == ",,");

  ResultRow with_ram = bare;
  with_ram.mean_ram_b = 2048.0;
  with_ram.stddev_ram_b = 0.0;
  const auto lines2 = util::text_lines(render_results_csv({with_ram}));
  CHECK(lines2[1].substr(lines2[1].size() - 7) == ",2048,0");
}

TEST_CASE("empty row list is rejected") {
  CHECK(thrown_code([] { render_results_csv({}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("text round trip preserves every field exactly") {
  std::vector<ResultRow> rows;
  rows.push_back(make_row("ref", "path_search", 10'000, 0.1));
  rows.back().stddev_time_s = 1.0 / 3.0;
  rows.back().mean_ram_b = 123456789.125;
  rows.back().stddev_ram_b = 1.0e-12;
  rows.push_back(make_row("remote", "import", 36'100, 12345.678901234567));
  rows.back().concurrency = true;
  rows.back().cache = "cold";
  rows.back().query_type = "single";
  rows.push_back(make_row("ref", "update", 2'500, 3.0e-9));
  rows.back().dimensionality = "1dstar";
  rows.back().distribution = "uniform";

  const std::string text = render_results_csv(rows);
  const std::vector<ResultRow> back = parse_results(text);
  REQUIRE(back.size() == rows.size());
  for (const ResultRow& r : rows) {
    CHECK(std::find(back.begin(), back.end(), r) != back.end());
  }
  // A second render of the parsed rows reproduces the bytes.
  CHECK(render_results_csv(back) == text);
}

TEST_CASE("file round trip and missing file") {
  const auto path = test_dir() / "roundtrip.csv";
  std::vector<ResultRow> rows = {make_row("ref", "import", 100, 0.5),
                                 make_row("ref", "path_search", 100, 0.025)};
  write_results(rows, path);
  const auto back = read_results(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == rows[0]);
  CHECK(back[1] == rows[1]);

  CHECK(thrown_code([&] { read_results(test_dir() / "absent.csv"); }) == ErrorCode::io);
}

TEST_CASE("malformed results text is rejected") {
  const std::string header(kResultsHeader);
  const std::string good =
      "ref,path_search,100,2d,beta,false,warm,bulk,0.5,0.01,,";
  CHECK(parse_results(header + "\n" + good + "\n").size() == 1);

  auto code_of = [&](const std::string& text) {
    return thrown_code([&] { parse_results(text); });
  };
  CHECK(code_of("not,a,results,file\n") == ErrorCode::io);
  CHECK(code_of("") == ErrorCode::io);
  CHECK(code_of(header + "\nref,path_search,100\n") == ErrorCode::io);
  CHECK(code_of(header + "\nref,path_search,100,2d,beta,maybe,warm,bulk,0.5,0.01,,\n") ==
        ErrorCode::io);
  CHECK(code_of(header + "\nref,path_search,x,2d,beta,false,warm,bulk,0.5,0.01,,\n") ==
        ErrorCode::io);
  CHECK(code_of(header + "\nref,path_search,100,2d,beta,false,warm,bulk,abc,0.01,,\n") ==
        ErrorCode::io);
  CHECK(code_of(header + "\nref,path_search,100,2d,beta,false,warm,bulk,0.5,0.01,nan!,\n") ==
        ErrorCode::io);
}

TEST_CASE("plot draws one bar per row with error bars only where visible") {
  std::vector<ResultRow> rows = {
      make_row("ref", "path_search", 2'500, 0.010),
      make_row("ref", "path_search", 10'000, 0.045),
      make_row("ref", "path_search", 36'100, 0.170),
  };
  rows[0].stddev_time_s = 0.010 * 0.001;  // hidden
  rows[1].stddev_time_s = 0.045 * 0.001;  // hidden
  rows[2].stddev_time_s = 0.170 * 0.10;   // visible

  const std::string svg = render_plot(rows, "nodes");
  CHECK(svg.rfind("<svg ", 0) == 0);
  CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
  // Background + three bars + one legend swatch.
  CHECK(count_of(svg, "<rect ") == 5);
  // One visible deviation: stem plus two caps.
  CHECK(count_of(svg, "stroke=\"#222222\"") == 3);
  // Numeric groups appear in ascending order.
  CHECK(svg.find(">2500<") != std::string::npos);
  CHECK(svg.find(">2500<") < svg.find(">10000<"));
  CHECK(svg.find(">10000<") < svg.find(">36100<"));
}

TEST_CASE("two backends over cache states group bars and label the legend") {
  std::vector<ResultRow> rows;
  for (const char* backend : {"remote", "ref"}) {
    for (const char* cache : {"warm", "cold"}) {
      ResultRow r = make_row(backend, "path_search", 10'000, backend[0] == 'r' ? 0.2 : 0.1);
      r.cache = cache;
      r.stddev_time_s = 0.0;
      rows.push_back(r);
    }
  }
  const std::string svg = render_plot(rows, "cache");
  // Background + four bars + two legend swatches.
  CHECK(count_of(svg, "<rect ") == 7);
  CHECK(svg.find(">ref<") != std::string::npos);
  CHECK(svg.find(">remote<") != std::string::npos);
  // Canonical cache ordering, cold before warm.
  CHECK(svg.find(">cold<") < svg.find(">warm<"));
}

TEST_CASE("identical rows render byte-identical vector output") {
  std::vector<ResultRow> rows = {
      make_row("ref", "path_search", 2'500, 0.010),
      make_row("ref", "path_search", 10'000, 0.045),
      make_row("remote", "path_search", 2'500, 0.020),
      make_row("remote", "path_search", 10'000, 0.090),
  };
  const std::string first = render_plot(rows, "nodes");
  CHECK(render_plot(rows, "nodes") == first);
  std::reverse(rows.begin(), rows.end());
  CHECK(render_plot(rows, "nodes") == first);
}

TEST_CASE("plot validation rejects inconsistent row sets") {
  auto code_of = [](std::vector<ResultRow> rows, std::string_view sweep) {
    return thrown_code([&] { render_plot(rows, sweep); });
  };
  CHECK(code_of({}, "nodes") == ErrorCode::invalid_argument);
  CHECK(code_of({make_row("ref", "path_search", 100, 0.5)}, "speed") ==
        ErrorCode::invalid_argument);

  // Mixed workloads.
  CHECK(code_of({make_row("ref", "path_search", 100, 0.5),
                 make_row("ref", "import", 200, 0.5)},
                "nodes") == ErrorCode::invalid_argument);

  // Same backend twice at one sweep value.
  CHECK(code_of({make_row("ref", "path_search", 100, 0.5),
                 make_row("ref", "path_search", 100, 0.6)},
                "nodes") == ErrorCode::invalid_argument);

  // A parameter other than the swept one varies.
  std::vector<ResultRow> mixed_cache = {make_row("ref", "path_search", 100, 0.5),
                                        make_row("ref", "path_search", 200, 0.6)};
  mixed_cache[1].cache = "cold";
  CHECK(code_of(mixed_cache, "nodes") == ErrorCode::invalid_argument);

  // Node counts may vary with the grid shape, which holds edges constant.
  std::vector<ResultRow> shapes = {make_row("ref", "path_search", 40'000, 0.5),
                                   make_row("ref", "path_search", 10'000, 0.6)};
  shapes[0].dimensionality = "1dstar";
  CHECK_FALSE(code_of(shapes, "dimensionality").has_value());
}

TEST_CASE("logarithmic time axis renders the same bars") {
  std::vector<ResultRow> rows = {
      make_row("ref", "path_search", 2'500, 1.0e-4),
      make_row("ref", "path_search", 10'000, 1.0e-2),
      make_row("ref", "path_search", 36'100, 1.0),
  };
  for (ResultRow& r : rows) r.stddev_time_s = 0.0;
  const std::string linear = render_plot(rows, "nodes");
  const std::string logged = render_plot(rows, "nodes", true);
  CHECK(linear != logged);
  CHECK(count_of(logged, "<rect ") == count_of(linear, "<rect "));
  CHECK(logged.find(">1e-04<") != std::string::npos);  // decade tick
}

TEST_CASE("plot file emission matches the in-memory renderer") {
  const auto path = test_dir() / "plot.svg";
  const std::vector<ResultRow> rows = {make_row("ref", "path_search", 100, 0.5)};
  render_plot_svg(rows, "nodes", path);
  CHECK(util::read_file(path) == render_plot(rows, "nodes"));
}
