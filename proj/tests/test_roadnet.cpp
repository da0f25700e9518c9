#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "grbench/errors.hpp"
#include "grbench/oracle.hpp"
#include "grbench/roadnet.hpp"
#include "grbench/store.hpp"
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

const char* kHeader = "id,successors,travel_time,distance,fuel\n";

}  // namespace

TEST_CASE("a chain of equal elements gives equal weights") {
  const std::string text = std::string(kHeader) +
                           "A,B,10,100,1\n"
                           "B,C,10,100,1\n"
                           "C,,10,100,1\n";
  const GraphDataset d = ingest_roadnet_text(text);
  CHECK(d.nodes.size() == 3);
  CHECK(d.edges.size() == 2);
  CHECK(d.edges[0].weight == d.edges[1].weight);
  CHECK(d.edges[0].from == 0);
  CHECK(d.edges[0].to == 1);
  CHECK(d.edges[1].from == 1);
  CHECK(d.edges[1].to == 2);
}

TEST_CASE("successor lists become out-degree") {
  const std::string text = std::string(kHeader) +
                           "X,Y;Z,5,50,0.5\n"
                           "Y,,6,60,0.6\n"
                           "Z,,7,70,0.7\n";
  const GraphDataset d = ingest_roadnet_text(text);
  CHECK(d.nodes.size() == 3);
  CHECK(d.edges.size() == 2);
  int from_x = 0;
  for (const WeightedEdge& e : d.edges) {
    if (e.from == 0) ++from_x;
  }
  CHECK(from_x == 2);
}

TEST_CASE("weights are the scaled convex combination of the source") {
  // Two elements spanning the normalization range: the cheap one maps to 0,
  // the expensive one to 255, intermediates to the mixed fraction.
  const std::string text = std::string(kHeader) +
                           "A,B,0,0,0\n"
                           "B,C,10,100,1\n"
                           "C,A,5,25,0.25\n";
  const GraphDataset d = ingest_roadnet_text(text);
  REQUIRE(d.edges.size() == 3);
  // canonical order: 0->1 (A), 1->2 (B), 2->0 (C)
  CHECK(d.edges[0].weight == 0);
  CHECK(d.edges[1].weight == 255);
  // C: t=0.5, d=0.25, f=0.25 -> mean 1/3 -> round(85)
  CHECK(d.edges[2].weight == 85);
}

TEST_CASE("with pure time weighting the order of weights follows travel time") {
  std::string text = kHeader;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> time_pick(1.0, 500.0);
  std::vector<double> times;
  for (int i = 0; i < 30; ++i) {
    const double t = time_pick(rng);
    times.push_back(t);
    text += "n" + std::to_string(i) + ",n" + std::to_string((i + 1) % 30) + "," +
            util::format_double(t) + ",999,0.5\n";
  }
  const GraphDataset d = ingest_roadnet_text(text, CostWeights{1.0, 0.0, 0.0});
  REQUIRE(d.edges.size() == 30);
  for (std::size_t a = 0; a < 30; ++a) {
    for (std::size_t b = 0; b < 30; ++b) {
      if (times[a] < times[b]) {
        CHECK(d.edges[a].weight <= d.edges[b].weight);
      }
    }
  }
}

TEST_CASE("constant components contribute nothing") {
  const std::string text = std::string(kHeader) +
                           "A,B,7,1,0\n"
                           "B,A,7,2,1\n";
  // travel_time is constant: with pure time weighting everything costs 0.
  const GraphDataset d = ingest_roadnet_text(text, CostWeights{1.0, 0.0, 0.0});
  CHECK(d.edges[0].weight == 0);
  CHECK(d.edges[1].weight == 0);
}

TEST_CASE("all weights stay in the maze range and drive the same store") {
  std::string text = kHeader;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pick(0.0, 1000.0);
  for (int i = 0; i < 40; ++i) {
    text += "e" + std::to_string(i) + ",e" + std::to_string((i + 7) % 40) + ";e" +
            std::to_string((i + 13) % 40) + "," + util::format_double(pick(rng)) +
            "," + util::format_double(pick(rng)) + "," +
            util::format_double(pick(rng)) + "\n";
  }
  const GraphDataset d = ingest_roadnet_text(text);
  CHECK(d.edges.size() == 80);
  for (const WeightedEdge& e : d.edges) {
    CHECK(e.weight >= 0);
    CHECK(e.weight <= 255);
  }
  ReferenceStore store;
  store.bulk_import(d);
  const auto path = store.shortest_path(0, 20);
  const auto want = oracle_shortest_path(d, 0, 20);
  CHECK(path.has_value() == want.has_value());
  if (path && want) CHECK(path->total_cost == *want);
}

TEST_CASE("a synthetic file with the published dimensions converts exactly") {
  // 2.1e4 elements, 3.0e4 successor pairs.
  const std::size_t elements = 21000;
  const std::size_t pairs = 30000;
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> target(0, elements - 1);
  std::uniform_real_distribution<double> comp(0.1, 900.0);

  std::vector<std::size_t> degree(elements, 1);  // one successor each
  for (std::size_t extra = 0; extra < pairs - elements; ++extra) {
    ++degree[target(rng)];
  }
  std::string text = kHeader;
  text.reserve(pairs * 24 + elements * 30);
  for (std::size_t i = 0; i < elements; ++i) {
    text += "r" + std::to_string(i) + ",";
    for (std::size_t s = 0; s < degree[i]; ++s) {
      if (s > 0) text += ";";
      text += "r" + std::to_string(target(rng));
    }
    text += "," + util::format_double(comp(rng)) + "," +
            util::format_double(comp(rng)) + "," + util::format_double(comp(rng)) +
            "\n";
  }
  const GraphDataset d = ingest_roadnet_text(text);
  CHECK(d.nodes.size() == 21000);
  CHECK(d.edges.size() == 30000);
}

TEST_CASE("degree-one chains are kept, not contracted") {
  const std::string text = std::string(kHeader) +
                           "A,B,1,1,1\n"
                           "B,C,2,2,2\n"
                           "C,D,3,3,3\n"
                           "D,,4,4,4\n";
  const GraphDataset d = ingest_roadnet_text(text);
  CHECK(d.nodes.size() == 4);  // middle nodes survive
  CHECK(d.edges.size() == 3);
}

TEST_CASE("unresolvable successors are reported together") {
  const std::string text = std::string(kHeader) +
                           "A,B;GHOST1,1,1,1\n"
                           "B,GHOST2,2,2,2\n";
  try {
    ingest_roadnet_text(text);
    FAIL("expected an ingest error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ingest);
    CHECK(std::string(e.what()).find("GHOST1") != std::string::npos);
    CHECK(std::string(e.what()).find("GHOST2") != std::string::npos);
  }
}

TEST_CASE("malformed road files are rejected") {
  CHECK(thrown_code([] { ingest_roadnet_text("wrong,header\n"); }) ==
        ErrorCode::ingest);
  CHECK(thrown_code([] {
          ingest_roadnet_text(std::string(kHeader) + "A,,1,2\n");
        }) == ErrorCode::ingest);  // four fields
  CHECK(thrown_code([] {
          ingest_roadnet_text(std::string(kHeader) + "A,,x,2,3\n");
        }) == ErrorCode::ingest);  // non-numeric
  CHECK(thrown_code([] {
          ingest_roadnet_text(std::string(kHeader) + "A,,-1,2,3\n");
        }) == ErrorCode::ingest);  // negative component
  CHECK(thrown_code([] {
          ingest_roadnet_text(std::string(kHeader) + "A,,1,2,3\nA,,1,2,3\n");
        }) == ErrorCode::ingest);  // duplicate id
}

TEST_CASE("cost weights must be a convex combination") {
  CHECK_NOTHROW(CostWeights{}.validate());
  CHECK_NOTHROW(CostWeights{1.0, 0.0, 0.0}.validate());
  CHECK(thrown_code([] { CostWeights{0.5, 0.5, 0.5}.validate(); }) ==
        ErrorCode::invalid_argument);
  CHECK(thrown_code([] { CostWeights{-0.5, 1.0, 0.5}.validate(); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("road files load from disk") {
  const auto dir = std::filesystem::temp_directory_path() / "grbench_test_roadnet";
  std::filesystem::create_directories(dir);
  const auto file = dir / "net.csv";
  util::write_file(file, std::string(kHeader) + "A,B,1,2,3\nB,,4,5,6\n");
  const GraphDataset d = ingest_roadnet(file);
  CHECK(d.nodes.size() == 2);
  CHECK(d.edges.size() == 1);
  CHECK(thrown_code([&] { ingest_roadnet(dir / "missing.csv"); }) ==
        ErrorCode::io);
}
