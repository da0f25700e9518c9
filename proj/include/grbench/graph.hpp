#ifndef GRBENCH_GRAPH_HPP_
#define GRBENCH_GRAPH_HPP_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace grbench {

using NodeId = std::uint64_t;

struct WeightedEdge {
  NodeId from = 0;
  NodeId to = 0;
  std::int64_t weight = 0;

  friend auto operator<=>(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Backend-neutral exchange form of a graph: a node list plus a directed
/// weighted edge list. Kept canonical (nodes ascending, edges ordered by
/// (from, to)) so that serialization is bit-exact and hashable.
struct GraphDataset {
  std::vector<NodeId> nodes;
  std::vector<WeightedEdge> edges;

  void sort_canonical();

  std::string nodes_text() const;
  std::string edges_text() const;

  std::uint64_t content_hash() const;

  friend bool operator==(const GraphDataset&, const GraphDataset&) = default;
};

void write_dataset(const GraphDataset& dataset,
                   const std::filesystem::path& nodes_file,
                   const std::filesystem::path& edges_file);

GraphDataset read_dataset(const std::filesystem::path& nodes_file,
                          const std::filesystem::path& edges_file);

GraphDataset parse_dataset(std::string_view nodes_text,
                           std::string_view edges_text);

}  // namespace grbench

#endif  // GRBENCH_GRAPH_HPP_
