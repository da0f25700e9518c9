#ifndef GRBENCH_ORACLE_HPP_
#define GRBENCH_ORACLE_HPP_

#include <cstdint>
#include <optional>

#include "grbench/graph.hpp"

namespace grbench {

/// Independent shortest-path cost oracle: full Bellman-Ford relaxation over
/// the dataset's edge list. O(V*E); intended for graphs small enough to
/// cross-check the engine's Dijkstra. Shares no code with ReferenceStore.
std::optional<std::uint64_t> oracle_shortest_path(const GraphDataset& dataset,
                                                  NodeId start, NodeId goal);

}  // namespace grbench

#endif  // GRBENCH_ORACLE_HPP_
