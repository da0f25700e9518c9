#include "grbench/oracle.hpp"

#include <limits>
#include <unordered_map>
#include <vector>

#include "grbench/errors.hpp"

namespace grbench {

std::optional<std::uint64_t> oracle_shortest_path(const GraphDataset& dataset,
                                                  NodeId start, NodeId goal) {
  std::unordered_map<NodeId, std::size_t> index;
  index.reserve(dataset.nodes.size());
  for (NodeId id : dataset.nodes) index.emplace(id, index.size());
  if (!index.count(start) || !index.count(goal)) {
    raise(ErrorCode::unknown_node, "endpoint not in dataset");
  }
  for (const WeightedEdge& e : dataset.edges) {
    if (!index.count(e.from) || !index.count(e.to)) {
      raise(ErrorCode::unknown_node, "edge endpoint not in dataset");
    }
    if (e.weight < 0) raise(ErrorCode::invalid_weight, "negative edge weight");
  }

  constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> dist(dataset.nodes.size(), kInf);
  dist[index.at(start)] = 0;

  // Full relaxation sweeps until a fixpoint; at most V-1 are ever needed for
  // nonnegative weights.
  for (std::size_t round = 0; round + 1 < dataset.nodes.size() || round == 0; ++round) {
    bool changed = false;
    for (const WeightedEdge& e : dataset.edges) {
      const std::uint64_t du = dist[index.at(e.from)];
      if (du == kInf) continue;
      const std::uint64_t candidate = du + static_cast<std::uint64_t>(e.weight);
      std::uint64_t& dv = dist[index.at(e.to)];
      if (candidate < dv) {
        dv = candidate;
        changed = true;
      }
    }
    if (!changed) break;
  }

  const std::uint64_t d = dist[index.at(goal)];
  if (d == kInf) return std::nullopt;
  return d;
}

}  // namespace grbench
