#ifndef GRBENCH_STORE_HPP_
#define GRBENCH_STORE_HPP_

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "grbench/graph.hpp"

namespace grbench {

struct Path {
  std::vector<NodeId> nodes;
  std::uint64_t total_cost = 0;
  std::size_t hops = 0;

  friend bool operator==(const Path&, const Path&) = default;
};

/// Reference in-memory graph engine. Adjacency lists are the durable
/// content; searches run on a lazily built forward-star index that models
/// the cache of an external engine: reset() drops the index but keeps the
/// content, so the next search pays the build cost again (cold state).
///
/// Concurrency: many readers (shortest_path), exclusive writers. Every
/// operation is atomic at query granularity.
class ReferenceStore {
 public:
  ReferenceStore() = default;
  ReferenceStore(const ReferenceStore&) = delete;
  ReferenceStore& operator=(const ReferenceStore&) = delete;

  void insert_node(NodeId id);
  void insert_edge(const WeightedEdge& edge);
  void insert_edge(NodeId from, NodeId to, std::int64_t weight);

  /// All nodes, then all edges. Atomic: any constraint violation leaves the
  /// store unchanged.
  void bulk_import(const GraphDataset& dataset);

  /// Single-phase bulks (each atomic within itself). These are the units an
  /// external engine receives as one request each.
  void bulk_insert_nodes(const std::vector<NodeId>& ids);
  void bulk_insert_edges(const std::vector<WeightedEdge>& edges);

  void update_edge_weight(NodeId from, NodeId to, std::int64_t weight);
  void delete_edge(NodeId from, NodeId to);

  /// Dijkstra with a binary min-heap and lazy deletion; ties broken by the
  /// smaller node id so returned paths are reproducible. Empty optional
  /// means no path (a successful result, not an error).
  std::optional<Path> shortest_path(NodeId start, NodeId goal) const;

  /// Drops the search index, keeps all graph content.
  void reset();

  /// Removes all content (harness provisioning between repetitions).
  void clear();

  bool index_built() const;
  std::size_t node_count() const;
  std::size_t edge_count() const;

  GraphDataset snapshot() const;

 private:
  struct SearchIndex {
    std::vector<NodeId> ids;  // sorted; dense index = position
    std::vector<std::uint32_t> offsets;
    std::vector<std::uint32_t> targets;
    std::vector<std::int64_t> weights;
  };

  void invalidate_index_locked();
  void ensure_index() const;  // callers hold the shared content lock

  mutable std::shared_mutex content_mu_;
  std::unordered_map<NodeId, std::vector<std::pair<NodeId, std::int64_t>>>
      adjacency_;
  std::size_t edge_count_ = 0;

  mutable std::mutex index_mu_;
  mutable std::atomic<bool> index_built_{false};
  mutable SearchIndex index_;
};

}  // namespace grbench

#endif  // GRBENCH_STORE_HPP_
