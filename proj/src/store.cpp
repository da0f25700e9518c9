#include "grbench/store.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_set>

#include "grbench/errors.hpp"

namespace grbench {

namespace {
constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint32_t kNoPrev = std::numeric_limits<std::uint32_t>::max();
}  // namespace

void ReferenceStore::insert_node(NodeId id) {
  std::unique_lock lock(content_mu_);
  if (adjacency_.count(id)) {
    raise(ErrorCode::duplicate_node, "node " + std::to_string(id) + " already exists");
  }
  adjacency_.emplace(id, std::vector<std::pair<NodeId, std::int64_t>>{});
  invalidate_index_locked();
}

void ReferenceStore::insert_edge(const WeightedEdge& edge) {
  insert_edge(edge.from, edge.to, edge.weight);
}

void ReferenceStore::insert_edge(NodeId from, NodeId to, std::int64_t weight) {
  if (weight < 0) raise(ErrorCode::invalid_weight, "edge weight must be >= 0");
  std::unique_lock lock(content_mu_);
  auto it = adjacency_.find(from);
  if (it == adjacency_.end() || !adjacency_.count(to)) {
    raise(ErrorCode::unknown_node, "edge endpoints must be stored nodes");
  }
  for (auto& [target, w] : it->second) {
    if (target == to) {  // one edge per ordered pair: re-insert replaces
      w = weight;
      invalidate_index_locked();
      return;
    }
  }
  it->second.emplace_back(to, weight);
  ++edge_count_;
  invalidate_index_locked();
}

void ReferenceStore::bulk_import(const GraphDataset& dataset) {
  std::unique_lock lock(content_mu_);

  std::unordered_set<NodeId> incoming;
  incoming.reserve(dataset.nodes.size());
  for (NodeId id : dataset.nodes) {
    if (adjacency_.count(id) || !incoming.insert(id).second) {
      raise(ErrorCode::duplicate_node,
            "bulk rejected: node " + std::to_string(id) + " already exists");
    }
  }
  auto known = [&](NodeId id) { return incoming.count(id) || adjacency_.count(id); };
  for (const WeightedEdge& e : dataset.edges) {
    if (e.weight < 0) raise(ErrorCode::invalid_weight, "bulk rejected: negative weight");
    if (!known(e.from) || !known(e.to)) {
      raise(ErrorCode::unknown_node, "bulk rejected: edge references an unknown node");
    }
  }

  for (NodeId id : dataset.nodes) {
    adjacency_.emplace(id, std::vector<std::pair<NodeId, std::int64_t>>{});
  }
  for (const WeightedEdge& e : dataset.edges) {
    auto& out = adjacency_[e.from];
    bool replaced = false;
    for (auto& [target, w] : out) {
      if (target == e.to) {
        w = e.weight;
        replaced = true;
        break;
      }
    }
    if (!replaced) {
      out.emplace_back(e.to, e.weight);
      ++edge_count_;
    }
  }
  invalidate_index_locked();
}

void ReferenceStore::bulk_insert_nodes(const std::vector<NodeId>& ids) {
  std::unique_lock lock(content_mu_);
  std::unordered_set<NodeId> incoming;
  incoming.reserve(ids.size());
  for (NodeId id : ids) {
    if (adjacency_.count(id) || !incoming.insert(id).second) {
      raise(ErrorCode::duplicate_node,
            "bulk rejected: node " + std::to_string(id) + " already exists");
    }
  }
  for (NodeId id : ids) {
    adjacency_.emplace(id, std::vector<std::pair<NodeId, std::int64_t>>{});
  }
  invalidate_index_locked();
}

void ReferenceStore::bulk_insert_edges(const std::vector<WeightedEdge>& edges) {
  std::unique_lock lock(content_mu_);
  for (const WeightedEdge& e : edges) {
    if (e.weight < 0) raise(ErrorCode::invalid_weight, "bulk rejected: negative weight");
    if (!adjacency_.count(e.from) || !adjacency_.count(e.to)) {
      raise(ErrorCode::unknown_node, "bulk rejected: edge references an unknown node");
    }
  }
  for (const WeightedEdge& e : edges) {
    auto& out = adjacency_[e.from];
    bool replaced = false;
    for (auto& [target, w] : out) {
      if (target == e.to) {
        w = e.weight;
        replaced = true;
        break;
      }
    }
    if (!replaced) {
      out.emplace_back(e.to, e.weight);
      ++edge_count_;
    }
  }
  invalidate_index_locked();
}

void ReferenceStore::update_edge_weight(NodeId from, NodeId to, std::int64_t weight) {
  if (weight < 0) raise(ErrorCode::invalid_weight, "edge weight must be >= 0");
  std::unique_lock lock(content_mu_);
  auto it = adjacency_.find(from);
  if (it != adjacency_.end()) {
    for (auto& [target, w] : it->second) {
      if (target == to) {
        w = weight;
        invalidate_index_locked();
        return;
      }
    }
  }
  raise(ErrorCode::unknown_edge,
        "no edge " + std::to_string(from) + " -> " + std::to_string(to));
}

void ReferenceStore::delete_edge(NodeId from, NodeId to) {
  std::unique_lock lock(content_mu_);
  auto it = adjacency_.find(from);
  if (it != adjacency_.end()) {
    auto& out = it->second;
    for (auto pos = out.begin(); pos != out.end(); ++pos) {
      if (pos->first == to) {
        out.erase(pos);
        --edge_count_;
        invalidate_index_locked();
        return;
      }
    }
  }
  raise(ErrorCode::unknown_edge,
        "no edge " + std::to_string(from) + " -> " + std::to_string(to));
}

std::optional<Path> ReferenceStore::shortest_path(NodeId start, NodeId goal) const {
  std::shared_lock lock(content_mu_);
  if (!adjacency_.count(start) || !adjacency_.count(goal)) {
    raise(ErrorCode::unknown_node, "search endpoints must be stored nodes");
  }
  ensure_index();

  const auto& ids = index_.ids;
  auto dense = [&](NodeId id) {
    return static_cast<std::uint32_t>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  const std::uint32_t s = dense(start);
  const std::uint32_t g = dense(goal);

  std::vector<std::uint64_t> dist(ids.size(), kInf);
  std::vector<std::uint32_t> prev(ids.size(), kNoPrev);
  using HeapItem = std::pair<std::uint64_t, std::uint32_t>;  // (dist, node)
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
  dist[s] = 0;
  heap.emplace(0, s);

  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;  // stale entry (lazy deletion)
    if (u == g) break;
    const std::uint32_t end = index_.offsets[u + 1];
    for (std::uint32_t i = index_.offsets[u]; i < end; ++i) {
      const std::uint32_t v = index_.targets[i];
      const std::uint64_t candidate = d + static_cast<std::uint64_t>(index_.weights[i]);
      if (candidate < dist[v]) {
        dist[v] = candidate;
        prev[v] = u;
        heap.emplace(candidate, v);
      }
    }
  }

  if (dist[g] == kInf) return std::nullopt;

  Path path;
  path.total_cost = dist[g];
  for (std::uint32_t v = g;; v = prev[v]) {
    path.nodes.push_back(ids[v]);
    if (v == s) break;
  }
  std::reverse(path.nodes.begin(), path.nodes.end());
  path.hops = path.nodes.size() - 1;
  return path;
}

void ReferenceStore::reset() {
  std::unique_lock lock(content_mu_);
  invalidate_index_locked();
}

void ReferenceStore::clear() {
  std::unique_lock lock(content_mu_);
  adjacency_.clear();
  edge_count_ = 0;
  invalidate_index_locked();
}

bool ReferenceStore::index_built() const {
  return index_built_.load(std::memory_order_acquire);
}

std::size_t ReferenceStore::node_count() const {
  std::shared_lock lock(content_mu_);
  return adjacency_.size();
}

std::size_t ReferenceStore::edge_count() const {
  std::shared_lock lock(content_mu_);
  return edge_count_;
}

GraphDataset ReferenceStore::snapshot() const {
  std::shared_lock lock(content_mu_);
  GraphDataset dataset;
  dataset.nodes.reserve(adjacency_.size());
  dataset.edges.reserve(edge_count_);
  for (const auto& [id, out] : adjacency_) {
    dataset.nodes.push_back(id);
    for (const auto& [to, w] : out) dataset.edges.push_back({id, to, w});
  }
  dataset.sort_canonical();
  return dataset;
}

void ReferenceStore::invalidate_index_locked() {
  index_built_.store(false, std::memory_order_release);
  index_ = SearchIndex{};
}

void ReferenceStore::ensure_index() const {
  if (index_built_.load(std::memory_order_acquire)) return;
  std::lock_guard guard(index_mu_);
  if (index_built_.load(std::memory_order_acquire)) return;

  SearchIndex idx;
  idx.ids.reserve(adjacency_.size());
  for (const auto& [id, out] : adjacency_) idx.ids.push_back(id);
  std::sort(idx.ids.begin(), idx.ids.end());
  if (idx.ids.size() >= kNoPrev) {
    raise(ErrorCode::invalid_argument, "graph too large for the search index");
  }

  idx.offsets.assign(idx.ids.size() + 1, 0);
  idx.targets.reserve(edge_count_);
  idx.weights.reserve(edge_count_);
  std::vector<std::pair<NodeId, std::int64_t>> sorted_out;
  for (std::size_t u = 0; u < idx.ids.size(); ++u) {
    const auto& out = adjacency_.at(idx.ids[u]);
    sorted_out.assign(out.begin(), out.end());
    std::sort(sorted_out.begin(), sorted_out.end());
    for (const auto& [to, w] : sorted_out) {
      const auto pos =
          std::lower_bound(idx.ids.begin(), idx.ids.end(), to) - idx.ids.begin();
      idx.targets.push_back(static_cast<std::uint32_t>(pos));
      idx.weights.push_back(w);
    }
    idx.offsets[u + 1] = static_cast<std::uint32_t>(idx.targets.size());
  }

  index_ = std::move(idx);
  index_built_.store(true, std::memory_order_release);
}

}  // namespace grbench
