#ifndef GRBENCH_BACKEND_HPP_
#define GRBENCH_BACKEND_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "grbench/graph.hpp"
#include "grbench/store.hpp"

namespace grbench {

/// Configuration for a graph store under test. External stores are driven
/// entirely by named query templates ({param} placeholders); the harness
/// core never contains vendor query text.
struct BackendConfig {
  enum class Kind { Reference, External };

  Kind kind = Kind::Reference;

  // [endpoint]
  std::string url;
  std::string user;
  std::string password;
  std::string ram_url;
  double timeout_s = 300.0;

  // [templates]  (bulk_nodes, bulk_edges, single_node, single_edge,
  //  shortest_path are mandatory; update_edge, delete_edge optional)
  std::map<std::string, std::string> templates;

  // [response]  JSON pointers into query responses
  std::string nodes_path = "/nodes";
  std::string cost_path = "/cost";
  std::string ram_path;

  // [reset]  command clears caches but keeps content (e.g. a container
  //  restart); wipe_command restores an empty store (falls back to command)
  std::string reset_command;
  std::string wipe_command;
  std::string ready_probe;

  static BackendConfig reference();
  static BackendConfig load(const std::filesystem::path& file);
  static BackendConfig parse(std::string_view text);

  void validate() const;
};

/// The abstract store interface every engine under test implements. A
/// handle may be shared by concurrent workers; each call keeps its own
/// request context.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string label() const = 0;

  virtual void insert_node(NodeId id) = 0;
  virtual void insert_edge(const WeightedEdge& edge) = 0;
  virtual void bulk_import(const GraphDataset& dataset) = 0;
  /// Phase-level bulks, timed separately by the driver (imports report the
  /// node phase and the edge phase as distinct streams).
  virtual void bulk_import_nodes(const std::vector<NodeId>& ids) = 0;
  virtual void bulk_import_edges(const std::vector<WeightedEdge>& edges) = 0;
  virtual void update_edge_weight(NodeId from, NodeId to,
                                  std::int64_t weight) = 0;
  virtual void delete_edge(NodeId from, NodeId to) = 0;
  virtual std::optional<Path> shortest_path(NodeId start, NodeId goal) = 0;

  /// Clears caches / search indexes. Never alters stored graph content.
  virtual void reset() = 0;

  /// Provisioning hook: restore an empty target before a fresh dataset is
  /// loaded. Not part of the measured operation set.
  virtual void wipe() = 0;

  /// Current memory footprint of the engine under test; empty when no probe
  /// is available (the run continues with the measurement marked absent).
  virtual std::optional<std::uint64_t> ram_probe() = 0;
};

class ReferenceBackend : public Backend {
 public:
  std::string label() const override { return "reference"; }

  void insert_node(NodeId id) override { store_.insert_node(id); }
  void insert_edge(const WeightedEdge& edge) override {
    store_.insert_edge(edge);
  }
  void bulk_import(const GraphDataset& dataset) override {
    store_.bulk_import(dataset);
  }
  void bulk_import_nodes(const std::vector<NodeId>& ids) override {
    store_.bulk_insert_nodes(ids);
  }
  void bulk_import_edges(const std::vector<WeightedEdge>& edges) override {
    store_.bulk_insert_edges(edges);
  }
  void update_edge_weight(NodeId from, NodeId to,
                          std::int64_t weight) override {
    store_.update_edge_weight(from, to, weight);
  }
  void delete_edge(NodeId from, NodeId to) override {
    store_.delete_edge(from, to);
  }
  std::optional<Path> shortest_path(NodeId start, NodeId goal) override {
    return store_.shortest_path(start, goal);
  }
  void reset() override { store_.reset(); }
  void wipe() override { store_.clear(); }
  std::optional<std::uint64_t> ram_probe() override;

  ReferenceStore& store() { return store_; }

 private:
  ReferenceStore store_;
};

std::unique_ptr<Backend> connect(const BackendConfig& config);

// Value form of the operations a backend dispatches, for tests and drivers
// that build operation streams.
struct OpInsertNode { NodeId id; };
struct OpInsertEdge { WeightedEdge edge; };
struct OpBulkImport { GraphDataset dataset; };
struct OpShortestPath { NodeId start; NodeId goal; };
struct OpUpdateEdge { NodeId from; NodeId to; std::int64_t weight; };
struct OpDeleteEdge { NodeId from; NodeId to; };
struct OpReset {};

using Operation = std::variant<OpInsertNode, OpInsertEdge, OpBulkImport,
                               OpShortestPath, OpUpdateEdge, OpDeleteEdge,
                               OpReset>;

/// Runs one operation against a backend. Non-search operations return an
/// empty optional on success.
std::optional<Path> dispatch(Backend& backend, const Operation& op);

}  // namespace grbench

#endif  // GRBENCH_BACKEND_HPP_
