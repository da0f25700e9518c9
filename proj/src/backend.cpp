#include "grbench/backend.hpp"

#include "grbench/sysinfo.hpp"

namespace grbench {

std::optional<std::uint64_t> ReferenceBackend::ram_probe() {
  return process_resident_bytes();
}

std::unique_ptr<Backend> make_http_backend(const BackendConfig& config);

std::unique_ptr<Backend> connect(const BackendConfig& config) {
  config.validate();
  if (config.kind == BackendConfig::Kind::Reference) {
    return std::make_unique<ReferenceBackend>();
  }
  return make_http_backend(config);
}

std::optional<Path> dispatch(Backend& backend, const Operation& op) {
  return std::visit(
      [&backend](const auto& o) -> std::optional<Path> {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, OpInsertNode>) {
          backend.insert_node(o.id);
        } else if constexpr (std::is_same_v<T, OpInsertEdge>) {
          backend.insert_edge(o.edge);
        } else if constexpr (std::is_same_v<T, OpBulkImport>) {
          backend.bulk_import(o.dataset);
        } else if constexpr (std::is_same_v<T, OpShortestPath>) {
          return backend.shortest_path(o.start, o.goal);
        } else if constexpr (std::is_same_v<T, OpUpdateEdge>) {
          backend.update_edge_weight(o.from, o.to, o.weight);
        } else if constexpr (std::is_same_v<T, OpDeleteEdge>) {
          backend.delete_edge(o.from, o.to);
        } else {
          static_assert(std::is_same_v<T, OpReset>);
          backend.reset();
        }
        return std::nullopt;
      },
      op);
}

}  // namespace grbench
