#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <string>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "grbench/backend.hpp"
#include "grbench/errors.hpp"
#include "grbench/util.hpp"

namespace grbench {

namespace {

using nlohmann::json;

struct SplitUrl {
  std::string base;  // scheme://host:port
  std::string path;  // leading slash, "/" when absent
};

SplitUrl split_url(const std::string& url) {
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos || url.rfind("http://", 0) != 0) {
    raise(ErrorCode::config, "only http:// URLs are supported: " + url);
  }
  const std::size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

std::string render_template(const std::string& tpl,
                            const std::map<std::string, std::string>& params) {
  std::string out;
  out.reserve(tpl.size());
  std::size_t i = 0;
  while (i < tpl.size()) {
    if (tpl[i] == '{') {
      const std::size_t close = tpl.find('}', i + 1);
      if (close != std::string::npos) {
        const auto it = params.find(tpl.substr(i + 1, close - i - 1));
        // Only known parameter names substitute; any other {...} is left
        // alone so query-language braces survive rendering.
        if (it != params.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(tpl[i++]);
  }
  return out;
}

class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(BackendConfig config)
      : config_(std::move(config)), endpoint_(split_url(config_.url)) {
    probe_reachable();
  }

  std::string label() const override {
    return "external(" + endpoint_.base + ")";
  }

  void insert_node(NodeId id) override {
    post_query(rendered("single_node", {{"id", std::to_string(id)}}));
  }

  void insert_edge(const WeightedEdge& edge) override {
    post_query(rendered("single_edge", {{"from", std::to_string(edge.from)},
                                        {"to", std::to_string(edge.to)},
                                        {"weight", std::to_string(edge.weight)}}));
  }

  // One request for all nodes, one for all edges, regardless of size.
  void bulk_import(const GraphDataset& dataset) override {
    bulk_import_nodes(dataset.nodes);
    bulk_import_edges(dataset.edges);
  }

  void bulk_import_nodes(const std::vector<NodeId>& ids) override {
    json nodes = json::array();
    for (NodeId id : ids) nodes.push_back(id);
    post_query(rendered("bulk_nodes", {{"nodes", nodes.dump()}}));
  }

  void bulk_import_edges(const std::vector<WeightedEdge>& edges) override {
    json list = json::array();
    for (const WeightedEdge& e : edges) {
      list.push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight}});
    }
    post_query(rendered("bulk_edges", {{"edges", list.dump()}}));
  }

  void update_edge_weight(NodeId from, NodeId to, std::int64_t weight) override {
    post_query(rendered("update_edge", {{"from", std::to_string(from)},
                                        {"to", std::to_string(to)},
                                        {"weight", std::to_string(weight)}}));
  }

  void delete_edge(NodeId from, NodeId to) override {
    post_query(rendered("delete_edge",
                        {{"from", std::to_string(from)}, {"to", std::to_string(to)}}));
  }

  std::optional<Path> shortest_path(NodeId start, NodeId goal) override {
    const std::string body = post_query(rendered(
        "shortest_path",
        {{"start", std::to_string(start)}, {"goal", std::to_string(goal)}}));
    return parse_path_response(body);
  }

  void reset() override { run_command(config_.reset_command, "reset"); }

  void wipe() override {
    run_command(config_.wipe_command.empty() ? config_.reset_command
                                             : config_.wipe_command,
                "wipe");
  }

  std::optional<std::uint64_t> ram_probe() override {
    if (config_.ram_url.empty()) return std::nullopt;
    try {
      const SplitUrl probe = split_url(config_.ram_url);
      auto cli = make_client(probe.base);
      auto res = cli->Get(probe.path);
      if (!res || res->status >= 400) return std::nullopt;
      if (!config_.ram_path.empty()) {
        const json parsed = json::parse(res->body, nullptr, false);
        if (parsed.is_discarded()) return std::nullopt;
        const json::json_pointer ptr{config_.ram_path};
        if (!parsed.contains(ptr) || !parsed.at(ptr).is_number()) return std::nullopt;
        const double value = parsed.at(ptr).get<double>();
        return value >= 0 ? std::optional<std::uint64_t>(
                                static_cast<std::uint64_t>(value))
                          : std::nullopt;
      }
      return util::parse_u64(util::trim(res->body));
    } catch (const Error&) {
      return std::nullopt;  // an unavailable probe never aborts a run
    }
  }

 private:
  std::unique_ptr<httplib::Client> make_client(const std::string& base) const {
    auto cli = std::make_unique<httplib::Client>(base);
    if (!config_.user.empty()) {
      cli->set_basic_auth(config_.user, config_.password);
    }
    const auto whole = static_cast<time_t>(config_.timeout_s);
    const auto usec = static_cast<time_t>((config_.timeout_s - static_cast<double>(whole)) * 1e6);
    cli->set_connection_timeout(whole, usec);
    cli->set_read_timeout(whole, usec);
    cli->set_write_timeout(whole, usec);
    return cli;
  }

  void probe_reachable() const {
    auto cli = make_client(endpoint_.base);
    auto res = cli->Get("/");
    if (!res) {
      raise(ErrorCode::transport,
            "endpoint unreachable: " + endpoint_.base + " (" +
                httplib::to_string(res.error()) + ")");
    }
    if (res->status == 401 || res->status == 403) {
      raise(ErrorCode::query, "authentication rejected by " + endpoint_.base);
    }
  }

  std::string rendered(const std::string& name,
                       const std::map<std::string, std::string>& params) const {
    const auto it = config_.templates.find(name);
    if (it == config_.templates.end()) {
      raise(ErrorCode::config, "no " + name + " template configured");
    }
    return render_template(it->second, params);
  }

  // Each call uses its own connection so concurrent workers never share
  // transport state.
  std::string post_query(const std::string& body) const {
    auto cli = make_client(endpoint_.base);
    auto res = cli->Post(endpoint_.path, body, "application/json");
    if (!res) {
      raise(ErrorCode::transport, "request to " + endpoint_.base + " failed: " +
                                      httplib::to_string(res.error()));
    }
    if (res->status >= 400) {
      raise(ErrorCode::query, "engine answered HTTP " + std::to_string(res->status) +
                                  ": " + res->body.substr(0, 200));
    }
    return res->body;
  }

  std::optional<Path> parse_path_response(const std::string& body) const {
    const json parsed = json::parse(body, nullptr, false);
    if (parsed.is_discarded()) {
      raise(ErrorCode::query, "search response is not valid JSON");
    }
    const json::json_pointer cost_ptr{config_.cost_path};
    if (!parsed.contains(cost_ptr) || parsed.at(cost_ptr).is_null()) {
      return std::nullopt;  // engines signal no-path with a null/absent cost
    }
    const json& cost = parsed.at(cost_ptr);
    if (!cost.is_number() || cost.get<double>() < 0) {
      raise(ErrorCode::query, "search response cost is not a nonnegative number");
    }

    Path path;
    path.total_cost = cost.is_number_float()
                          ? static_cast<std::uint64_t>(std::llround(cost.get<double>()))
                          : cost.get<std::uint64_t>();
    const json::json_pointer nodes_ptr{config_.nodes_path};
    if (!parsed.contains(nodes_ptr) || !parsed.at(nodes_ptr).is_array()) {
      raise(ErrorCode::query, "search response lacks the node list");
    }
    for (const json& element : parsed.at(nodes_ptr)) {
      if (!element.is_number_integer()) {
        raise(ErrorCode::query, "search response node ids must be integers");
      }
      path.nodes.push_back(element.get<NodeId>());
    }
    path.hops = path.nodes.empty() ? 0 : path.nodes.size() - 1;
    return path;
  }

  void run_command(const std::string& command, const char* what) const {
    if (command.empty()) return;  // nothing configured: engine manages itself
    const int rc = std::system(command.c_str());
    if (rc != 0) {
      raise(ErrorCode::transport, std::string(what) + " command exited with status " +
                                      std::to_string(rc));
    }
    await_ready();
  }

  void await_ready() const {
    if (config_.ready_probe.empty()) return;
    const SplitUrl probe = split_url(config_.ready_probe);
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration<double>(config_.timeout_s);
    while (std::chrono::steady_clock::now() < deadline) {
      auto cli = std::make_unique<httplib::Client>(probe.base);
      cli->set_connection_timeout(2, 0);
      cli->set_read_timeout(2, 0);
      auto res = cli->Get(probe.path);
      if (res && res->status < 400) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    raise(ErrorCode::transport, "engine did not become ready before the timeout");
  }

  BackendConfig config_;
  SplitUrl endpoint_;
};

}  // namespace

std::unique_ptr<Backend> make_http_backend(const BackendConfig& config) {
  return std::make_unique<HttpBackend>(config);
}

}  // namespace grbench
