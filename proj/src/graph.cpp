#include "grbench/graph.hpp"

#include <algorithm>

#include "grbench/errors.hpp"
#include "grbench/util.hpp"

namespace grbench {

namespace {

constexpr std::string_view kNodesHeader = "node_id";
constexpr std::string_view kEdgesHeader = "from,to,weight";

std::uint64_t field_u64(std::string_view text, const char* what,
                        std::size_t line_no) {
  try {
    return util::parse_u64(text);
  } catch (const Error&) {
    raise(ErrorCode::ingest, std::string(what) + " on line " +
                                 std::to_string(line_no) + " is not a number: '" +
                                 std::string(text) + "'");
  }
}

std::int64_t field_i64(std::string_view text, const char* what,
                       std::size_t line_no) {
  try {
    return util::parse_i64(text);
  } catch (const Error&) {
    raise(ErrorCode::ingest, std::string(what) + " on line " +
                                 std::to_string(line_no) + " is not a number: '" +
                                 std::string(text) + "'");
  }
}

}  // namespace

void GraphDataset::sort_canonical() {
  std::sort(nodes.begin(), nodes.end());
  std::sort(edges.begin(), edges.end());
}

std::string GraphDataset::nodes_text() const {
  std::string out;
  out.reserve(nodes.size() * 8 + 16);
  out.append(kNodesHeader);
  out.push_back('\n');
  for (NodeId id : nodes) {
    out.append(std::to_string(id));
    out.push_back('\n');
  }
  return out;
}

std::string GraphDataset::edges_text() const {
  std::string out;
  out.reserve(edges.size() * 16 + 16);
  out.append(kEdgesHeader);
  out.push_back('\n');
  for (const WeightedEdge& e : edges) {
    out.append(std::to_string(e.from));
    out.push_back(',');
    out.append(std::to_string(e.to));
    out.push_back(',');
    out.append(std::to_string(e.weight));
    out.push_back('\n');
  }
  return out;
}

std::uint64_t GraphDataset::content_hash() const {
  GraphDataset canon = *this;
  canon.sort_canonical();
  return util::fnv1a(canon.edges_text(), util::fnv1a(canon.nodes_text()));
}

void write_dataset(const GraphDataset& dataset,
                   const std::filesystem::path& nodes_file,
                   const std::filesystem::path& edges_file) {
  util::write_file(nodes_file, dataset.nodes_text());
  util::write_file(edges_file, dataset.edges_text());
}

GraphDataset parse_dataset(std::string_view nodes_text,
                           std::string_view edges_text) {
  GraphDataset dataset;

  const auto node_lines = util::text_lines(nodes_text);
  if (node_lines.empty() || util::trim(node_lines.front()) != kNodesHeader) {
    raise(ErrorCode::ingest,
          "node file must start with the header '" + std::string(kNodesHeader) + "'");
  }
  dataset.nodes.reserve(node_lines.size() - 1);
  for (std::size_t i = 1; i < node_lines.size(); ++i) {
    dataset.nodes.push_back(field_u64(node_lines[i], "node id", i + 1));
  }

  const auto edge_lines = util::text_lines(edges_text);
  if (edge_lines.empty() || util::trim(edge_lines.front()) != kEdgesHeader) {
    raise(ErrorCode::ingest,
          "edge file must start with the header '" + std::string(kEdgesHeader) + "'");
  }
  dataset.edges.reserve(edge_lines.size() - 1);
  for (std::size_t i = 1; i < edge_lines.size(); ++i) {
    const auto fields = util::split(edge_lines[i], ',');
    if (fields.size() != 3) {
      raise(ErrorCode::ingest,
            "edge line " + std::to_string(i + 1) + " needs 3 fields: '" +
                std::string(edge_lines[i]) + "'");
    }
    dataset.edges.push_back({field_u64(fields[0], "edge source", i + 1),
                             field_u64(fields[1], "edge target", i + 1),
                             field_i64(fields[2], "edge weight", i + 1)});
  }
  return dataset;
}

GraphDataset read_dataset(const std::filesystem::path& nodes_file,
                          const std::filesystem::path& edges_file) {
  return parse_dataset(util::read_file(nodes_file), util::read_file(edges_file));
}

}  // namespace grbench
