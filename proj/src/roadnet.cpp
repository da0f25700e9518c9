#include "grbench/roadnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "grbench/errors.hpp"
#include "grbench/util.hpp"

namespace grbench {

void CostWeights::validate() const {
  for (double w : {w_time, w_distance, w_fuel}) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      raise(ErrorCode::invalid_argument, "cost weights must be nonnegative");
    }
  }
  if (std::abs(w_time + w_distance + w_fuel - 1.0) > 1e-9) {
    raise(ErrorCode::invalid_argument, "cost weights must sum to 1");
  }
}

std::vector<RoadElement> parse_roadnet(std::string_view text) {
  const auto lines = util::text_lines(text);
  if (lines.empty() || util::trim(lines.front()) != "id,successors,travel_time,distance,fuel") {
    raise(ErrorCode::ingest,
          "road file must start with the header 'id,successors,travel_time,distance,fuel'");
  }

  std::vector<RoadElement> elements;
  elements.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (util::trim(lines[i]).empty()) continue;
    const auto fields = util::split(lines[i], ',');
    if (fields.size() != 5) {
      raise(ErrorCode::ingest, "road line " + std::to_string(i + 1) +
                                   " needs 5 fields: '" + std::string(lines[i]) + "'");
    }
    RoadElement element;
    element.id = std::string(util::trim(fields[0]));
    if (element.id.empty()) {
      raise(ErrorCode::ingest, "road line " + std::to_string(i + 1) + " has an empty id");
    }
    if (!util::trim(fields[1]).empty()) {
      for (const std::string& succ : util::split(fields[1], ';')) {
        element.successors.emplace_back(util::trim(succ));
      }
    }
    const auto component_of = [&](std::string_view text, const char* what) {
      try {
        return util::parse_double(text);
      } catch (const Error&) {
        raise(ErrorCode::ingest, std::string(what) + " on road line " +
                                     std::to_string(i + 1) + " is not a number: '" +
                                     std::string(text) + "'");
      }
    };
    element.travel_time = component_of(fields[2], "travel time");
    element.distance = component_of(fields[3], "distance");
    element.fuel = component_of(fields[4], "fuel");
    for (double component : {element.travel_time, element.distance, element.fuel}) {
      if (component < 0.0 || !std::isfinite(component)) {
        raise(ErrorCode::ingest, "road element " + element.id +
                                     " has a negative or non-finite cost component");
      }
    }
    elements.push_back(std::move(element));
  }
  return elements;
}

GraphDataset roadnet_to_graph(const std::vector<RoadElement>& elements,
                              const CostWeights& weights) {
  weights.validate();

  std::unordered_map<std::string, NodeId> index;
  index.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!index.emplace(elements[i].id, static_cast<NodeId>(i)).second) {
      raise(ErrorCode::ingest, "duplicate road element id " + elements[i].id);
    }
  }

  std::string unresolved;
  for (const RoadElement& element : elements) {
    for (const std::string& succ : element.successors) {
      if (!index.count(succ)) {
        if (!unresolved.empty()) unresolved += ", ";
        unresolved += succ;
      }
    }
  }
  if (!unresolved.empty()) {
    raise(ErrorCode::ingest, "unresolvable successor ids: " + unresolved);
  }

  // Min-max normalize each component over the file; a constant component
  // contributes zero everywhere.
  auto normalizer = [&](double RoadElement::*member) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const RoadElement& e : elements) {
      lo = std::min(lo, e.*member);
      hi = std::max(hi, e.*member);
    }
    const double span = hi - lo;
    return [lo, span](double v) { return span > 0.0 ? (v - lo) / span : 0.0; };
  };
  const auto norm_time = normalizer(&RoadElement::travel_time);
  const auto norm_distance = normalizer(&RoadElement::distance);
  const auto norm_fuel = normalizer(&RoadElement::fuel);

  GraphDataset dataset;
  dataset.nodes.resize(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    dataset.nodes[i] = static_cast<NodeId>(i);
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const RoadElement& e = elements[i];
    const double combined = weights.w_time * norm_time(e.travel_time) +
                            weights.w_distance * norm_distance(e.distance) +
                            weights.w_fuel * norm_fuel(e.fuel);
    const auto weight = static_cast<std::int64_t>(std::lround(255.0 * combined));
    for (const std::string& succ : e.successors) {
      dataset.edges.push_back({static_cast<NodeId>(i), index.at(succ), weight});
    }
  }
  dataset.sort_canonical();
  return dataset;
}

GraphDataset ingest_roadnet_text(std::string_view text, const CostWeights& weights) {
  return roadnet_to_graph(parse_roadnet(text), weights);
}

GraphDataset ingest_roadnet(const std::filesystem::path& file,
                            const CostWeights& weights) {
  return roadnet_to_graph(parse_roadnet(util::read_file(file)), weights);
}

}  // namespace grbench
