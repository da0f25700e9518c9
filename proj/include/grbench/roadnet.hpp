#ifndef GRBENCH_ROADNET_HPP_
#define GRBENCH_ROADNET_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "grbench/graph.hpp"

namespace grbench {

struct RoadElement {
  std::string id;
  std::vector<std::string> successors;
  double travel_time = 0.0;
  double distance = 0.0;
  double fuel = 0.0;
};

/// Convex combination weights for the edge cost function over travel time,
/// distance and fuel consumption.
struct CostWeights {
  double w_time = 1.0 / 3.0;
  double w_distance = 1.0 / 3.0;
  double w_fuel = 1.0 / 3.0;

  void validate() const;
};

std::vector<RoadElement> parse_roadnet(std::string_view text);

/// One node per road element (numeric ids in file order), one directed edge
/// per (element, successor) pair. Edge weight = round(255 * combination of
/// min-max normalized components of the SOURCE element), so road graphs use
/// the same [0, 255] weight range as mazes. No simplification: degree-1
/// chains are kept as-is.
GraphDataset roadnet_to_graph(const std::vector<RoadElement>& elements,
                              const CostWeights& weights = {});

GraphDataset ingest_roadnet(const std::filesystem::path& file,
                            const CostWeights& weights = {});

GraphDataset ingest_roadnet_text(std::string_view text,
                                 const CostWeights& weights = {});

}  // namespace grbench

#endif  // GRBENCH_ROADNET_HPP_
