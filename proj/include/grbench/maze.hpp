#ifndef GRBENCH_MAZE_HPP_
#define GRBENCH_MAZE_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "grbench/graph.hpp"

namespace grbench {

/// Per-cell traversal cost distribution. Costs are always integers in
/// [0, 255]. The beta shape (alpha, beta < 1) is U-shaped: mass concentrates
/// at the cheap and expensive ends, like an occupancy grid.
struct CostDistribution {
  enum class Kind { Uniform, Beta };

  Kind kind = Kind::Beta;
  double alpha = 0.5;
  double beta_param = 0.5;

  static CostDistribution uniform();
  static CostDistribution beta(double alpha, double beta_param);

  void validate() const;

  friend bool operator==(const CostDistribution&,
                         const CostDistribution&) = default;
};

enum class Dimensionality { OneDStar, OneD, TwoD, ThreeD };

std::string to_string(Dimensionality dim);
Dimensionality dimensionality_from_string(std::string_view text);

/// Grid axes per shape: 1 for the linear shapes, 2 and 3 for the others.
std::size_t axis_count(Dimensionality dim);

std::string to_string(CostDistribution::Kind kind);
CostDistribution::Kind dist_kind_from_string(std::string_view text);

/// Shape of a grid maze. side_lengths has 1 entry for 1D*/1D, 2 for 2D and
/// 3 for 3D. Cells are addressed row-major: the last coordinate varies
/// fastest, ids run 0 .. cell_count()-1.
struct GridSpec {
  Dimensionality dim = Dimensionality::TwoD;
  std::vector<std::uint32_t> side_lengths;

  void validate() const;
  std::uint64_t cell_count() const;
  std::uint32_t min_side() const;
  double diagonal() const;

  std::vector<std::uint32_t> coords_of(NodeId cell) const;
  NodeId cell_at(const std::vector<std::uint32_t>& coords) const;
  double euclid(NodeId a, NodeId b) const;

  /// Interior out-degree implied by the dimensionality: 1, 2, 4 or 6.
  unsigned interior_degree() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct GridMaze {
  GridSpec spec;
  std::vector<std::uint8_t> costs;  // one entry per cell, row-major
  std::uint64_t seed = 0;
};

struct Endpoints {
  NodeId start = 0;
  NodeId goal = 0;
  double target_euclid = 0.0;

  friend bool operator==(const Endpoints&, const Endpoints&) = default;
};

/// Draws costs in [0, 255] from a validated distribution. Parameters are
/// rejected at construction, never during sampling.
class CostSampler {
 public:
  CostSampler(const CostDistribution& dist, std::uint64_t seed);

  int next();

 private:
  CostDistribution dist_;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<int> uniform_{0, 255};
  std::gamma_distribution<double> gamma_a_;
  std::gamma_distribution<double> gamma_b_;
};

GridMaze generate_maze(const GridSpec& spec, const CostDistribution& dist,
                       std::uint64_t seed);

/// One node per cell. 1D/2D/3D: a directed edge u->v for every axis-adjacent
/// pair in both directions, weighted with the SOURCE cell's cost. 1D*: a
/// unidirectional chain cell i -> i+1.
GraphDataset maze_to_graph(const GridMaze& maze);

/// Uniformly random start, then a uniformly random goal among cells whose
/// Euclidean distance to the start lies within the tolerance band around
/// target_euclid (±1% of the target, at least ±0.5 cells). Bounded retries;
/// an unsatisfiable band raises infeasible_target.
Endpoints sample_endpoints(const GridMaze& maze, double target_euclid,
                           std::uint64_t seed);

double endpoint_tolerance(double target_euclid);

/// Grid shape for a requested node count: side = nodes for 1D*/1D,
/// round(sqrt) / round(cbrt) for 2D / 3D.
GridSpec grid_spec_for(Dimensionality dim, std::uint64_t target_nodes);

/// Closed-form directed edge count: N-1 (1D*), 2(N-1) (1D), and the sum of
/// 2*(s_a - 1) * prod(other sides) over axes for 2D/3D.
std::uint64_t expected_edge_count(const GridSpec& spec);

}  // namespace grbench

#endif  // GRBENCH_MAZE_HPP_
