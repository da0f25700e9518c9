#include "grbench/maze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grbench/errors.hpp"
#include "grbench/util.hpp"

namespace grbench {

CostDistribution CostDistribution::uniform() {
  CostDistribution d;
  d.kind = Kind::Uniform;
  return d;
}

CostDistribution CostDistribution::beta(double alpha, double beta_param) {
  CostDistribution d;
  d.kind = Kind::Beta;
  d.alpha = alpha;
  d.beta_param = beta_param;
  d.validate();
  return d;
}

void CostDistribution::validate() const {
  if (kind == Kind::Uniform) return;
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !(beta_param > 0.0) ||
      !std::isfinite(beta_param)) {
    raise(ErrorCode::invalid_argument, "beta shape parameters must be positive finite");
  }
}

std::string to_string(Dimensionality dim) {
  switch (dim) {
    case Dimensionality::OneDStar: return "1dstar";
    case Dimensionality::OneD: return "1d";
    case Dimensionality::TwoD: return "2d";
    case Dimensionality::ThreeD: return "3d";
  }
  return "?";
}

Dimensionality dimensionality_from_string(std::string_view text) {
  if (text == "1dstar") return Dimensionality::OneDStar;
  if (text == "1d") return Dimensionality::OneD;
  if (text == "2d") return Dimensionality::TwoD;
  if (text == "3d") return Dimensionality::ThreeD;
  raise(ErrorCode::invalid_argument,
        "unknown dimensionality '" + std::string(text) + "' (1dstar|1d|2d|3d)");
}

std::string to_string(CostDistribution::Kind kind) {
  return kind == CostDistribution::Kind::Uniform ? "uniform" : "beta";
}

CostDistribution::Kind dist_kind_from_string(std::string_view text) {
  if (text == "uniform") return CostDistribution::Kind::Uniform;
  if (text == "beta") return CostDistribution::Kind::Beta;
  raise(ErrorCode::invalid_argument,
        "unknown distribution '" + std::string(text) + "' (uniform|beta)");
}

std::size_t axis_count(Dimensionality dim) {
  switch (dim) {
    case Dimensionality::OneDStar:
    case Dimensionality::OneD: return 1;
    case Dimensionality::TwoD: return 2;
    case Dimensionality::ThreeD: return 3;
  }
  return 0;
}

void GridSpec::validate() const {
  const std::size_t want = axis_count(dim);
  if (side_lengths.size() != want) {
    raise(ErrorCode::invalid_argument,
          to_string(dim) + " grid needs " + std::to_string(want) +
              " side length(s), got " + std::to_string(side_lengths.size()));
  }
  std::uint64_t count = 1;
  for (std::uint32_t side : side_lengths) {
    if (side == 0) raise(ErrorCode::invalid_argument, "side length must be >= 1");
    if (count > std::numeric_limits<std::uint64_t>::max() / side) {
      raise(ErrorCode::invalid_argument, "grid cell count overflows");
    }
    count *= side;
  }
}

std::uint64_t GridSpec::cell_count() const {
  std::uint64_t count = 1;
  for (std::uint32_t side : side_lengths) count *= side;
  return count;
}

std::uint32_t GridSpec::min_side() const {
  return *std::min_element(side_lengths.begin(), side_lengths.end());
}

double GridSpec::diagonal() const {
  double sum = 0.0;
  for (std::uint32_t side : side_lengths) {
    const double span = static_cast<double>(side) - 1.0;
    sum += span * span;
  }
  return std::sqrt(sum);
}

std::vector<std::uint32_t> GridSpec::coords_of(NodeId cell) const {
  std::vector<std::uint32_t> coords(side_lengths.size());
  for (std::size_t a = side_lengths.size(); a-- > 0;) {
    coords[a] = static_cast<std::uint32_t>(cell % side_lengths[a]);
    cell /= side_lengths[a];
  }
  return coords;
}

NodeId GridSpec::cell_at(const std::vector<std::uint32_t>& coords) const {
  NodeId id = 0;
  for (std::size_t a = 0; a < side_lengths.size(); ++a) {
    id = id * side_lengths[a] + coords[a];
  }
  return id;
}

double GridSpec::euclid(NodeId a, NodeId b) const {
  const auto ca = coords_of(a);
  const auto cb = coords_of(b);
  double sum = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const double d = static_cast<double>(ca[i]) - static_cast<double>(cb[i]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

unsigned GridSpec::interior_degree() const {
  switch (dim) {
    case Dimensionality::OneDStar: return 1;
    case Dimensionality::OneD: return 2;
    case Dimensionality::TwoD: return 4;
    case Dimensionality::ThreeD: return 6;
  }
  return 0;
}

CostSampler::CostSampler(const CostDistribution& dist, std::uint64_t seed)
    : dist_(dist), rng_(seed) {
  dist_.validate();
  if (dist_.kind == CostDistribution::Kind::Beta) {
    gamma_a_ = std::gamma_distribution<double>(dist_.alpha, 1.0);
    gamma_b_ = std::gamma_distribution<double>(dist_.beta_param, 1.0);
  }
}

int CostSampler::next() {
  if (dist_.kind == CostDistribution::Kind::Uniform) return uniform_(rng_);
  double g1 = 0.0;
  double g2 = 0.0;
  do {
    g1 = gamma_a_(rng_);
    g2 = gamma_b_(rng_);
  } while (g1 + g2 <= 0.0);
  const double x = g1 / (g1 + g2);
  const long cost = std::lround(x * 255.0);
  return static_cast<int>(std::clamp(cost, 0L, 255L));
}

GridMaze generate_maze(const GridSpec& spec, const CostDistribution& dist,
                       std::uint64_t seed) {
  spec.validate();
  CostSampler sampler(dist, seed);
  GridMaze maze{spec, {}, seed};
  const std::uint64_t cells = spec.cell_count();
  maze.costs.resize(cells);
  for (std::uint64_t i = 0; i < cells; ++i) {
    maze.costs[i] = static_cast<std::uint8_t>(sampler.next());
  }
  return maze;
}

GraphDataset maze_to_graph(const GridMaze& maze) {
  const GridSpec& spec = maze.spec;
  spec.validate();
  const std::uint64_t cells = spec.cell_count();
  if (maze.costs.size() != cells) {
    raise(ErrorCode::invalid_argument, "cost array does not match the grid shape");
  }

  GraphDataset dataset;
  dataset.nodes.resize(cells);
  for (std::uint64_t i = 0; i < cells; ++i) dataset.nodes[i] = i;
  dataset.edges.reserve(expected_edge_count(spec));

  if (spec.dim == Dimensionality::OneDStar) {
    for (std::uint64_t i = 0; i + 1 < cells; ++i) {
      dataset.edges.push_back({i, i + 1, maze.costs[i]});
    }
    return dataset;
  }

  const std::size_t axes = spec.side_lengths.size();
  std::vector<std::uint64_t> stride(axes, 1);
  for (std::size_t a = axes - 1; a-- > 0;) {
    stride[a] = stride[a + 1] * spec.side_lengths[a + 1];
  }

  std::vector<std::uint32_t> coords(axes, 0);
  for (std::uint64_t u = 0; u < cells; ++u) {
    const std::int64_t w = maze.costs[u];
    // Emit neighbors in ascending id order: stride[0] is the largest, so the
    // minus side descends through axes 0..d-1 and the plus side climbs back.
    for (std::size_t a = 0; a < axes; ++a) {
      if (coords[a] > 0) dataset.edges.push_back({u, u - stride[a], w});
    }
    for (std::size_t a = axes; a-- > 0;) {
      if (coords[a] + 1 < spec.side_lengths[a]) {
        dataset.edges.push_back({u, u + stride[a], w});
      }
    }
    for (std::size_t a = axes; a-- > 0;) {  // advance row-major coordinates
      if (++coords[a] < spec.side_lengths[a]) break;
      coords[a] = 0;
    }
  }
  return dataset;
}

double endpoint_tolerance(double target_euclid) {
  return std::max(0.01 * target_euclid, 0.5);
}

Endpoints sample_endpoints(const GridMaze& maze, double target_euclid,
                           std::uint64_t seed) {
  const GridSpec& spec = maze.spec;
  spec.validate();
  if (!(target_euclid >= 0.0) || !std::isfinite(target_euclid)) {
    raise(ErrorCode::invalid_argument, "endpoint distance must be a nonnegative number");
  }
  const double tol = endpoint_tolerance(target_euclid);
  if (target_euclid - tol > spec.diagonal()) {
    raise(ErrorCode::infeasible_target,
          "distance " + util::format_double(target_euclid) +
              " exceeds the grid diagonal " + util::format_double(spec.diagonal()));
  }

  const std::uint64_t cells = spec.cell_count();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> any_cell(0, cells - 1);
  std::vector<NodeId> candidates;
  for (int attempt = 0; attempt < 10'000; ++attempt) {
    const NodeId start = any_cell(rng);
    candidates.clear();
    for (NodeId goal = 0; goal < cells; ++goal) {
      if (goal == start && target_euclid > 0.0) continue;
      if (std::abs(spec.euclid(start, goal) - target_euclid) <= tol) {
        candidates.push_back(goal);
      }
    }
    if (!candidates.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      return Endpoints{start, candidates[pick(rng)], target_euclid};
    }
  }
  raise(ErrorCode::infeasible_target,
        "no cell pair at distance " + util::format_double(target_euclid) + " +/- " +
            util::format_double(tol));
}

GridSpec grid_spec_for(Dimensionality dim, std::uint64_t target_nodes) {
  if (target_nodes == 0) raise(ErrorCode::invalid_argument, "node count must be >= 1");
  GridSpec spec;
  spec.dim = dim;
  const auto side_limit = std::numeric_limits<std::uint32_t>::max();
  switch (dim) {
    case Dimensionality::OneDStar:
    case Dimensionality::OneD: {
      if (target_nodes > side_limit) {
        raise(ErrorCode::invalid_argument, "node count too large for one axis");
      }
      spec.side_lengths = {static_cast<std::uint32_t>(target_nodes)};
      break;
    }
    case Dimensionality::TwoD: {
      const auto side = static_cast<std::uint32_t>(std::max<long long>(
          1, std::llround(std::sqrt(static_cast<double>(target_nodes)))));
      spec.side_lengths = {side, side};
      break;
    }
    case Dimensionality::ThreeD: {
      const auto side = static_cast<std::uint32_t>(std::max<long long>(
          1, std::llround(std::cbrt(static_cast<double>(target_nodes)))));
      spec.side_lengths = {side, side, side};
      break;
    }
  }
  spec.validate();
  return spec;
}

std::uint64_t expected_edge_count(const GridSpec& spec) {
  spec.validate();
  const std::uint64_t cells = spec.cell_count();
  if (spec.dim == Dimensionality::OneDStar) return cells - 1;
  std::uint64_t total = 0;
  for (std::size_t a = 0; a < spec.side_lengths.size(); ++a) {
    std::uint64_t pairs = spec.side_lengths[a] - 1;
    for (std::size_t b = 0; b < spec.side_lengths.size(); ++b) {
      if (b != a) pairs *= spec.side_lengths[b];
    }
    total += 2 * pairs;
  }
  return total;
}

}  // namespace grbench
