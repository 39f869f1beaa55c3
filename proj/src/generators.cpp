#include "mgrkit/generators.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace mgrkit {
namespace {

constexpr int kMetricRedrawLimit = 10000;

void require_vertices(int vertices, int minimum, const char* who) {
  if (vertices < minimum) {
    throw std::invalid_argument(std::string(who) + ": too few vertices");
  }
}

}  // namespace

MetricSpace graph_to_space(const GraphSpec& spec) {
  const int n = spec.vertex_count;
  require_vertices(n, 1, "graph_to_space");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  Matrix dist = Matrix::Constant(n, n, kInf);
  dist.diagonal().setZero();

  for (const GraphEdge& edge : spec.edges) {
    if (edge.u < 0 || edge.u >= n || edge.v < 0 || edge.v >= n) {
      throw std::invalid_argument("graph_to_space: edge endpoint out of range");
    }
    if (edge.u == edge.v) {
      throw std::invalid_argument("graph_to_space: loops are not allowed");
    }
    if (!(edge.weight > 0.0) || !std::isfinite(edge.weight)) {
      throw std::invalid_argument("graph_to_space: edge weights must be positive and finite");
    }
    dist(edge.u, edge.v) = std::min(dist(edge.u, edge.v), edge.weight);
    dist(edge.v, edge.u) = dist(edge.u, edge.v);
  }

  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (dist(i, k) == kInf) continue;
      for (int j = 0; j < n; ++j) {
        const double through = dist(i, k) + dist(k, j);
        if (through < dist(i, j)) {
          dist(i, j) = through;
        }
      }
    }
  }

  if (!dist.allFinite()) {
    throw std::invalid_argument("graph_to_space: graph is disconnected");
  }
  return make_space(std::move(dist), MetricKind::Metric);
}

MetricSpace path_space(int vertices) {
  require_vertices(vertices, 1, "path_space");
  GraphSpec spec;
  spec.vertex_count = vertices;
  for (int i = 0; i + 1 < vertices; ++i) spec.edges.push_back({i, i + 1, 1.0});
  return graph_to_space(spec);
}

MetricSpace cycle_space(int vertices) {
  require_vertices(vertices, 3, "cycle_space");
  GraphSpec spec;
  spec.vertex_count = vertices;
  for (int i = 0; i < vertices; ++i) spec.edges.push_back({i, (i + 1) % vertices, 1.0});
  return graph_to_space(spec);
}

MetricSpace complete_space(int vertices) {
  require_vertices(vertices, 1, "complete_space");
  GraphSpec spec;
  spec.vertex_count = vertices;
  for (int i = 0; i < vertices; ++i) {
    for (int j = i + 1; j < vertices; ++j) spec.edges.push_back({i, j, 1.0});
  }
  return graph_to_space(spec);
}

MetricSpace star_space(int vertices) {
  require_vertices(vertices, 2, "star_space");
  GraphSpec spec;
  spec.vertex_count = vertices;
  for (int leaf = 1; leaf < vertices; ++leaf) spec.edges.push_back({0, leaf, 1.0});
  return graph_to_space(spec);
}

MetricSpace random_tree_space(int vertices, std::uint64_t seed) {
  require_vertices(vertices, 1, "random_tree_space");
  SeededRng rng(seed);
  GraphSpec spec;
  spec.vertex_count = vertices;
  for (int i = 1; i < vertices; ++i) {
    spec.edges.push_back({rng.uniform_int(0, i - 1), i, 1.0});
  }
  return graph_to_space(spec);
}

MetricSpace random_semimetric(int n, std::uint64_t seed, UniformRange range,
                              bool require_metric) {
  if (n < 1) throw std::invalid_argument("random_semimetric: n must be at least 1");
  if (!(range.lo > 0.0) || !(range.hi >= range.lo)) {
    throw std::invalid_argument("random_semimetric: need 0 < lo <= hi");
  }

  SeededRng rng(seed);
  const int count = n + 1;
  for (int attempt = 0; attempt < kMetricRedrawLimit; ++attempt) {
    Matrix d = Matrix::Zero(count, count);
    for (int i = 0; i < count; ++i) {
      for (int j = i + 1; j < count; ++j) {
        d(i, j) = d(j, i) = rng.uniform(range.lo, range.hi);
      }
    }
    if (!require_metric) {
      return make_space(std::move(d), MetricKind::SemiMetric);
    }
    if (check_space(d, MetricKind::Metric).empty()) {
      return make_space(std::move(d), MetricKind::Metric);
    }
  }
  throw std::runtime_error(
      "random_semimetric: could not draw a metric within the redraw limit; widen the range");
}

MetricSpace random_euclidean(int n, int dim, std::uint64_t seed) {
  if (n < 1 || dim < 1) {
    throw std::invalid_argument("random_euclidean: n and dim must be at least 1");
  }

  SeededRng rng(seed);
  const int count = n + 1;
  Matrix pointset(count, dim);
  for (int i = 0; i < count; ++i) {
    for (int c = 0; c < dim; ++c) pointset(i, c) = rng.next_unit();
  }

  Matrix d = Matrix::Zero(count, count);
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      d(i, j) = d(j, i) = (pointset.row(i) - pointset.row(j)).norm();
    }
  }
  return make_space(std::move(d), MetricKind::Metric);
}

HammingSubset random_hamming_subset(int dimension, int extra_points, std::uint64_t seed) {
  if (dimension < 1 || dimension > 62) {
    throw std::invalid_argument("random_hamming_subset: dimension must be in [1, 62]");
  }
  if (extra_points < 1) {
    throw std::invalid_argument("random_hamming_subset: need at least one extra point");
  }
  const std::uint64_t capacity = (std::uint64_t{1} << dimension) - 1;
  if (static_cast<std::uint64_t>(extra_points) > capacity) {
    throw std::invalid_argument("random_hamming_subset: more points than cube vertices");
  }

  SeededRng rng(seed);
  const std::uint64_t mask_bits = capacity;
  std::vector<std::uint64_t> masks = {0};
  std::set<std::uint64_t> seen = {0};
  while (static_cast<int>(masks.size()) < extra_points + 1) {
    const std::uint64_t mask = rng.next_u64() & mask_bits;
    if (seen.insert(mask).second) masks.push_back(mask);
  }

  std::vector<std::vector<int>> points;
  points.reserve(masks.size());
  for (std::uint64_t mask : masks) {
    std::vector<int> point(static_cast<std::size_t>(dimension));
    for (int c = 0; c < dimension; ++c) {
      point[static_cast<std::size_t>(c)] = static_cast<int>((mask >> c) & 1u);
    }
    points.push_back(std::move(point));
  }
  return make_hamming_subset(dimension, std::move(points));
}

GeneratedSpace make_family(const FamilySpec& spec) {
  if (spec.name == "path_n") return path_space(spec.size);
  if (spec.name == "cycle_n") return cycle_space(spec.size);
  if (spec.name == "complete_n") return complete_space(spec.size);
  if (spec.name == "star_n") return star_space(spec.size);
  if (spec.name == "random_tree_n") return random_tree_space(spec.size, spec.seed);
  if (spec.name == "hamming_random") {
    return random_hamming_subset(spec.dimension, spec.size, spec.seed);
  }
  if (spec.name == "random_semimetric") return random_semimetric(spec.size, spec.seed);
  if (spec.name == "random_euclidean") {
    return random_euclidean(spec.size, spec.dimension, spec.seed);
  }
  throw std::invalid_argument("make_family: unknown family '" + spec.name + "'");
}

}  // namespace mgrkit
