#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "mgrkit/hamming.hpp"
#include "mgrkit/space.hpp"

namespace mgrkit {

// Deterministic random source with a bit-exact contract so generated corpora
// are reproducible everywhere:
//   - engine: std::mt19937_64 seeded directly with the given value;
//   - next_unit: (next_u64() >> 11) * 2^-53, uniform on [0, 1);
//   - uniform(lo, hi): lo + (hi - lo) * next_unit();
//   - uniform_int(lo, hi): lo + next_u64() % (hi - lo + 1), bounds inclusive.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() %
                                 static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

struct GraphEdge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

struct GraphSpec {
  int vertex_count = 0;
  std::vector<GraphEdge> edges;
};

// All-pairs shortest-path metric of a simple connected weighted graph.
// Parallel edges are merged by keeping the smallest weight; loops,
// out-of-range endpoints, non-positive weights, and disconnected graphs are
// rejected.
MetricSpace graph_to_space(const GraphSpec& spec);

MetricSpace path_space(int vertices);
MetricSpace cycle_space(int vertices);
MetricSpace complete_space(int vertices);
MetricSpace star_space(int vertices);
MetricSpace random_tree_space(int vertices, std::uint64_t seed);

struct UniformRange {
  double lo = 0.5;
  double hi = 2.0;
};

// Symmetric matrix with zero diagonal and i.i.d. uniform off-diagonal entries
// drawn row-major over the upper triangle; n + 1 points. When require_metric
// is set the whole matrix is redrawn until the triangle inequality holds.
MetricSpace random_semimetric(int n, std::uint64_t seed, UniformRange range = {},
                              bool require_metric = false);

// n + 1 i.i.d. uniform points in the unit cube of the given dimension with
// Euclidean distances; coordinates are drawn point-major.
MetricSpace random_euclidean(int n, int dim, std::uint64_t seed);

// Origin plus extra_points distinct uniformly random nonzero cube vertices.
HammingSubset random_hamming_subset(int dimension, int extra_points, std::uint64_t seed);

struct FamilySpec {
  std::string name;
  int size = 0;
  int dimension = 0;
  std::uint64_t seed = 0;
};

using GeneratedSpace = std::variant<MetricSpace, HammingSubset>;

// Dispatch by family name: path_n, cycle_n, complete_n, star_n (size =
// vertex count), random_tree_n (size, seed), hamming_random (dimension,
// size = extra points, seed), random_semimetric (size = n, seed), and
// random_euclidean (size = n, dimension, seed).
GeneratedSpace make_family(const FamilySpec& spec);

}  // namespace mgrkit
