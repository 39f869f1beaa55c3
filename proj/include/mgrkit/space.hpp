#pragma once

#include <string>
#include <vector>

#include "mgrkit/numerics.hpp"

namespace mgrkit {

enum class MetricKind { Metric, SemiMetric };

const char* to_string(MetricKind kind);

// A finite (semi-)metric space on points indexed 0..n.  Index 0 is the base
// point used when building Gramians.
struct MetricSpace {
  std::vector<std::string> labels;
  Matrix distances;
  MetricKind kind = MetricKind::Metric;

  int point_count() const { return static_cast<int>(distances.rows()); }
};

struct SpaceViolation {
  enum class Kind {
    NonFinite,
    Asymmetric,
    NonzeroDiagonal,
    NonPositiveOffDiagonal,
    TriangleInequality,
  };

  Kind kind;
  int i = 0;
  int j = 0;
  int k = 0;  // used by TriangleInequality only
  double detail = 0.0;

  std::string message() const;
};

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<SpaceViolation> violations);
  const std::vector<SpaceViolation>& violations() const { return violations_; }

 private:
  std::vector<SpaceViolation> violations_;
};

// Collects every violation instead of stopping at the first, so callers can
// report them all at once.  Triangle checks run only for MetricKind::Metric
// and allow 1e-12 relative slack.
std::vector<SpaceViolation> check_space(const Matrix& distances, MetricKind kind);

// Throws ValidationError listing the offending entries when the distances do
// not form a space of the requested kind.
MetricSpace validate_space(std::vector<std::string> labels, Matrix distances, MetricKind kind);

// validate_space with default labels x0..xn.
MetricSpace make_space(Matrix distances, MetricKind kind);

// Reorders points so that `base` becomes index 0; the rest keep their order.
MetricSpace with_base_point(const MetricSpace& space, int base);

// Rescales all distances by 1 / max distance.  The quantity computed by the
// solver is invariant under this rescaling; it only improves conditioning.
MetricSpace normalized(const MetricSpace& space);

// The three p-dependent matrices derived from one space:
//   d_p  entrywise p-th power of the distances,
//   m_p  d_p bordered by a ones row/column and a zero corner,
//   g_p  the Gramian at base point 0.
struct PMatrices {
  double p = 1.0;
  Matrix d_p;
  Matrix m_p;
  Matrix g_p;
};

PMatrices p_matrices(const MetricSpace& space, double p);

// Relative discrepancy between det(g_p) and its bordered-matrix counterpart
// (-1)^{n+1} / 2^n * det(m_p).  Near zero for every valid space.
double check_cm_gram_identity(const PMatrices& pm);

}  // namespace mgrkit
