#include "mgrkit/hamming.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace mgrkit {
namespace {

int hamming_distance(const std::vector<int>& a, const std::vector<int>& b) {
  int d = 0;
  for (std::size_t c = 0; c < a.size(); ++c) d += a[c] != b[c];
  return d;
}

std::string bit_label(const std::vector<int>& point) {
  std::string label;
  label.reserve(point.size());
  for (int bit : point) label.push_back(bit ? '1' : '0');
  return label;
}

}  // namespace

HammingSubset make_hamming_subset(int dimension, std::vector<std::vector<int>> points) {
  if (dimension < 1) {
    throw std::invalid_argument("make_hamming_subset: dimension must be at least 1");
  }
  if (points.size() < 2) {
    throw std::invalid_argument("make_hamming_subset: need at least two points");
  }
  for (const auto& point : points) {
    if (static_cast<int>(point.size()) != dimension) {
      throw std::invalid_argument("make_hamming_subset: point length differs from dimension");
    }
    for (int bit : point) {
      if (bit != 0 && bit != 1) {
        throw std::invalid_argument("make_hamming_subset: coordinates must be 0 or 1");
      }
    }
  }

  const std::vector<int> origin = points[0];
  for (auto& point : points) {
    for (int c = 0; c < dimension; ++c) point[static_cast<std::size_t>(c)] ^= origin[static_cast<std::size_t>(c)];
  }

  std::set<std::vector<int>> seen;
  for (const auto& point : points) {
    if (!seen.insert(point).second) {
      throw std::invalid_argument("make_hamming_subset: points must be pairwise distinct");
    }
  }

  HammingSubset subset;
  subset.dimension = dimension;
  subset.points = std::move(points);
  const int m = subset.extra_point_count();
  subset.b_matrix.resize(m, dimension);
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < dimension; ++c) {
      subset.b_matrix(i, c) = subset.points[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(c)];
    }
  }
  return subset;
}

MetricSpace hamming_to_space(const HammingSubset& subset) {
  const auto count = static_cast<Eigen::Index>(subset.points.size());
  Matrix d = Matrix::Zero(count, count);
  std::vector<std::string> labels;
  labels.reserve(subset.points.size());
  for (Eigen::Index i = 0; i < count; ++i) {
    labels.push_back(bit_label(subset.points[static_cast<std::size_t>(i)]));
    for (Eigen::Index j = i + 1; j < count; ++j) {
      const int dist = hamming_distance(subset.points[static_cast<std::size_t>(i)],
                                        subset.points[static_cast<std::size_t>(j)]);
      d(i, j) = d(j, i) = static_cast<double>(dist);
    }
  }
  return validate_space(std::move(labels), std::move(d), MetricKind::Metric);
}

HammingIdentity hamming_determinant_identity(const HammingSubset& subset) {
  const int m = subset.extra_point_count();
  const int count = m + 1;

  IntMatrix bordered(count + 1, count + 1);
  bordered.setZero();
  for (int i = 1; i <= count; ++i) {
    bordered(0, i) = 1;
    bordered(i, 0) = 1;
  }
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const int dist = hamming_distance(subset.points[static_cast<std::size_t>(i)],
                                        subset.points[static_cast<std::size_t>(j)]);
      bordered(i + 1, j + 1) = dist;
      bordered(j + 1, i + 1) = dist;
    }
  }

  const IntMatrix gram = subset.b_matrix * subset.b_matrix.transpose();

  HammingIdentity out;
  out.lhs = det_exact_integer(bordered);
  const BigInt sign = (m % 2 == 1) ? 1 : -1;
  out.rhs = sign * (BigInt(1) << m) * det_exact_integer(gram);
  out.equal = out.lhs == out.rhs;
  return out;
}

MuruganCriterion murugan_criterion(const HammingSubset& subset) {
  const IntMatrix gram = subset.b_matrix * subset.b_matrix.transpose();
  MuruganCriterion out;
  out.affinely_independent = det_exact_integer(gram) != 0;
  out.mgr_exceeds_one = out.affinely_independent;
  return out;
}

}  // namespace mgrkit
