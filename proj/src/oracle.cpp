#include "mgrkit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace mgrkit {
namespace {

double pow_p(double d, double p) { return p == 1.0 ? d : std::pow(d, p); }

Matrix power_matrix(const MetricSpace& space, double p) {
  const Eigen::Index n1 = space.distances.rows();
  Matrix dp = Matrix::Zero(n1, n1);
  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = i + 1; j < n1; ++j) {
      const double v = pow_p(space.distances(i, j), p);
      dp(i, j) = v;
      dp(j, i) = v;
    }
  }
  return dp;
}

void require_positive_p(double p, const char* who) {
  if (!(p > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": exponent must be positive");
  }
}

void require_sample(const MetricSpace& space, const SimplexSample& sample) {
  if (sample.xs.empty() || sample.xs.size() != sample.ys.size()) {
    throw std::invalid_argument(
        "generalised_roundness_check: sample tuples must be nonempty and equal length");
  }
  const int n1 = space.point_count();
  for (const auto& tuple : {sample.xs, sample.ys}) {
    for (int index : tuple) {
      if (index < 0 || index >= n1) {
        throw std::invalid_argument("generalised_roundness_check: point index out of range");
      }
    }
  }
}

}  // namespace

NegativeTypeVerdict negative_type_check(const MetricSpace& space, double p, double zero_tol) {
  require_positive_p(p, "negative_type_check");
  if (!(zero_tol > 0.0)) {
    throw std::invalid_argument("negative_type_check: zero_tol must be positive");
  }

  const Eigen::Index n1 = space.distances.rows();
  const Matrix dp = power_matrix(space, p);
  const Matrix projector =
      Matrix::Identity(n1, n1) - Matrix::Constant(n1, n1, 1.0 / static_cast<double>(n1));
  const Matrix product = projector * dp * projector;
  const Matrix q = 0.5 * (product + product.transpose());

  const SymmetricEigen eig = symmetric_eigen(q);
  const double top = eig.values(n1 - 1);
  const double scale = 1.0 + q.cwiseAbs().maxCoeff();

  NegativeTypeVerdict verdict;
  verdict.p = p;
  verdict.margin = top;
  verdict.holds = top <= zero_tol * scale;
  if (!verdict.holds) {
    Vector xi = eig.vectors.col(n1 - 1);
    xi.array() -= xi.mean();
    verdict.witness = std::move(xi);
  }
  return verdict;
}

double negative_type_form(const MetricSpace& space, double p, const Vector& xi) {
  require_positive_p(p, "negative_type_form");
  const Eigen::Index n1 = space.distances.rows();
  if (xi.size() != n1) {
    throw std::invalid_argument("negative_type_form: coefficient length mismatch");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = 0; j < n1; ++j) {
      if (i == j) continue;
      total += pow_p(space.distances(i, j), p) * xi(i) * xi(j);
    }
  }
  return total;
}

RoundnessCheck generalised_roundness_check(const MetricSpace& space, double p,
                                           const std::vector<SimplexSample>& samples) {
  require_positive_p(p, "generalised_roundness_check");

  RoundnessCheck out;
  for (const SimplexSample& sample : samples) {
    require_sample(space, sample);
    const std::size_t k = sample.xs.size();
    double within = 0.0;
    double across = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        within += pow_p(space.distances(sample.xs[i], sample.xs[j]), p);
        within += pow_p(space.distances(sample.ys[i], sample.ys[j]), p);
        across += pow_p(space.distances(sample.xs[i], sample.ys[j]), p);
      }
    }
    const double rhs = 2.0 * across;
    if (within > rhs + 1e-12 * std::max({1.0, within, rhs})) {
      out.holds_on_samples = false;
      out.violating_sample = sample;
      return out;
    }
  }
  return out;
}

std::vector<SimplexSample> all_simplex_samples(int point_count, int max_k) {
  if (point_count < 1 || point_count > 6 || max_k < 1 || max_k > 3) {
    throw std::invalid_argument(
        "all_simplex_samples: exhaustive enumeration is limited to 6 points and k <= 3");
  }

  std::vector<SimplexSample> samples;
  std::vector<int> tuple;
  std::vector<std::vector<int>> tuples;
  for (int k = 1; k <= max_k; ++k) {
    tuples.clear();
    tuple.assign(static_cast<std::size_t>(k), 0);
    while (true) {
      tuples.push_back(tuple);
      int pos = k - 1;
      while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == point_count - 1) {
        tuple[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++tuple[static_cast<std::size_t>(pos)];
    }
    for (const auto& xs : tuples) {
      for (const auto& ys : tuples) {
        samples.push_back({xs, ys});
      }
    }
  }
  return samples;
}

std::vector<SimplexSample> random_simplex_samples(int point_count, int max_k, int count,
                                                  std::uint64_t seed) {
  if (point_count < 1 || max_k < 1 || count < 0) {
    throw std::invalid_argument("random_simplex_samples: invalid parameters");
  }
  std::mt19937_64 rng(seed);
  const auto next_index = [&rng, point_count] {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(point_count));
  };

  std::vector<SimplexSample> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    const auto k = static_cast<std::size_t>(1 + rng() % static_cast<std::uint64_t>(max_k));
    SimplexSample sample;
    sample.xs.resize(k);
    sample.ys.resize(k);
    for (std::size_t i = 0; i < k; ++i) sample.xs[i] = next_index();
    for (std::size_t i = 0; i < k; ++i) sample.ys[i] = next_index();
    samples.push_back(std::move(sample));
  }
  return samples;
}

OracleBracket mgr_oracle(const MetricSpace& space, double p_min, double p_max, double coarse_step,
                         double zero_tol) {
  if (!(p_min > 0.0) || !(p_min < p_max) || !(coarse_step > 0.0)) {
    throw std::invalid_argument("mgr_oracle: need 0 < p_min < p_max and a positive step");
  }

  OracleBracket bracket;
  bracket.p_low = 0.0;
  for (std::size_t i = 0;; ++i) {
    double p = p_min + static_cast<double>(i) * coarse_step;
    const bool last = p >= p_max - 1e-12 * coarse_step;
    if (last) p = p_max;
    if (!negative_type_check(space, p, zero_tol).holds) {
      bracket.p_high = p;
      return bracket;
    }
    bracket.p_low = p;
    if (last) break;
  }
  bracket.p_high = std::numeric_limits<double>::infinity();
  bracket.unbounded = true;
  return bracket;
}

}  // namespace mgrkit
