#include "mgrkit/space.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace mgrkit {

const char* to_string(MetricKind kind) {
  return kind == MetricKind::Metric ? "metric" : "semi-metric";
}

std::string SpaceViolation::message() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::NonFinite:
      out << "distance (" << i << "," << j << ") is not finite";
      break;
    case Kind::Asymmetric:
      out << "distances (" << i << "," << j << ") and (" << j << "," << i
          << ") differ by " << detail;
      break;
    case Kind::NonzeroDiagonal:
      out << "diagonal entry (" << i << "," << i << ") is " << detail << ", expected 0";
      break;
    case Kind::NonPositiveOffDiagonal:
      out << "distance (" << i << "," << j << ") is " << detail
          << "; distinct points need positive distance";
      break;
    case Kind::TriangleInequality:
      out << "triangle violation: d(" << i << "," << j << ") = " << detail
          << " exceeds d(" << i << "," << k << ") + d(" << k << "," << j << ")";
      break;
  }
  return out.str();
}

namespace {

std::string join_messages(const std::vector<SpaceViolation>& violations) {
  std::ostringstream out;
  out << "invalid space (" << violations.size() << " violation"
      << (violations.size() == 1 ? "" : "s") << "): ";
  for (std::size_t v = 0; v < violations.size(); ++v) {
    if (v > 0) out << "; ";
    if (v == 4 && violations.size() > 5) {
      out << "... " << violations.size() - v << " more";
      break;
    }
    out << violations[v].message();
  }
  return out.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<SpaceViolation> violations)
    : std::invalid_argument(join_messages(violations)), violations_(std::move(violations)) {}

std::vector<SpaceViolation> check_space(const Matrix& distances, MetricKind kind) {
  if (distances.rows() != distances.cols()) {
    throw std::invalid_argument("check_space: distance matrix must be square");
  }
  const Eigen::Index n1 = distances.rows();
  std::vector<SpaceViolation> violations;

  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = 0; j < n1; ++j) {
      if (!std::isfinite(distances(i, j))) {
        violations.push_back({SpaceViolation::Kind::NonFinite, static_cast<int>(i),
                              static_cast<int>(j), 0, distances(i, j)});
      }
    }
  }
  if (!violations.empty()) return violations;

  for (Eigen::Index i = 0; i < n1; ++i) {
    if (distances(i, i) != 0.0) {
      violations.push_back({SpaceViolation::Kind::NonzeroDiagonal, static_cast<int>(i),
                            static_cast<int>(i), 0, distances(i, i)});
    }
    for (Eigen::Index j = i + 1; j < n1; ++j) {
      if (distances(i, j) != distances(j, i)) {
        violations.push_back({SpaceViolation::Kind::Asymmetric, static_cast<int>(i),
                              static_cast<int>(j), 0,
                              std::abs(distances(i, j) - distances(j, i))});
      }
      if (!(distances(i, j) > 0.0)) {
        violations.push_back({SpaceViolation::Kind::NonPositiveOffDiagonal, static_cast<int>(i),
                              static_cast<int>(j), 0, distances(i, j)});
      }
    }
  }
  if (!violations.empty() || kind == MetricKind::SemiMetric) return violations;

  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = i + 1; j < n1; ++j) {
      for (Eigen::Index k = 0; k < n1; ++k) {
        if (k == i || k == j) continue;
        const double around = distances(i, k) + distances(k, j);
        if (distances(i, j) - around > 1e-12 * around) {
          violations.push_back({SpaceViolation::Kind::TriangleInequality, static_cast<int>(i),
                                static_cast<int>(j), static_cast<int>(k), distances(i, j)});
        }
      }
    }
  }
  return violations;
}

MetricSpace validate_space(std::vector<std::string> labels, Matrix distances, MetricKind kind) {
  if (static_cast<Eigen::Index>(labels.size()) != distances.rows()) {
    throw std::invalid_argument("validate_space: label count must match matrix order");
  }
  auto violations = check_space(distances, kind);
  if (!violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  return MetricSpace{std::move(labels), std::move(distances), kind};
}

MetricSpace make_space(Matrix distances, MetricKind kind) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(distances.rows()));
  for (Eigen::Index i = 0; i < distances.rows(); ++i) {
    labels.push_back("x" + std::to_string(i));
  }
  return validate_space(std::move(labels), std::move(distances), kind);
}

MetricSpace with_base_point(const MetricSpace& space, int base) {
  const int n1 = space.point_count();
  if (base < 0 || base >= n1) {
    throw std::invalid_argument("with_base_point: index out of range");
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n1));
  order.push_back(base);
  for (int i = 0; i < n1; ++i) {
    if (i != base) order.push_back(i);
  }

  MetricSpace out;
  out.kind = space.kind;
  out.labels.reserve(static_cast<std::size_t>(n1));
  out.distances = Matrix(n1, n1);
  for (int i = 0; i < n1; ++i) {
    out.labels.push_back(space.labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
    for (int j = 0; j < n1; ++j) {
      out.distances(i, j) = space.distances(order[static_cast<std::size_t>(i)],
                                            order[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

MetricSpace normalized(const MetricSpace& space) {
  if (space.point_count() < 2) return space;
  const double scale = space.distances.maxCoeff();
  MetricSpace out = space;
  out.distances /= scale;
  return out;
}

PMatrices p_matrices(const MetricSpace& space, double p) {
  if (!(p > 0.0)) {
    throw std::invalid_argument("p_matrices: exponent must be positive");
  }
  const Eigen::Index n1 = space.distances.rows();
  const Eigen::Index n = n1 - 1;

  PMatrices pm;
  pm.p = p;
  pm.d_p = Matrix::Zero(n1, n1);
  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = i + 1; j < n1; ++j) {
      const double d = space.distances(i, j);
      const double dp = (p == 1.0) ? d : std::pow(d, p);
      pm.d_p(i, j) = dp;
      pm.d_p(j, i) = dp;
    }
  }

  pm.m_p = Matrix::Zero(n1 + 1, n1 + 1);
  pm.m_p(0, 0) = 0.0;
  pm.m_p.row(0).tail(n1).setOnes();
  pm.m_p.col(0).tail(n1).setOnes();
  pm.m_p.bottomRightCorner(n1, n1) = pm.d_p;

  pm.g_p = Matrix(n, n);
  for (Eigen::Index i = 1; i < n1; ++i) {
    for (Eigen::Index j = i; j < n1; ++j) {
      const double g = 0.5 * (pm.d_p(i, 0) + pm.d_p(j, 0) - pm.d_p(i, j));
      pm.g_p(i - 1, j - 1) = g;
      pm.g_p(j - 1, i - 1) = g;
    }
  }
  return pm;
}

double check_cm_gram_identity(const PMatrices& pm) {
  const Eigen::Index n = pm.g_p.rows();
  const SignLogDet det_g = det_sign_log(pm.g_p);
  const SignLogDet det_m = det_sign_log(pm.m_p);

  const int parity = (n % 2 == 0) ? -1 : 1;  // (-1)^(n+1)
  SignLogDet scaled{parity * det_m.sign,
                    det_m.log_magnitude - static_cast<double>(n) * std::log(2.0)};

  const double lhs = det_g.value();
  const double rhs = scaled.value();
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

}  // namespace mgrkit
