#include "mgrkit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

namespace mgrkit {
namespace {

void require_square_finite(const Matrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(who) + ": matrix entries must be finite");
  }
}

struct LuFactors {
  Matrix lu;
  std::vector<Eigen::Index> pivot;
  int swap_sign = 1;
  bool singular = false;
};

LuFactors lu_factor(const Matrix& a) {
  const Eigen::Index n = a.rows();
  LuFactors f{a, std::vector<Eigen::Index>(static_cast<std::size_t>(n)), 1, false};
  if (n == 0) return f;

  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    f.singular = true;
    return f;
  }
  const double threshold = kSingularTol * scale;

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    double best = std::abs(f.lu(k, k));
    for (Eigen::Index r = k + 1; r < n; ++r) {
      const double cand = std::abs(f.lu(r, k));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    f.pivot[static_cast<std::size_t>(k)] = piv;
    if (piv != k) {
      f.lu.row(k).swap(f.lu.row(piv));
      f.swap_sign = -f.swap_sign;
    }
    if (std::abs(f.lu(k, k)) < threshold) {
      f.singular = true;
      return f;
    }
    for (Eigen::Index r = k + 1; r < n; ++r) {
      f.lu(r, k) /= f.lu(k, k);
      if (f.lu(r, k) != 0.0) {
        f.lu.row(r).tail(n - k - 1) -= f.lu(r, k) * f.lu.row(k).tail(n - k - 1);
      }
    }
  }
  return f;
}

}  // namespace

SignLogDet det_sign_log(const Matrix& a) {
  require_square_finite(a, "det_sign_log");
  const Eigen::Index n = a.rows();
  if (n == 0) return {1, 0.0};

  const LuFactors f = lu_factor(a);
  if (f.singular) return {0, 0.0};

  SignLogDet result{f.swap_sign, 0.0};
  for (Eigen::Index k = 0; k < n; ++k) {
    const double d = f.lu(k, k);
    if (d < 0.0) result.sign = -result.sign;
    result.log_magnitude += std::log(std::abs(d));
  }
  return result;
}

Vector solve_linear(const Matrix& a, const Vector& rhs) {
  require_square_finite(a, "solve_linear");
  if (rhs.size() != a.rows()) {
    throw std::invalid_argument("solve_linear: dimension mismatch");
  }
  if (!rhs.allFinite()) {
    throw std::invalid_argument("solve_linear: rhs entries must be finite");
  }

  const Eigen::Index n = a.rows();
  if (n == 0) return Vector(0);

  const LuFactors f = lu_factor(a);
  if (f.singular) {
    throw SingularMatrixError("solve_linear: matrix is singular within tolerance");
  }

  // Row exchanges must all land before substitution: the stored multipliers
  // sit in their final positions, after every later swap.
  Vector x = rhs;
  for (Eigen::Index k = 0; k < n; ++k) {
    std::swap(x(k), x(f.pivot[static_cast<std::size_t>(k)]));
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index r = k + 1; r < n; ++r) {
      x(r) -= f.lu(r, k) * x(k);
    }
  }
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    double acc = x(k);
    for (Eigen::Index j = k + 1; j < n; ++j) {
      acc -= f.lu(k, j) * x(j);
    }
    x(k) = acc / f.lu(k, k);
  }
  return x;
}

BigInt det_exact_integer(const IntMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("det_exact_integer: matrix must be square");
  }
  const Eigen::Index n = a.rows();
  if (n == 0) return 1;

  std::vector<std::vector<BigInt>> m(static_cast<std::size_t>(n),
                                     std::vector<BigInt>(static_cast<std::size_t>(n)));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a(i, j);
    }
  }

  // Bareiss fraction-free elimination: every division below is exact.
  const auto un = static_cast<std::size_t>(n);
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < un; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < un && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == un) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < un; ++i) {
      for (std::size_t j = k + 1; j < un; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[un - 1][un - 1];
}

SymmetricEigen symmetric_eigen(const Matrix& a) {
  require_square_finite(a, "symmetric_eigen");
  const Eigen::Index n = a.rows();
  if (n < 1) {
    throw std::invalid_argument("symmetric_eigen: matrix order must be at least 1");
  }
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("symmetric_eigen: matrix must be symmetric");
  }

  Matrix w = 0.5 * (a + a.transpose());
  Matrix v = Matrix::Identity(n, n);

  const double frob = w.norm();
  const double off_target = 1e-14 * frob;

  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off2 = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        off2 += 2.0 * w(p, q) * w(p, q);
      }
    }
    if (std::sqrt(off2) <= off_target) break;

    // One cyclic sweep over the strict upper triangle in row-major order.
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = w(p, q);
        if (apq == 0.0) continue;

        const double theta = (w(q, q) - w(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        w(p, p) -= t * apq;
        w(q, q) += t * apq;
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double wrp = w(r, p);
          const double wrq = w(r, q);
          w(r, p) = wrp - s * (wrq + tau * wrp);
          w(p, r) = w(r, p);
          w(r, q) = wrq + s * (wrp - tau * wrq);
          w(q, r) = w(r, q);
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&w](Eigen::Index lhs, Eigen::Index rhs) { return w(lhs, lhs) < w(rhs, rhs); });

  SymmetricEigen result;
  result.values = Vector(n);
  result.vectors = Matrix(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    result.values(k) = w(src, src);
    result.vectors.col(k) = v.col(src);
  }
  return result;
}

double symmetric_min_eigenvalue(const Matrix& a) {
  return symmetric_eigen(a).values(0);
}

}  // namespace mgrkit
