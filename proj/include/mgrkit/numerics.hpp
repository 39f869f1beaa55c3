#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>

namespace mgrkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using BigInt = boost::multiprecision::cpp_int;

// A pivot whose magnitude falls below singular_tol times the largest absolute
// entry of the input matrix is treated as an exact zero.
inline constexpr double kSingularTol = 1e-12;

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Determinant in sign/log form so that magnitudes beyond double range stay
// representable.  sign is -1, 0 or +1; log_magnitude is ln|det| and is
// meaningful only when sign != 0.
struct SignLogDet {
  int sign = 0;
  double log_magnitude = 0.0;

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }
};

// LU factorisation with partial pivoting.  Requires a square matrix with
// finite entries.  The 0x0 determinant is +1.
SignLogDet det_sign_log(const Matrix& a);

// Exact integer determinant via fraction-free Gaussian elimination.
BigInt det_exact_integer(const IntMatrix& a);

// Solves a x = rhs through the same pivoted elimination as det_sign_log.
// Throws SingularMatrixError when a pivot falls under the singular threshold.
Vector solve_linear(const Matrix& a, const Vector& rhs);

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // column k pairs with values[k]
};

// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations
// with a fixed sweep order, so repeated runs produce identical bits.
// Requires order >= 1 and symmetry up to 1e-12 absolute.
SymmetricEigen symmetric_eigen(const Matrix& a);

double symmetric_min_eigenvalue(const Matrix& a);

}  // namespace mgrkit
