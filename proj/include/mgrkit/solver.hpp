#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mgrkit/space.hpp"

namespace mgrkit {

enum class MgrMethod { EigGram, DetCm, DetGram, Sanchez };
enum class MgrStatus { Found, AtLeastPMax, BelowPMin };
enum class Dichotomy { DSingular, InnerProductZero, Undetermined };

const char* to_string(MgrMethod method);
const char* to_string(MgrStatus status);
const char* to_string(Dichotomy dichotomy);
std::optional<MgrMethod> parse_method(std::string_view name);

struct MgrConfig {
  MgrMethod method = MgrMethod::EigGram;
  double p_min = 1e-3;
  double p_max = 32.0;
  double scan_step = 0.05;
  double tol = 1e-9;
  double zero_tol = 1e-7;
  int threads = 1;
};

// One sampled grid point.  quantity is the method's crossing quantity: the
// smallest Gramian eigenvalue for eig-gram, a sign-adjusted determinant for
// the det methods, and the inner product (or the determinant when the
// p-distance matrix is singular) for sanchez.
struct MgrSample {
  double p = 0.0;
  double quantity = 0.0;
};

struct MgrResult {
  MgrStatus status = MgrStatus::AtLeastPMax;
  std::optional<double> value;
  MgrMethod method = MgrMethod::EigGram;
  std::optional<std::pair<double, double>> bracket;
  std::optional<Dichotomy> dichotomy;
  std::vector<MgrSample> diagnostics;
  bool tangential_warning = false;
};

// Scans the exponent grid p_min, p_min + scan_step, ..., p_max for the first
// point where the method's quantity stops being positive, then bisects that
// interval down to width tol.  The supremum of valid exponents is reported as
// the bracket midpoint.  No crossing by p_max yields at_least_p_max; a
// quantity that is already non-positive at p_min yields below_p_min.
MgrResult mgr_compute(const MetricSpace& space, const MgrConfig& config = {});

struct SanchezEvaluation {
  double p = 0.0;
  SignLogDet det_dp;
  bool dp_invertible = false;
  std::optional<double> inner_product;  // present iff dp_invertible
};

// Evaluates det(d_p) and the inner product of d_p^{-1} * ones with ones.
SanchezEvaluation sanchez_evaluate(const MetricSpace& space, double p);

// Decides which of the two root mechanisms applies at a computed root: the
// p-distance matrix turning singular with a zero-sum kernel vector, or the
// inner product vanishing while the matrix stays invertible.  p_tol is the
// accuracy of p_root (the bisection tolerance); the classifier may probe
// exponents within a small multiple of it around the root.
Dichotomy classify_dichotomy(const MetricSpace& space, double p_root, double zero_tol = 1e-7,
                             double p_tol = 1e-9);

// Smallest eigenvalue of the Gramian at exponent p; requires 2 or more points.
double min_gram_eigenvalue(const MetricSpace& space, double p);

// Relative residual of det(m_p) + det(d_p) * inner_product, which is zero in
// exact arithmetic whenever d_p is invertible.  Absent when d_p is singular.
std::optional<double> bordered_det_residual(const MetricSpace& space, double p);

}  // namespace mgrkit
