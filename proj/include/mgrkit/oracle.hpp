#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mgrkit/space.hpp"

namespace mgrkit {

// Verdict of the definition-level negative-type test at one exponent.
// margin is the largest eigenvalue of the distance form restricted to the
// zero-sum plane; at most ~0 when the property holds.
struct NegativeTypeVerdict {
  double p = 0.0;
  bool holds = false;
  double margin = 0.0;
  std::optional<Vector> witness;  // zero-sum coefficients with positive form value
};

// Spectral test of Q = P * D_p * P with P the orthogonal projector onto the
// zero-sum plane.  Q is assembled straight from the raw distances so this
// check shares nothing with the solver's Gramian route.
NegativeTypeVerdict negative_type_check(const MetricSpace& space, double p,
                                        double zero_tol = 1e-7);

// The quadratic form sum over d(x_i, x_j)^p * xi_i * xi_j; used to replay a
// witness against the original definition.
double negative_type_form(const MetricSpace& space, double p, const Vector& xi);

// Two equal-length tuples of point indices; repeats allowed.
struct SimplexSample {
  std::vector<int> xs;
  std::vector<int> ys;
};

struct RoundnessCheck {
  bool holds_on_samples = true;
  std::optional<SimplexSample> violating_sample;
};

// Tests, sample by sample, that twice the cross-tuple p-distance sum
// dominates the two within-tuple sums; returns the first violator.
RoundnessCheck generalised_roundness_check(const MetricSpace& space, double p,
                                           const std::vector<SimplexSample>& samples);

// Every (xs, ys) index-tuple pair of sizes 1..max_k.  Restricted to
// point_count <= 6 and max_k <= 3; the tuple count explodes beyond that.
std::vector<SimplexSample> all_simplex_samples(int point_count, int max_k);

// Seed-reproducible uniform tuples for spaces too large to enumerate.
std::vector<SimplexSample> random_simplex_samples(int point_count, int max_k, int count,
                                                  std::uint64_t seed);

struct OracleBracket {
  double p_low = 0.0;
  double p_high = 0.0;
  bool unbounded = false;  // negative type held at every sampled exponent
};

// Coarse grid scan of negative_type_check: the last holding exponent and the
// first failing one.  p_low stays 0 when even p_min fails; p_high is p_max
// (with the unbounded flag) when nothing fails.
OracleBracket mgr_oracle(const MetricSpace& space, double p_min, double p_max,
                         double coarse_step, double zero_tol = 1e-7);

}  // namespace mgrkit
