#pragma once

#include <vector>

#include "mgrkit/numerics.hpp"
#include "mgrkit/space.hpp"

namespace mgrkit {

// A finite subset of the n-dimensional Hamming cube, stored so that the first
// point is the zero vector. b_matrix holds the remaining m points as rows.
struct HammingSubset {
  int dimension = 0;
  std::vector<std::vector<int>> points;
  IntMatrix b_matrix;

  int extra_point_count() const { return static_cast<int>(points.size()) - 1; }
};

// Validates 0/1 coordinates of uniform length and pairwise-distinct points,
// then XOR-translates everything by the first point so it becomes the zero
// vector (Hamming distances are unchanged by that translation).
HammingSubset make_hamming_subset(int dimension, std::vector<std::vector<int>> points);

// The induced metric space: pairwise Hamming distances, bitstring labels.
MetricSpace hamming_to_space(const HammingSubset& subset);

// Both sides of the exact relation det(M_1) = (-1)^(m-1) * 2^m * det(B B^T)
// between the bordered distance determinant at exponent one and the Gram
// determinant of the coordinate rows. Computed in exact integer arithmetic.
struct HammingIdentity {
  BigInt lhs;
  BigInt rhs;
  bool equal = false;
};

HammingIdentity hamming_determinant_identity(const HammingSubset& subset);

// Murugan's criterion: the subset has roundness threshold strictly above one
// exactly when the points are affinely independent, which (with the zero
// vector present) reduces to det(B B^T) != 0.
struct MuruganCriterion {
  bool affinely_independent = false;
  bool mgr_exceeds_one = false;
};

MuruganCriterion murugan_criterion(const HammingSubset& subset);

}  // namespace mgrkit
