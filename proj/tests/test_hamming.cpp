#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "mgrkit/hamming.hpp"
#include "mgrkit/solver.hpp"

using namespace mgrkit;

namespace {

std::vector<int> from_mask(std::uint32_t mask, int dimension) {
  std::vector<int> point(static_cast<std::size_t>(dimension));
  for (int c = 0; c < dimension; ++c) point[static_cast<std::size_t>(c)] = (mask >> c) & 1u;
  return point;
}

HammingSubset subset_from_masks(int dimension, const std::vector<std::uint32_t>& masks) {
  std::vector<std::vector<int>> points;
  points.reserve(masks.size());
  for (std::uint32_t mask : masks) points.push_back(from_mask(mask, dimension));
  return make_hamming_subset(dimension, std::move(points));
}

}  // namespace

TEST_CASE("induced distances match hand-computed Hamming distances") {
  const auto pair = subset_from_masks(1, {0b0, 0b1});
  const auto pair_space = hamming_to_space(pair);
  CHECK(pair_space.distances(0, 1) == 1.0);
  CHECK(pair_space.distances(0, 0) == 0.0);

  const auto square = subset_from_masks(2, {0b00, 0b01, 0b10, 0b11});
  const auto square_space = hamming_to_space(square);
  CHECK(square_space.distances(1, 2) == 2.0);
  CHECK(square_space.distances(0, 3) == 2.0);
  CHECK(square_space.distances(0, 1) == 1.0);

  const auto triple = subset_from_masks(3, {0b000, 0b011, 0b110});
  const auto triple_space = hamming_to_space(triple);
  CHECK(triple_space.distances(0, 1) == 2.0);
  CHECK(triple_space.distances(0, 2) == 2.0);
  CHECK(triple_space.distances(1, 2) == 2.0);
  CHECK(triple_space.labels == std::vector<std::string>{"000", "110", "011"});
}

TEST_CASE("subsets are translated so the first point is the zero vector") {
  const auto shifted = subset_from_masks(3, {0b101, 0b100, 0b011});
  CHECK(shifted.points[0] == std::vector<int>{0, 0, 0});
  CHECK(shifted.b_matrix.rows() == 2);

  // Hamming distances are XOR-translation invariant, so the induced space
  // must match the one built from the untranslated points directly.
  const auto space = hamming_to_space(shifted);
  CHECK(space.distances(0, 1) == 1.0);  // 101 vs 100
  CHECK(space.distances(0, 2) == 2.0);  // 101 vs 011
  CHECK(space.distances(1, 2) == 3.0);  // 100 vs 011
}

TEST_CASE("determinant identity on the frozen examples") {
  const auto axes = subset_from_masks(2, {0b00, 0b01, 0b10});
  const auto axes_check = hamming_determinant_identity(axes);
  CHECK(axes_check.lhs == BigInt(-4));
  CHECK(axes_check.rhs == BigInt(-4));
  CHECK(axes_check.equal);

  const auto square = subset_from_masks(2, {0b00, 0b01, 0b10, 0b11});
  const auto square_check = hamming_determinant_identity(square);
  CHECK(square_check.lhs == BigInt(0));
  CHECK(square_check.rhs == BigInt(0));
  CHECK(square_check.equal);

  const auto pair = subset_from_masks(4, {0b0000, 0b1011});
  const auto pair_check = hamming_determinant_identity(pair);
  CHECK(pair_check.lhs == BigInt(6));  // 2 * |x|_1 with |x|_1 = 3
  CHECK(pair_check.equal);
}

TEST_CASE("determinant identity holds for every small cube subset") {
  for (int dimension : {2, 3}) {
    const auto full = (1u << dimension) - 1u;  // nonzero masks are 1..full
    for (std::uint32_t choice = 1; choice <= (1u << full) - 1u; ++choice) {
      std::vector<std::uint32_t> masks = {0};
      for (std::uint32_t bit = 0; bit < full; ++bit) {
        if ((choice >> bit) & 1u) masks.push_back(bit + 1);
      }
      const auto check = hamming_determinant_identity(subset_from_masks(dimension, masks));
      CHECK(check.equal);
    }
  }
}

TEST_CASE("determinant identity holds for random larger subsets") {
  std::mt19937_64 rng(20240915);
  for (int trial = 0; trial < 200; ++trial) {
    const int dimension = 2 + static_cast<int>(rng() % 9);   // up to 10
    const int extra = 1 + static_cast<int>(rng() % 10);      // up to 10 nonzero points
    std::set<std::uint32_t> masks;
    const std::uint32_t limit = (dimension >= 31) ? 0xffffffffu : ((1u << dimension) - 1u);
    while (static_cast<int>(masks.size()) < std::min(extra + 1, static_cast<int>(limit) + 1)) {
      masks.insert(static_cast<std::uint32_t>(rng()) & limit);
    }
    std::vector<std::uint32_t> ordered(masks.begin(), masks.end());
    const auto check = hamming_determinant_identity(subset_from_masks(dimension, ordered));
    CHECK(check.equal);
  }
}

TEST_CASE("independence criterion on the frozen examples") {
  const auto axes = murugan_criterion(subset_from_masks(2, {0b00, 0b01, 0b10}));
  CHECK(axes.affinely_independent);
  CHECK(axes.mgr_exceeds_one);

  const auto square = murugan_criterion(subset_from_masks(2, {0b00, 0b01, 0b10, 0b11}));
  CHECK_FALSE(square.affinely_independent);
  CHECK_FALSE(square.mgr_exceeds_one);

  const auto pair = murugan_criterion(subset_from_masks(5, {0b00000, 0b10110}));
  CHECK(pair.affinely_independent);
}

TEST_CASE("more extra points than dimensions forces dependence") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int dimension = 2 + static_cast<int>(rng() % 4);
    std::set<std::uint32_t> masks = {0};
    const std::uint32_t limit = (1u << dimension) - 1u;
    while (masks.size() < static_cast<std::size_t>(dimension) + 2 &&
           masks.size() < limit + 1u) {
      masks.insert(static_cast<std::uint32_t>(rng()) & limit);
    }
    if (masks.size() < static_cast<std::size_t>(dimension) + 2) continue;
    std::vector<std::uint32_t> ordered(masks.begin(), masks.end());
    CHECK_FALSE(murugan_criterion(subset_from_masks(dimension, ordered)).affinely_independent);
  }
}

TEST_CASE("independence flag agrees with the computed roundness threshold") {
  MgrConfig config;
  config.method = MgrMethod::EigGram;

  // Coordinate axes in the plane form a 3-point path: threshold exactly 2.
  const auto axes = subset_from_masks(2, {0b00, 0b01, 0b10});
  const auto axes_result = mgr_compute(hamming_to_space(axes), config);
  REQUIRE(axes_result.status == MgrStatus::Found);
  CHECK(*axes_result.value == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(murugan_criterion(axes).mgr_exceeds_one);

  // The full 2-cube is the 4-cycle: threshold exactly 1.
  const auto square = subset_from_masks(2, {0b00, 0b01, 0b10, 0b11});
  const auto square_result = mgr_compute(hamming_to_space(square), config);
  REQUIRE(square_result.status == MgrStatus::Found);
  CHECK(*square_result.value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK_FALSE(murugan_criterion(square).mgr_exceeds_one);

  // Coordinate axes in 3-space form a 4-point star: threshold log2(3).
  const auto star = subset_from_masks(3, {0b000, 0b001, 0b010, 0b100});
  const auto star_result = mgr_compute(hamming_to_space(star), config);
  REQUIRE(star_result.status == MgrStatus::Found);
  CHECK(*star_result.value == doctest::Approx(1.5849625007211563).epsilon(1e-7));
  CHECK(murugan_criterion(star).mgr_exceeds_one);
}

TEST_CASE("random subsets: independence matches where the threshold sits") {
  std::mt19937_64 rng(1234);
  MgrConfig config;
  config.method = MgrMethod::EigGram;
  for (int trial = 0; trial < 12; ++trial) {
    const int dimension = 2 + static_cast<int>(rng() % 3);
    const int extra = 2 + static_cast<int>(rng() % 3);
    std::set<std::uint32_t> masks = {0};
    const std::uint32_t limit = (1u << dimension) - 1u;
    while (masks.size() < static_cast<std::size_t>(extra) + 1 && masks.size() < limit + 1u) {
      masks.insert(static_cast<std::uint32_t>(rng()) & limit);
    }
    std::vector<std::uint32_t> ordered(masks.begin(), masks.end());
    const auto subset = subset_from_masks(dimension, ordered);
    const auto result = mgr_compute(hamming_to_space(subset), config);

    if (murugan_criterion(subset).mgr_exceeds_one) {
      if (result.status == MgrStatus::Found) CHECK(*result.value > 1.0 + 1e-6);
    } else {
      REQUIRE(result.status == MgrStatus::Found);
      CHECK(*result.value == doctest::Approx(1.0).epsilon(1e-7));
    }
  }
}

TEST_CASE("invalid subsets are rejected") {
  CHECK_THROWS_AS(make_hamming_subset(2, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_hamming_subset(2, {{0, 0}, {0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_hamming_subset(2, {{0, 0}, {1, 0}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_hamming_subset(2, {{0, 0}, {0, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_hamming_subset(2, {{0, 0}, {0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(make_hamming_subset(0, {{}, {}}), std::invalid_argument);
}
