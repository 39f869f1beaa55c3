#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgrkit/oracle.hpp"
#include "mgrkit/solver.hpp"
#include "mgrkit/space.hpp"

namespace mgrkit {

// Identity residuals sampled at one exponent: the scaled-determinant match
// between the bordered and Gramian routes, and (where the distance power
// matrix is invertible) the factored bordered-determinant relation.
struct IdentityResidual {
  double p = 0.0;
  double cm_gram = 0.0;
  std::optional<double> bordered;
};

struct VerificationInfo {
  OracleBracket oracle;
  std::optional<Dichotomy> dichotomy;
  std::vector<IdentityResidual> residuals;
};

struct PhaseTimings {
  double parse_ms = 0.0;
  double solve_ms = 0.0;
  double verify_ms = 0.0;
  double total_ms = 0.0;
};

nlohmann::ordered_json result_to_json(const MgrResult& result);

// The machine-readable run report ("schema": 1). Field order is stable;
// reruns with the same input and flags differ only in the timing block.
nlohmann::ordered_json make_report(const MetricSpace& space, const std::string& digest,
                                   bool normalized, const MgrResult& result,
                                   const std::optional<VerificationInfo>& verification,
                                   const PhaseTimings& timings);

}  // namespace mgrkit
