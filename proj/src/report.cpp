#include "mgrkit/report.hpp"

namespace mgrkit {

nlohmann::ordered_json result_to_json(const MgrResult& result) {
  nlohmann::ordered_json out;
  out["status"] = to_string(result.status);
  out["method"] = to_string(result.method);
  if (result.value) out["value"] = *result.value;
  if (result.bracket) out["bracket"] = {result.bracket->first, result.bracket->second};
  if (result.dichotomy) out["dichotomy"] = to_string(*result.dichotomy);
  out["tangential_warning"] = result.tangential_warning;
  auto trace = nlohmann::ordered_json::array();
  for (const MgrSample& sample : result.diagnostics) {
    trace.push_back({{"p", sample.p}, {"quantity", sample.quantity}});
  }
  out["diagnostics"] = std::move(trace);
  return out;
}

nlohmann::ordered_json make_report(const MetricSpace& space, const std::string& digest,
                                   bool normalized, const MgrResult& result,
                                   const std::optional<VerificationInfo>& verification,
                                   const PhaseTimings& timings) {
  nlohmann::ordered_json report;
  report["schema"] = 1;
  report["input_digest"] = digest;

  const int n1 = space.point_count();
  double min_distance = 0.0;
  double max_distance = 0.0;
  if (n1 > 1) {
    min_distance = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n1; ++i) {
      for (int j = i + 1; j < n1; ++j) {
        min_distance = std::min(min_distance, space.distances(i, j));
        max_distance = std::max(max_distance, space.distances(i, j));
      }
    }
  }
  report["space"] = {{"points", n1},
                     {"metric_kind", to_string(space.kind)},
                     {"min_distance", min_distance},
                     {"max_distance", max_distance},
                     {"normalized", normalized}};

  report["result"] = result_to_json(result);

  if (verification) {
    nlohmann::ordered_json check;
    if (verification->oracle.unbounded) {
      check["oracle_bracket"] = nullptr;
      check["oracle_unbounded"] = true;
    } else {
      check["oracle_bracket"] = {verification->oracle.p_low, verification->oracle.p_high};
      check["oracle_unbounded"] = false;
    }
    if (verification->dichotomy) check["dichotomy"] = to_string(*verification->dichotomy);
    auto residuals = nlohmann::ordered_json::array();
    for (const IdentityResidual& residual : verification->residuals) {
      nlohmann::ordered_json entry{{"p", residual.p}, {"cm_gram", residual.cm_gram}};
      entry["bordered"] = residual.bordered ? nlohmann::ordered_json(*residual.bordered)
                                            : nlohmann::ordered_json(nullptr);
      residuals.push_back(std::move(entry));
    }
    check["identity_residuals"] = std::move(residuals);
    report["verification"] = std::move(check);
  }

  report["timing_ms"] = {{"parse", timings.parse_ms},
                         {"solve", timings.solve_ms},
                         {"verify", timings.verify_ms},
                         {"total", timings.total_ms}};
  return report;
}

}  // namespace mgrkit
