#include "mgrkit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

#include <json.hpp>

#include "mgrkit/generators.hpp"
#include "mgrkit/io.hpp"
#include "mgrkit/oracle.hpp"
#include "mgrkit/report.hpp"

namespace mgrkit {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

int resolve_threads(int requested, std::ostream& err) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MGRKIT_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 1) {
      err << "invalid MGRKIT_THREADS value '" << env << "'\n";
      return -1;
    }
    return static_cast<int>(value);
  }
  return 1;
}

bool write_report(const nlohmann::ordered_json& report, const RunOptions& opts,
                  std::ostream& out, std::ostream& err) {
  const std::string text = report.dump(2) + "\n";
  if (opts.output_path.empty()) {
    out << text;
    return true;
  }
  std::ofstream file(opts.output_path, std::ios::binary);
  if (!file) {
    err << "cannot open output file: " << opts.output_path << "\n";
    return false;
  }
  file << text;
  return true;
}

std::vector<double> residual_grid(const MgrConfig& config) {
  std::vector<double> grid;
  for (double p : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    if (p >= config.p_min && p <= config.p_max) grid.push_back(p);
  }
  return grid;
}

VerificationInfo build_verification(const MetricSpace& space, const MgrConfig& config,
                                    const MgrResult& result) {
  VerificationInfo info;
  info.oracle = mgr_oracle(space, config.p_min, config.p_max, config.scan_step, config.zero_tol);
  info.dichotomy = result.dichotomy;
  for (double p : residual_grid(config)) {
    IdentityResidual residual;
    residual.p = p;
    residual.cm_gram = check_cm_gram_identity(p_matrices(space, p));
    residual.bordered = bordered_det_residual(space, p);
    info.residuals.push_back(residual);
  }
  return info;
}

int run_compute(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.input_path.empty()) {
    err << "missing --input\n";
    return 1;
  }

  const auto started = Clock::now();
  ParsedInput parsed = parse_input(opts.input_path, opts.format, parse_kind_policy(opts.kind));
  MetricSpace space = std::holds_alternative<MetricSpace>(parsed)
                          ? std::get<MetricSpace>(std::move(parsed))
                          : hamming_to_space(std::get<HammingSubset>(parsed));

  PhaseTimings timings;
  timings.parse_ms = elapsed_ms(started);

  const std::string digest = input_digest(space.distances);
  const bool normalized_run = opts.normalize && space.point_count() > 1;
  if (normalized_run) space = normalized(space);

  MgrConfig config = opts.config;
  const int threads = resolve_threads(opts.threads, err);
  if (threads < 0) return 1;
  config.threads = threads;

  err << "loaded " << space.point_count() << "-point " << to_string(space.kind) << " space ("
      << digest << ")\n";

  const auto solve_started = Clock::now();
  const MgrResult result = mgr_compute(space, config);
  timings.solve_ms = elapsed_ms(solve_started);

  std::optional<VerificationInfo> verification;
  const bool want_verification = opts.with_verification || opts.command == "verify";
  if (want_verification) {
    const auto verify_started = Clock::now();
    verification = build_verification(space, config, result);
    timings.verify_ms = elapsed_ms(verify_started);
  }

  if (result.value) {
    err << "result: " << to_string(result.status) << ", value " << *result.value << " via "
        << to_string(result.method) << "\n";
  } else {
    err << "result: " << to_string(result.status) << " via " << to_string(result.method) << "\n";
  }

  timings.total_ms = elapsed_ms(started);
  if (!write_report(make_report(space, digest, normalized_run, result, verification, timings),
                    opts, out, err)) {
    return 1;
  }

  const bool undetermined_root =
      result.status == MgrStatus::Found && result.dichotomy == Dichotomy::Undetermined;
  if (opts.strict && (result.tangential_warning || undetermined_root)) {
    err << "strict mode: ambiguous numerical outcome\n";
    return 2;
  }
  return 0;
}

int run_generate(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.family.empty()) {
    err << "missing --family\n";
    return 1;
  }
  GeneratedSpace generated =
      make_family({opts.family, opts.size, opts.dimension, opts.seed});
  const MetricSpace space = std::holds_alternative<MetricSpace>(generated)
                                ? std::get<MetricSpace>(std::move(generated))
                                : hamming_to_space(std::get<HammingSubset>(generated));

  const std::string text = space_to_json(space);
  if (opts.output_path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream file(opts.output_path, std::ios::binary);
  if (!file) {
    err << "cannot open output file: " << opts.output_path << "\n";
    return 1;
  }
  file << text;
  return 0;
}

struct SuiteOutcome {
  int trials = 0;
  int passes = 0;
  double worst = 0.0;

  bool all_passed() const { return passes == trials; }

  nlohmann::ordered_json to_json() const {
    return {{"trials", trials}, {"passes", passes}, {"worst_residual", worst}};
  }
};

SuiteOutcome run_identity_trials(int trials, std::uint64_t seed, bool bordered) {
  SuiteOutcome outcome;
  SeededRng rng(seed);
  const double bound = bordered ? 1e-8 : 1e-9;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 1 + rng.uniform_int(0, 10);
    const auto space = random_semimetric(n, rng.next_u64());
    for (double p : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
      std::optional<double> residual;
      if (bordered) {
        residual = bordered_det_residual(space, p);
        if (!residual) continue;
      } else {
        residual = check_cm_gram_identity(p_matrices(space, p));
      }
      ++outcome.trials;
      outcome.worst = std::max(outcome.worst, *residual);
      if (*residual <= bound) ++outcome.passes;
    }
  }
  return outcome;
}

SuiteOutcome run_hamming_trials(int trials, std::uint64_t seed) {
  SuiteOutcome outcome;
  SeededRng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const int dimension = 2 + rng.uniform_int(0, 8);
    const int capacity = (1 << dimension) - 1;
    const int extra = 1 + rng.uniform_int(0, std::min(9, capacity - 1));
    const auto subset = random_hamming_subset(dimension, extra, rng.next_u64());
    const auto check = hamming_determinant_identity(subset);
    ++outcome.trials;
    if (check.equal) {
      ++outcome.passes;
    } else {
      outcome.worst = 1.0;
    }
  }
  return outcome;
}

SuiteOutcome run_agreement_trials(int trials, std::uint64_t seed, int threads) {
  SuiteOutcome outcome;
  SeededRng rng(seed);
  MgrConfig config;
  config.tol = 1e-7;
  config.threads = threads;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 2 + rng.uniform_int(0, 5);
    const auto space =
        random_semimetric(n, rng.next_u64(), UniformRange{1.0, 2.0}, true);

    config.method = MgrMethod::EigGram;
    const auto reference = mgr_compute(space, config);
    bool agreed = true;
    double spread = 0.0;
    for (MgrMethod method : {MgrMethod::DetCm, MgrMethod::DetGram, MgrMethod::Sanchez}) {
      config.method = method;
      const auto other = mgr_compute(space, config);
      if (other.status != reference.status) {
        agreed = false;
        continue;
      }
      if (reference.status == MgrStatus::Found) {
        const double gap = std::abs(*other.value - *reference.value);
        spread = std::max(spread, gap);
        if (gap > 10.0 * config.tol) agreed = false;
      }
    }
    ++outcome.trials;
    outcome.worst = std::max(outcome.worst, spread);
    if (agreed) ++outcome.passes;
  }
  return outcome;
}

int run_identity_suite(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  const int threads = resolve_threads(opts.threads, err);
  if (threads < 0) return 1;
  if (opts.trials < 1) {
    err << "--trials must be positive\n";
    return 1;
  }

  const auto started = Clock::now();
  nlohmann::ordered_json report;
  report["schema"] = 1;
  report["command"] = "identity-suite";
  report["seed"] = opts.seed;
  report["trials"] = opts.trials;

  const auto cm = run_identity_trials(opts.trials, opts.seed, false);
  const auto bordered = run_identity_trials(opts.trials, opts.seed + 1, true);
  const auto hamming = run_hamming_trials(opts.trials, opts.seed + 2);
  const auto agreement =
      run_agreement_trials(std::min(opts.trials, 20), opts.seed + 3, threads);

  report["suites"] = {{"cm_gram_identity", cm.to_json()},
                      {"bordered_identity", bordered.to_json()},
                      {"hamming_identity", hamming.to_json()},
                      {"method_agreement", agreement.to_json()}};
  const bool all_passed =
      cm.all_passed() && bordered.all_passed() && hamming.all_passed() && agreement.all_passed();
  report["all_passed"] = all_passed;
  report["elapsed_ms"] = elapsed_ms(started);

  err << "identity-suite: " << (all_passed ? "all suites passed" : "FAILURES present") << "\n";
  if (!write_report(report, opts, out, err)) return 1;
  return all_passed ? 0 : 2;
}

}  // namespace

int run_command(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    if (opts.command == "compute" || opts.command == "verify") {
      return run_compute(opts, out, err);
    }
    if (opts.command == "generate") return run_generate(opts, out, err);
    if (opts.command == "identity-suite") return run_identity_suite(opts, out, err);
    err << "unknown command '" << opts.command << "'\n";
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "invalid space: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mgrkit
