#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "mgrkit/solver.hpp"

namespace mgrkit {

// Options for one CLI invocation. config carries the solver flags with their
// library defaults; threads == 0 means "not given", which falls back to the
// MGRKIT_THREADS environment variable and then to 1.
struct RunOptions {
  std::string command;
  std::string input_path;
  std::string format = "csv";
  std::string kind = "auto";
  MgrConfig config;
  int threads = 0;
  bool normalize = false;
  bool with_verification = false;
  bool strict = false;
  std::uint64_t seed = 0;
  std::string output_path;

  // generate
  std::string family;
  int size = 0;
  int dimension = 0;

  // identity-suite
  int trials = 100;
};

// Executes compute, verify, identity-suite, or generate. Reports go to `out`
// (or --output when set) as JSON; human-readable progress goes to `err`.
// Exit codes: 0 success, 1 invalid input or flags, 2 numerical failure or
// ambiguity (failed suite, or a strict run with warnings).
int run_command(const RunOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace mgrkit
