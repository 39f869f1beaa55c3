#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "mgrkit/hamming.hpp"
#include "mgrkit/space.hpp"

namespace mgrkit {

// Raised on malformed input with the 1-based line where parsing stopped.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const { return line_; }

 private:
  int line_ = 0;
};

// How to resolve the metric kind when the input format does not carry one.
// Auto validates as a metric and downgrades to semi-metric when the only
// violations are triangle inequalities.
enum class KindPolicy { Auto, Metric, SemiMetric };

KindPolicy parse_kind_policy(const std::string& name);

using ParsedInput = std::variant<MetricSpace, HammingSubset>;

// Formats:
//   csv      one row of comma-separated reals per line, square
//   json     {"distances": [[...]], "labels": [...]?, "metric_kind": "..."?}
//   graph    header "n m", then m lines "u v [w]" with 0-based endpoints
//   hamming  one fixed-length 0/1 string per line
ParsedInput parse_input_text(const std::string& text, const std::string& format,
                             KindPolicy policy = KindPolicy::Auto);
ParsedInput parse_input(const std::string& path, const std::string& format,
                        KindPolicy policy = KindPolicy::Auto);

// Lossless JSON rendering of a space; parse_input_text(..., "json") returns
// the identical distance matrix bit for bit.
std::string space_to_json(const MetricSpace& space);

// 64-bit FNV-1a over the order (as a little-endian 64-bit integer) followed
// by the IEEE-754 bytes of every entry in row-major order.
std::string input_digest(const Matrix& distances);

}  // namespace mgrkit
