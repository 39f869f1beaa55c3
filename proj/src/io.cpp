#include "mgrkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "mgrkit/generators.hpp"

namespace mgrkit {
namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

double parse_real(const std::string& token, int line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + token + "'");
  }
  while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
  if (used != token.size()) {
    throw ParseError(line, "trailing characters after number in '" + token + "'");
  }
  return value;
}

MetricSpace finish_space(std::vector<std::string> labels, Matrix distances, KindPolicy policy) {
  const auto build = [&](MetricKind kind) {
    return labels.empty() ? make_space(std::move(distances), kind)
                          : validate_space(std::move(labels), std::move(distances), kind);
  };
  if (policy == KindPolicy::Metric) return build(MetricKind::Metric);
  if (policy == KindPolicy::SemiMetric) return build(MetricKind::SemiMetric);

  const auto violations = check_space(distances, MetricKind::Metric);
  const bool only_triangle =
      !violations.empty() &&
      std::all_of(violations.begin(), violations.end(), [](const SpaceViolation& v) {
        return v.kind == SpaceViolation::Kind::TriangleInequality;
      });
  return build(only_triangle ? MetricKind::SemiMetric : MetricKind::Metric);
}

ParsedInput parse_csv(const std::string& text, KindPolicy policy) {
  const auto lines = split_lines(text);
  std::vector<std::vector<double>> rows;
  for (std::size_t index = 0; index < lines.size(); ++index) {
    if (is_blank(lines[index])) continue;
    const int line = static_cast<int>(index) + 1;
    std::vector<double> row;
    std::stringstream cells(lines[index]);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(parse_real(cell, line));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(line, "row has " + std::to_string(row.size()) + " entries, expected " +
                                 std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(1, "empty distance matrix");
  if (rows.size() != rows.front().size()) {
    throw ParseError(static_cast<int>(lines.size()),
                     "matrix is not square: " + std::to_string(rows.size()) + " rows of " +
                         std::to_string(rows.front().size()) + " entries");
  }

  const auto count = static_cast<Eigen::Index>(rows.size());
  Matrix d(count, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    for (Eigen::Index j = 0; j < count; ++j) {
      d(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return finish_space({}, std::move(d), policy);
}

ParsedInput parse_json_space(const std::string& text, KindPolicy policy) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("invalid JSON: ") + e.what());
  }

  if (!doc.is_object() || !doc.contains("distances") || !doc["distances"].is_array()) {
    throw ParseError(1, "expected an object with a \"distances\" array");
  }
  const auto& matrix = doc["distances"];
  const auto count = static_cast<Eigen::Index>(matrix.size());
  if (count == 0) throw ParseError(1, "empty distance matrix");

  Matrix d(count, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const auto& row = matrix[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != count) {
      throw ParseError(1, "\"distances\" must be a square array of arrays");
    }
    for (Eigen::Index j = 0; j < count; ++j) {
      const auto& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) throw ParseError(1, "distance entries must be numbers");
      d(i, j) = cell.get<double>();
    }
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array()) throw ParseError(1, "\"labels\" must be an array");
    for (const auto& label : doc["labels"]) {
      if (!label.is_string()) throw ParseError(1, "labels must be strings");
      labels.push_back(label.get<std::string>());
    }
  }

  if (doc.contains("metric_kind")) {
    const std::string kind = doc["metric_kind"].get<std::string>();
    if (kind == to_string(MetricKind::Metric)) {
      policy = KindPolicy::Metric;
    } else if (kind == to_string(MetricKind::SemiMetric)) {
      policy = KindPolicy::SemiMetric;
    } else {
      throw ParseError(1, "unknown metric_kind '" + kind + "'");
    }
  }
  return finish_space(std::move(labels), std::move(d), policy);
}

ParsedInput parse_graph(const std::string& text) {
  const auto lines = split_lines(text);
  std::size_t index = 0;
  while (index < lines.size() && is_blank(lines[index])) ++index;
  if (index == lines.size()) throw ParseError(1, "missing graph header");

  GraphSpec spec;
  int edge_count = 0;
  {
    std::stringstream header(lines[index]);
    if (!(header >> spec.vertex_count >> edge_count)) {
      throw ParseError(static_cast<int>(index) + 1, "header must be \"n m\"");
    }
    std::string rest;
    if (header >> rest) {
      throw ParseError(static_cast<int>(index) + 1, "unexpected token after header: " + rest);
    }
  }
  ++index;

  int parsed = 0;
  for (; index < lines.size() && parsed < edge_count; ++index) {
    if (is_blank(lines[index])) continue;
    const int line = static_cast<int>(index) + 1;
    std::stringstream fields(lines[index]);
    GraphEdge edge;
    if (!(fields >> edge.u >> edge.v)) {
      throw ParseError(line, "edge line must be \"u v [w]\"");
    }
    if (!(fields >> edge.weight)) edge.weight = 1.0;
    std::string rest;
    if (fields >> rest) throw ParseError(line, "unexpected token after edge: " + rest);
    spec.edges.push_back(edge);
    ++parsed;
  }
  if (parsed < edge_count) {
    throw ParseError(static_cast<int>(lines.size()),
                     "expected " + std::to_string(edge_count) + " edges, found " +
                         std::to_string(parsed));
  }
  for (; index < lines.size(); ++index) {
    if (!is_blank(lines[index])) {
      throw ParseError(static_cast<int>(index) + 1, "unexpected content after edge list");
    }
  }

  try {
    return graph_to_space(spec);
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, e.what());
  }
}

ParsedInput parse_hamming(const std::string& text) {
  const auto lines = split_lines(text);
  std::vector<std::vector<int>> points;
  std::size_t width = 0;
  for (std::size_t index = 0; index < lines.size(); ++index) {
    if (is_blank(lines[index])) continue;
    const int line = static_cast<int>(index) + 1;
    std::vector<int> point;
    for (char c : lines[index]) {
      if (c == '0' || c == '1') {
        point.push_back(c - '0');
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        throw ParseError(line, std::string("expected 0/1 characters, got '") + c + "'");
      }
    }
    if (points.empty()) {
      width = point.size();
      if (width == 0) throw ParseError(line, "empty point");
    } else if (point.size() != width) {
      throw ParseError(line, "point length " + std::to_string(point.size()) +
                                 " differs from " + std::to_string(width));
    }
    points.push_back(std::move(point));
  }
  if (points.empty()) throw ParseError(1, "no points given");

  try {
    return make_hamming_subset(static_cast<int>(width), std::move(points));
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, e.what());
  }
}

}  // namespace

KindPolicy parse_kind_policy(const std::string& name) {
  if (name == "auto") return KindPolicy::Auto;
  if (name == "metric") return KindPolicy::Metric;
  if (name == "semi-metric") return KindPolicy::SemiMetric;
  throw std::invalid_argument("unknown kind '" + name + "' (use auto, metric, or semi-metric)");
}

ParsedInput parse_input_text(const std::string& text, const std::string& format,
                             KindPolicy policy) {
  if (format == "csv") return parse_csv(text, policy);
  if (format == "json") return parse_json_space(text, policy);
  if (format == "graph") return parse_graph(text);
  if (format == "hamming") return parse_hamming(text);
  throw std::invalid_argument("unknown format '" + format +
                              "' (use csv, json, graph, or hamming)");
}

ParsedInput parse_input(const std::string& path, const std::string& format, KindPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_input_text(buffer.str(), format, policy);
}

std::string space_to_json(const MetricSpace& space) {
  nlohmann::ordered_json doc;
  doc["labels"] = space.labels;
  doc["metric_kind"] = to_string(space.kind);
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < space.distances.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < space.distances.cols(); ++j) {
      row.push_back(space.distances(i, j));
    }
    rows.push_back(std::move(row));
  }
  doc["distances"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string input_digest(const Matrix& distances) {
  constexpr std::uint64_t kOffset = 14695981039346656037ull;
  constexpr std::uint64_t kPrime = 1099511628211ull;

  std::uint64_t hash = kOffset;
  const auto mix = [&hash](const unsigned char* bytes, std::size_t count) {
    for (std::size_t b = 0; b < count; ++b) {
      hash ^= bytes[b];
      hash *= kPrime;
    }
  };

  const auto order = static_cast<std::uint64_t>(distances.rows());
  unsigned char header[8];
  for (int b = 0; b < 8; ++b) header[b] = static_cast<unsigned char>((order >> (8 * b)) & 0xffu);
  mix(header, sizeof(header));

  for (Eigen::Index i = 0; i < distances.rows(); ++i) {
    for (Eigen::Index j = 0; j < distances.cols(); ++j) {
      const double value = distances(i, j);
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &value, sizeof(double));
      mix(bytes, sizeof(bytes));
    }
  }

  char text[17];
  std::snprintf(text, sizeof(text), "%016llx", static_cast<unsigned long long>(hash));
  return std::string("fnv1a64:") + text;
}

}  // namespace mgrkit
