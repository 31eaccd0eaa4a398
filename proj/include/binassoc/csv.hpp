#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "binassoc/dataset.hpp"

namespace binassoc {

// Declarative description of one input column.
struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::continuous;
  bool log_transform = false;                      // continuous only
  std::optional<double> zero_epsilon;              // log-transform replacement for 0
  std::optional<std::pair<double, double>> range;  // threshold search range
  std::optional<int> grid_size;
};

// RFC-4180-style field splitting (quoted fields, doubled quotes, CRLF).
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

// Schema-driven load. The header row must contain every schema name; cells
// must parse for their declared kind. Missing or malformed cells are rejected
// with row-numbered diagnostics, never imputed.
Dataset load_csv(const std::string& path, std::span<const ColumnSchema> schema);
Dataset load_csv_stream(std::istream& in, std::span<const ColumnSchema> schema,
                        const std::string& origin = "<stream>");

}  // namespace binassoc
