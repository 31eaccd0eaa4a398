#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "binassoc/contingency.hpp"

namespace binassoc {

enum class ColumnKind { continuous, binary, categorical };

const char* to_string(ColumnKind kind);

// One dataset column; exactly one payload is populated depending on kind.
struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::continuous;
  std::vector<double> values;  // continuous payload
  CategoricalSeries cats;      // binary/categorical payload

  bool is_continuous() const { return kind == ColumnKind::continuous; }
  std::size_t size() const { return is_continuous() ? values.size() : cats.size(); }

  static Column continuous(std::string name, std::vector<double> values);
  static Column categorical(std::string name, CategoricalSeries cats, ColumnKind kind);
};

struct Dataset {
  std::vector<Column> columns;

  std::size_t n_rows() const;
  bool has_column(const std::string& name) const;
  const Column& column(const std::string& name) const;  // throws when missing

  // Throws unless all columns are non-empty and of equal length.
  void validate() const;
};

struct LogTransformResult {
  Column column;
  double epsilon = 0.0;  // the zero-replacement value actually used
};

// x -> log(max(x, epsilon)). When epsilon is not given it defaults to half
// the smallest positive value in the column. Throws on negative values, and
// when no epsilon can be derived because the column has no positive value.
LogTransformResult log_transform(const Column& column, std::optional<double> epsilon = {});

}  // namespace binassoc
