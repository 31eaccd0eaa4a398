#include "binassoc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace binassoc {

const char* to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::continuous: return "continuous";
    case ColumnKind::binary: return "binary";
    case ColumnKind::categorical: return "categorical";
  }
  return "?";
}

Column Column::continuous(std::string name, std::vector<double> values) {
  Column col;
  col.name = std::move(name);
  col.kind = ColumnKind::continuous;
  col.values = std::move(values);
  return col;
}

Column Column::categorical(std::string name, CategoricalSeries cats, ColumnKind kind) {
  if (kind == ColumnKind::continuous)
    throw std::invalid_argument("categorical payload with continuous kind");
  Column col;
  col.name = std::move(name);
  col.kind = kind;
  col.cats = std::move(cats);
  col.cats.name = col.name;
  return col;
}

std::size_t Dataset::n_rows() const { return columns.empty() ? 0 : columns.front().size(); }

bool Dataset::has_column(const std::string& name) const {
  return std::any_of(columns.begin(), columns.end(),
                     [&](const Column& c) { return c.name == name; });
}

const Column& Dataset::column(const std::string& name) const {
  for (const Column& c : columns)
    if (c.name == name) return c;
  throw std::invalid_argument("no column named '" + name + "'");
}

void Dataset::validate() const {
  if (columns.empty()) throw std::invalid_argument("dataset has no columns");
  const std::size_t n = columns.front().size();
  for (const Column& c : columns) {
    if (c.size() == 0) throw std::invalid_argument("column '" + c.name + "' is empty");
    if (c.size() != n)
      throw std::invalid_argument("column '" + c.name + "' has length " +
                                  std::to_string(c.size()) + ", expected " + std::to_string(n));
    if (!c.is_continuous()) c.cats.validate();
  }
}

LogTransformResult log_transform(const Column& column, std::optional<double> epsilon) {
  if (!column.is_continuous())
    throw std::invalid_argument("log_transform: column '" + column.name + "' is not continuous");
  double min_positive = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < column.values.size(); ++i) {
    const double v = column.values[i];
    if (v < 0.0)
      throw std::invalid_argument("log_transform: column '" + column.name +
                                  "' has a negative value at row " + std::to_string(i));
    if (v > 0.0) min_positive = std::min(min_positive, v);
  }
  double eps;
  if (epsilon) {
    if (!(*epsilon > 0.0)) throw std::invalid_argument("log_transform: epsilon must be > 0");
    eps = *epsilon;
  } else {
    if (!std::isfinite(min_positive))
      throw std::invalid_argument("log_transform: column '" + column.name +
                                  "' has no positive value; give an explicit epsilon");
    eps = min_positive / 2.0;
  }
  LogTransformResult result;
  result.epsilon = eps;
  result.column = column;
  for (double& v : result.column.values) v = std::log(std::max(v, eps));
  return result;
}

}  // namespace binassoc
