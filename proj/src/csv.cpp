#include "binassoc/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace binassoc {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool looks_missing(const std::string& cell) {
  const std::string t = trim(cell);
  return t.empty() || t == "NA" || t == "na" || t == "N/A" || t == "NaN" || t == "nan" ||
         t == "null" || t == "NULL";
}

bool parse_double(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_int(const std::string& cell, int& out) {
  const std::string t = trim(cell);
  const char* first = t.data();
  const char* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

class ErrorCollector {
 public:
  void add(std::size_t row, const std::string& column, const std::string& what) {
    ++count_;
    if (lines_.size() < 20)
      lines_.push_back("row " + std::to_string(row) + ", column '" + column + "': " + what);
  }

  void throw_if_any(const std::string& origin) const {
    if (count_ == 0) return;
    std::ostringstream msg;
    msg << origin << ": " << count_ << " bad cell(s)";
    for (const std::string& line : lines_) msg << "\n  " << line;
    if (count_ > lines_.size()) msg << "\n  ... and " << (count_ - lines_.size()) << " more";
    throw std::runtime_error(msg.str());
  }

 private:
  std::size_t count_ = 0;
  std::vector<std::string> lines_;
};

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;

  auto end_field = [&] {
    row.push_back(field);
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(row);
    row.clear();
  };

  char ch;
  while (in.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      end_field();
    } else if (ch == '\n') {
      end_row();
    } else if (ch == '\r') {
      // swallow; the following \n (if any) closes the row
      if (in.peek() != '\n') end_row();
    } else {
      field.push_back(ch);
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted field");
  if (any && (!field.empty() || !row.empty())) end_row();
  return rows;
}

Dataset load_csv_stream(std::istream& in, std::span<const ColumnSchema> schema,
                        const std::string& origin) {
  if (schema.empty()) throw std::invalid_argument("empty column schema");
  const auto rows = parse_csv(in);
  if (rows.empty()) throw std::runtime_error(origin + ": file is empty");
  if (rows.size() < 2) throw std::runtime_error(origin + ": no data rows");

  const std::vector<std::string>& header = rows.front();
  std::vector<std::size_t> position(schema.size());
  for (std::size_t s = 0; s < schema.size(); ++s) {
    const auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) {
      return trim(h) == schema[s].name;
    });
    if (it == header.end())
      throw std::runtime_error(origin + ": missing column '" + schema[s].name + "'");
    position[s] = static_cast<std::size_t>(it - header.begin());
  }

  const std::size_t n = rows.size() - 1;
  std::vector<std::vector<double>> numeric(schema.size());
  std::vector<std::vector<int>> codes(schema.size());
  ErrorCollector errors;

  for (std::size_t r = 0; r < n; ++r) {
    const std::vector<std::string>& row = rows[r + 1];
    const std::size_t row_number = r + 2;  // 1-based, header is row 1
    for (std::size_t s = 0; s < schema.size(); ++s) {
      if (position[s] >= row.size()) {
        errors.add(row_number, schema[s].name, "row has too few fields");
        continue;
      }
      const std::string& cell = row[position[s]];
      if (looks_missing(cell)) {
        errors.add(row_number, schema[s].name, "missing value");
        continue;
      }
      switch (schema[s].kind) {
        case ColumnKind::continuous: {
          double v;
          if (parse_double(cell, v))
            numeric[s].push_back(v);
          else
            errors.add(row_number, schema[s].name, "not a number: '" + trim(cell) + "'");
          break;
        }
        case ColumnKind::binary: {
          int v;
          if (parse_int(cell, v) && (v == 0 || v == 1))
            codes[s].push_back(v);
          else
            errors.add(row_number, schema[s].name, "not 0/1: '" + trim(cell) + "'");
          break;
        }
        case ColumnKind::categorical: {
          int v;
          if (parse_int(cell, v) && v >= 0)
            codes[s].push_back(v);
          else
            errors.add(row_number, schema[s].name,
                       "not a non-negative category code: '" + trim(cell) + "'");
          break;
        }
      }
    }
  }
  errors.throw_if_any(origin);

  Dataset dataset;
  for (std::size_t s = 0; s < schema.size(); ++s) {
    if (schema[s].kind == ColumnKind::continuous) {
      dataset.columns.push_back(Column::continuous(schema[s].name, std::move(numeric[s])));
    } else {
      CategoricalSeries cats;
      cats.name = schema[s].name;
      cats.codes = std::move(codes[s]);
      int max_code = 0;
      for (int c : cats.codes) max_code = std::max(max_code, c);
      cats.n_categories = schema[s].kind == ColumnKind::binary ? 2 : max_code + 1;
      dataset.columns.push_back(
          Column::categorical(schema[s].name, std::move(cats), schema[s].kind));
    }
  }
  dataset.validate();
  return dataset;
}

Dataset load_csv(const std::string& path, std::span<const ColumnSchema> schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return load_csv_stream(in, schema, path);
}

}  // namespace binassoc
