#include "catreg/dataset.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "catreg/error.hpp"
#include "catreg/numeric_text.hpp"

namespace catreg {

bool operator==(const NumericColumn& a, const NumericColumn& b) {
  if (a.values.size() != b.values.size()) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double x = a.values[i], y = b.values[i];
    if (std::isnan(x) || std::isnan(y)) {
      if (std::isnan(x) != std::isnan(y)) return false;
    } else if (std::memcmp(&x, &y, sizeof x) != 0) {
      return false;
    }
  }
  return true;
}

std::vector<std::size_t> CategoricalColumn::counts() const {
  std::vector<std::size_t> out(levels.size(), 0);
  for (auto c : codes) {
    if (c != kMissing) ++out[static_cast<std::size_t>(c)];
  }
  return out;
}

std::optional<std::size_t> CategoricalColumn::level_index(std::string_view level) const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] == level) return i;
  }
  return std::nullopt;
}

bool cell_missing(const Column& c, std::size_t row) {
  return std::visit([row](const auto& col) { return col.missing(row); }, c);
}

namespace {

std::size_t column_length(const Column& c) {
  return std::visit(
      [](const auto& col) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(col)>, NumericColumn>) {
          return col.values.size();
        } else {
          return col.codes.size();
        }
      },
      c);
}

}  // namespace

Dataset::Dataset(std::vector<std::string> names, std::vector<Column> columns)
    : names_(std::move(names)), columns_(std::move(columns)) {
  if (names_.size() != columns_.size()) {
    throw Error(ErrorCode::InvalidArgument, "column name count does not match column count");
  }
  n_rows_ = columns_.empty() ? 0 : column_length(columns_.front());
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (column_length(columns_[j]) != n_rows_) {
      throw Error(ErrorCode::InvalidArgument, "column '" + names_[j] + "' has " +
                                                  std::to_string(column_length(columns_[j])) +
                                                  " rows, expected " + std::to_string(n_rows_));
    }
    for (std::size_t k = 0; k < j; ++k) {
      if (names_[k] == names_[j]) {
        throw Error(ErrorCode::InvalidArgument, "duplicate column name '" + names_[j] + "'");
      }
    }
    if (const auto* cat = std::get_if<CategoricalColumn>(&columns_[j])) {
      for (auto c : cat->codes) {
        if (c != CategoricalColumn::kMissing &&
            (c < 0 || static_cast<std::size_t>(c) >= cat->levels.size())) {
          throw Error(ErrorCode::InvalidArgument,
                      "column '" + names_[j] + "' has a code outside its level list");
        }
      }
    }
  }
}

bool Dataset::has(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const Column& Dataset::column(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw Error(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
  }
  return columns_[static_cast<std::size_t>(it - names_.begin())];
}

namespace {

struct Record {
  std::vector<std::string> cells;
  std::size_t row;  // 1-based record number, header is 1
};

// Splits RFC-4180 text into records. Quoted fields may contain commas,
// doubled quotes and line breaks.
std::vector<Record> split_records(std::string_view text) {
  std::vector<Record> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  std::size_t row = 0;
  while (i < n) {
    ++row;
    Record rec{{}, row};
    for (;;) {
      std::string cell;
      if (i < n && text[i] == '"') {
        ++i;
        bool closed = false;
        while (i < n) {
          if (text[i] == '"') {
            if (i + 1 < n && text[i + 1] == '"') {
              cell.push_back('"');
              i += 2;
            } else {
              ++i;
              closed = true;
              break;
            }
          } else {
            cell.push_back(text[i++]);
          }
        }
        if (!closed) {
          throw Error(ErrorCode::MalformedCsv, "unterminated quoted field in row " +
                                                   std::to_string(row))
              .at_row(row);
        }
        if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw Error(ErrorCode::MalformedCsv, "unexpected character after closing quote in row " +
                                                   std::to_string(row))
              .at_row(row);
        }
      } else {
        while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          if (text[i] == '"') {
            throw Error(ErrorCode::MalformedCsv,
                        "quote inside unquoted field in row " + std::to_string(row))
                .at_row(row);
          }
          cell.push_back(text[i++]);
        }
      }
      rec.cells.push_back(std::move(cell));
      if (i < n && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < n && text[i] == '\r') ++i;
      if (i < n && text[i] == '\n') ++i;
      break;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

bool is_missing_text(std::string_view s) { return s.empty() || s == "NA"; }

}  // namespace

Dataset read_csv(std::istream& in, const Schema& schema) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorCode::EmptyInput, "CSV input is empty");
  }

  std::vector<Record> records = split_records(text);
  const std::vector<std::string> header = records.front().cells;
  const std::size_t width = header.size();
  for (std::size_t j = 0; j < width; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      if (header[k] == header[j]) {
        throw Error(ErrorCode::MalformedCsv, "duplicate header name '" + header[j] + "'")
            .at_row(1);
      }
    }
  }
  for (const auto& [name, decl] : schema.columns) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw Error(ErrorCode::UnknownVariable,
                  "schema names column '" + name + "' which is not in the CSV header");
    }
  }

  std::vector<const Record*> body;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const Record& rec = records[r];
    // Blank lines carry no cells in a multi-column file.
    if (width > 1 && rec.cells.size() == 1 && rec.cells[0].empty()) continue;
    if (rec.cells.size() != width) {
      throw Error(ErrorCode::RaggedRow, "row " + std::to_string(rec.row) + " has " +
                                            std::to_string(rec.cells.size()) + " cells, header has " +
                                            std::to_string(width))
          .at_row(rec.row);
    }
    body.push_back(&rec);
  }

  std::vector<Column> columns;
  columns.reserve(width);
  for (std::size_t j = 0; j < width; ++j) {
    const auto decl_it = schema.columns.find(header[j]);
    const ColumnSchema* decl = decl_it == schema.columns.end() ? nullptr : &decl_it->second;

    bool numeric;
    if (decl) {
      numeric = decl->type == ColumnSchema::Type::Numeric;
    } else {
      numeric = std::all_of(body.begin(), body.end(), [j](const Record* rec) {
        const auto& cell = rec->cells[j];
        return is_missing_text(cell) || parse_real(cell).has_value();
      });
    }

    if (numeric) {
      NumericColumn col;
      col.values.reserve(body.size());
      for (const Record* rec : body) {
        const auto& cell = rec->cells[j];
        if (is_missing_text(cell)) {
          col.values.push_back(std::numeric_limits<double>::quiet_NaN());
          continue;
        }
        auto v = parse_real(cell);
        if (!v) {
          throw Error(ErrorCode::TypeMismatch, "column '" + header[j] + "' is declared numeric but row " +
                                                   std::to_string(rec->row) + " holds '" + cell + "'")
              .at_row(rec->row);
        }
        col.values.push_back(*v);
      }
      columns.emplace_back(std::move(col));
      continue;
    }

    CategoricalColumn col;
    std::unordered_map<std::string, std::int32_t> index;
    const bool fixed = decl && decl->levels.has_value();
    if (fixed) {
      for (const auto& lv : *decl->levels) {
        if (index.count(lv)) {
          throw Error(ErrorCode::InvalidArgument,
                      "schema for '" + header[j] + "' lists level '" + lv + "' twice");
        }
        index.emplace(lv, static_cast<std::int32_t>(col.levels.size()));
        col.levels.push_back(lv);
      }
    }
    col.codes.reserve(body.size());
    for (const Record* rec : body) {
      const auto& cell = rec->cells[j];
      if (is_missing_text(cell)) {
        col.codes.push_back(CategoricalColumn::kMissing);
        continue;
      }
      auto it = index.find(cell);
      if (it == index.end()) {
        if (fixed) {
          throw Error(ErrorCode::UnknownLevel, "row " + std::to_string(rec->row) + ": '" + cell +
                                                   "' is not a declared level of '" + header[j] + "'")
              .at_row(rec->row);
        }
        it = index.emplace(cell, static_cast<std::int32_t>(col.levels.size())).first;
        col.levels.push_back(cell);
      }
      col.codes.push_back(it->second);
    }
    columns.emplace_back(std::move(col));
  }
  return Dataset(header, std::move(columns));
}

Dataset read_csv_file(const std::string& path, const Schema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_csv(in, schema);
}

namespace {

void write_cell(std::ostream& out, const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

void write_csv(std::ostream& out, const Dataset& data) {
  for (std::size_t j = 0; j < data.n_cols(); ++j) {
    if (j) out << ',';
    write_cell(out, data.names()[j]);
  }
  out << '\n';
  for (std::size_t i = 0; i < data.n_rows(); ++i) {
    for (std::size_t j = 0; j < data.n_cols(); ++j) {
      if (j) out << ',';
      const Column& c = data.column(j);
      if (cell_missing(c, i)) {
        out << "NA";
      } else if (const auto* num = std::get_if<NumericColumn>(&c)) {
        out << shortest_repr(num->values[i]);
      } else {
        const auto& cat = std::get<CategoricalColumn>(c);
        write_cell(out, cat.levels[static_cast<std::size_t>(cat.codes[i])]);
      }
    }
    out << '\n';
  }
}

Schema read_schema_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("schema is not valid JSON: ") + e.what());
  }
  Schema schema;
  if (!doc.is_object() || !doc.contains("columns") || !doc["columns"].is_object()) {
    throw Error(ErrorCode::InvalidArgument, "schema must be an object with a 'columns' object");
  }
  for (const auto& [name, spec] : doc["columns"].items()) {
    ColumnSchema cs;
    const std::string type = spec.value("type", "categorical");
    if (type == "numeric") {
      cs.type = ColumnSchema::Type::Numeric;
    } else if (type == "categorical") {
      cs.type = ColumnSchema::Type::Categorical;
      if (spec.contains("levels")) cs.levels = spec["levels"].get<std::vector<std::string>>();
    } else {
      throw Error(ErrorCode::InvalidArgument, "column '" + name + "' has unknown type '" + type + "'");
    }
    schema.columns.emplace(name, std::move(cs));
  }
  return schema;
}

Dataset select_rows(const Dataset& data, const std::vector<std::size_t>& rows) {
  std::vector<Column> cols;
  cols.reserve(data.n_cols());
  for (std::size_t j = 0; j < data.n_cols(); ++j) {
    const Column& c = data.column(j);
    if (const auto* num = std::get_if<NumericColumn>(&c)) {
      NumericColumn out;
      out.values.reserve(rows.size());
      for (auto r : rows) out.values.push_back(num->values.at(r));
      cols.emplace_back(std::move(out));
    } else {
      const auto& cat = std::get<CategoricalColumn>(c);
      CategoricalColumn out;
      out.levels = cat.levels;
      out.codes.reserve(rows.size());
      for (auto r : rows) out.codes.push_back(cat.codes.at(r));
      cols.emplace_back(std::move(out));
    }
  }
  return Dataset(data.names(), std::move(cols));
}

Dataset listwise_delete(const Dataset& data, const std::vector<std::string>& variables) {
  std::vector<const Column*> used;
  for (const auto& v : variables) used.push_back(&data.column(v));
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < data.n_rows(); ++i) {
    bool complete = std::none_of(used.begin(), used.end(),
                                 [i](const Column* c) { return cell_missing(*c, i); });
    if (complete) keep.push_back(i);
  }
  if (keep.empty()) {
    throw Error(ErrorCode::EmptyAfterDeletion, "no complete rows remain after listwise deletion");
  }
  if (keep.size() == data.n_rows()) return data;
  return select_rows(data, keep);
}

const std::vector<std::string>& levels(const Dataset& data, std::string_view variable) {
  const Column& c = data.column(variable);
  const auto* cat = std::get_if<CategoricalColumn>(&c);
  if (!cat) {
    throw Error(ErrorCode::NotCategorical, "variable '" + std::string(variable) + "' is numeric");
  }
  return cat->levels;
}

}  // namespace catreg
