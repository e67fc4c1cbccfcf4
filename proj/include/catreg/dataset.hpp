#ifndef CATREG_DATASET_HPP_
#define CATREG_DATASET_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace catreg {

// Real-valued column; missing cells are stored as NaN.
struct NumericColumn {
  std::vector<double> values;

  bool missing(std::size_t row) const { return std::isnan(values[row]); }
  friend bool operator==(const NumericColumn& a, const NumericColumn& b);
};

// Categorical column. `codes[i]` indexes `levels`; -1 marks a missing cell.
// Levels may be unobserved (declared by a schema, or emptied by deletion).
struct CategoricalColumn {
  std::vector<std::string> levels;
  std::vector<std::int32_t> codes;

  static constexpr std::int32_t kMissing = -1;

  bool missing(std::size_t row) const { return codes[row] == kMissing; }
  std::vector<std::size_t> counts() const;
  std::optional<std::size_t> level_index(std::string_view level) const;
  friend bool operator==(const CategoricalColumn&, const CategoricalColumn&) = default;
};

using Column = std::variant<NumericColumn, CategoricalColumn>;

inline bool is_categorical(const Column& c) {
  return std::holds_alternative<CategoricalColumn>(c);
}
bool cell_missing(const Column& c, std::size_t row);

struct ColumnSchema {
  enum class Type { Numeric, Categorical };
  Type type = Type::Categorical;
  std::optional<std::vector<std::string>> levels;  // categorical only
};

// Declared column types. Columns not named here are inferred.
struct Schema {
  std::map<std::string, ColumnSchema> columns;
};

// Immutable table of named, typed columns of equal length.
class Dataset {
 public:
  Dataset() = default;
  // Throws InvalidArgument on ragged columns or duplicate names.
  Dataset(std::vector<std::string> names, std::vector<Column> columns);

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  bool has(std::string_view name) const;
  // Throws UnknownVariable.
  const Column& column(std::string_view name) const;
  const Column& column(std::size_t index) const { return columns_[index]; }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Column> columns_;
  std::size_t n_rows_ = 0;
};

// RFC-4180 CSV with a mandatory header row. Missing cells are "" or "NA".
// Without a schema entry a column is numeric iff every non-missing cell
// parses as a real number; categorical levels keep first-appearance order.
Dataset read_csv(std::istream& in, const Schema& schema = {});
Dataset read_csv_file(const std::string& path, const Schema& schema = {});

// Writes the dataset back as CSV (shortest round-trip reals, "NA" for missing).
void write_csv(std::ostream& out, const Dataset& data);

// Schema from JSON: {"columns": {"edu": {"type": "categorical",
// "levels": ["low","middle","high"]}, "bmi": {"type": "numeric"}}}.
Schema read_schema_json(std::istream& in);

// Rows where every listed variable is present. Levels are kept even when
// they lose all their rows.
Dataset listwise_delete(const Dataset& data, const std::vector<std::string>& variables);

// Level list of a categorical variable (schema order, else first appearance).
const std::vector<std::string>& levels(const Dataset& data, std::string_view variable);

// The listed rows of `data`, in the given order.
Dataset select_rows(const Dataset& data, const std::vector<std::size_t>& rows);

}  // namespace catreg

#endif  // CATREG_DATASET_HPP_
