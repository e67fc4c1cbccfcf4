#ifndef CATREG_ENCODE_HPP_
#define CATREG_ENCODE_HPP_

#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catreg/contrast.hpp"
#include "catreg/dataset.hpp"
#include "catreg/formula.hpp"
#include "catreg/kernels.hpp"
#include "catreg/matrix.hpp"

namespace catreg {

struct ContrastScheme {
  ContrastKind kind = ContrastKind::Treatment;
  std::string omitted_level;
};

// k x (k-1) coding matrix: row j is the encoding of level j, columns follow
// level order with `omitted` skipped. `counts` is only read for
// WeightedEffect.
Matrix contrast_matrix(std::size_t n_levels, std::size_t omitted, ContrastKind kind,
                       std::span<const std::size_t> counts);

struct EncodedColumn {
  std::string level;
  std::vector<double> values;
};

// k-1 columns for a categorical column. Throws SingleLevel, UnknownLevel,
// ZeroCountLevel (WeightedEffect only), MissingValuesPresent.
std::vector<EncodedColumn> encode_categorical(const CategoricalColumn& column,
                                              const ContrastScheme& scheme);

// Applies a transform chain left to right. Throws NonPositiveLog with the
// 1-based row of the first offending value.
std::vector<double> apply_transform(std::span<const double> values,
                                    const std::vector<Transform>& chain);

// Level names a variable can be releveled to: the categorical level list,
// or the distinct values (ascending, shortest spelling) of a numeric column.
std::vector<std::string> factor_levels(const Dataset& data, std::string_view variable);

// One constituent of a design column.
struct ColumnFactor {
  std::string variable;
  std::string level;      // empty for numeric factors
  std::string transform;  // formula spelling, e.g. "log(age)"; empty when none

  friend bool operator==(const ColumnFactor&, const ColumnFactor&) = default;
};

struct ColumnLabel {
  std::string term;                    // "1" for the intercept, else e.g. "female:edu"
  std::vector<ColumnFactor> factors;   // empty for the intercept
  std::string name;                    // "(Intercept)", "female", "edu[middle]", "female×edu[high]"

  bool is_intercept() const { return factors.empty(); }
  bool is_interaction() const { return factors.size() > 1; }
  friend bool operator==(const ColumnLabel&, const ColumnLabel&) = default;
};

inline constexpr std::string_view kInterceptName = "(Intercept)";

// How one variable reference of the formula becomes a block of columns.
// Kept with the design so new profiles encode exactly like the data.
struct FactorCoding {
  VarRef ref;
  bool categorical = false;
  // categorical
  std::vector<std::string> levels;
  std::vector<std::size_t> counts;
  std::size_t reference = 0;
  ContrastKind scheme = ContrastKind::Treatment;
  Matrix coding;  // levels x (levels-1)
  // numeric: `ref.transforms` is applied

  std::size_t width() const { return categorical ? coding.cols() : 1; }
  // Level or transform text of each block column.
  std::vector<std::string> column_names() const;
  const std::string& reference_level() const { return levels[reference]; }
};

struct TermBlock {
  Term term;
  std::vector<std::size_t> factors;  // indices into DesignInfo::factors
  std::size_t first_column = 0;
  std::size_t n_columns = 0;
};

struct DesignInfo {
  FormulaAst formula;
  ContrastKind default_scheme = ContrastKind::Treatment;
  std::vector<FactorCoding> factors;
  std::vector<TermBlock> blocks;  // non-intercept terms, in column order
  std::vector<std::string> warnings;

  // Resolved reference level of each categorical variable.
  std::map<std::string, std::string> references() const;
  // Contrast scheme of each categorical variable.
  std::map<std::string, ContrastKind> schemes() const;
};

struct DesignMatrix {
  Matrix values;                    // n x p, intercept first
  std::vector<ColumnLabel> labels;  // p entries, unique names
  std::vector<double> response;     // n entries
  DesignInfo info;

  std::size_t n_rows() const { return values.rows(); }
  std::size_t n_cols() const { return values.cols(); }
};

// Omitted (reference) level per variable.
using Refs = std::map<std::string, std::string>;

// Reference precedence: `refs`, then cat(x, ref=...), then the first level.
// Scheme precedence: cat(x, scheme=...), then `default_scheme`.
// Throws UnknownVariable, ResponseNotNumeric, MissingValuesPresent,
// InterceptSuppressed, NotCategorical, SingleLevel, UnknownLevel,
// ZeroCountLevel, NonPositiveLog, DuplicateColumn.
DesignMatrix build_design(const FormulaAst& ast, const Dataset& data,
                          ContrastKind default_scheme = ContrastKind::Treatment,
                          const Refs& refs = {},
                          kernels::Backend backend = kernels::Backend::Parallel);

// Returns `refs` with `variable` now omitting `new_reference`.
// Throws UnknownVariable, UnknownLevel.
Refs relevel(const Refs& refs, const Dataset& data, const std::string& variable,
             const std::string& new_reference);

// Encodes a single observation given as variable -> text value (level name
// or number). Throws IncompleteProfile, UnknownLevel, NonPositiveLog,
// TypeMismatch.
std::vector<double> encode_profile(const DesignInfo& info,
                                   const std::map<std::string, std::string>& profile);

// CSV dump: header is the response name then the column names; reals use
// the shortest round-trip spelling.
void write_design_csv(std::ostream& out, const DesignMatrix& design);

}  // namespace catreg

#endif  // CATREG_ENCODE_HPP_
