#ifndef CATREG_REPORT_HPP_
#define CATREG_REPORT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "catreg/solve.hpp"

namespace catreg {

// A one-sided test requested for a single coefficient.
struct TailRequest {
  std::string label;
  Direction direction = Direction::Greater;
};

struct ReportOptions {
  int rounding = 2;
  std::optional<TailRequest> tail;
  // Main/Interaction section headers; default: only when the model has
  // interaction terms.
  std::optional<bool> sections;
};

struct TableRow {
  enum class Kind { Coefficient, Reference, Section };
  Kind kind = Kind::Coefficient;
  std::string label;
  std::size_t coefficient = 0;  // Coefficient rows only
};

// Row order of a coefficient table: the intercept (shown as `a`), then each
// term block in column order. Each categorical variable gets one
// `reference` row, in front of the first block that uses it.
struct TableLayout {
  std::vector<TableRow> rows;
  int rounding = 2;
};

TableLayout make_layout(const FitResult& fit, const ReportOptions& options = {});

// Round half away from zero to `places`, drop the leading zero of values
// below one: -0.51 -> "-.51", 25.234 -> "25.23".
std::string format_number(double value, int places);
// "<.01" below 0.01, otherwise two decimals without leading zero.
std::string format_p(double p);

std::string render_text(const FitResult& fit, const ReportOptions& options = {});

// Full-precision JSON with stable key order.
std::string render_json(const FitResult& fit, const ReportOptions& options = {});

}  // namespace catreg

#endif  // CATREG_REPORT_HPP_
