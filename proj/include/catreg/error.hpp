#ifndef CATREG_ERROR_HPP_
#define CATREG_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catreg {

enum class ErrorCode {
  // formula
  IllegalCharacter,
  SyntaxError,
  UnknownFunction,
  ConflictingFactor,
  ResponseInTerms,
  // dataset
  MalformedCsv,
  RaggedRow,
  EmptyInput,
  TypeMismatch,
  UnknownVariable,
  NotCategorical,
  EmptyAfterDeletion,
  IoError,
  // encode
  SingleLevel,
  ZeroCountLevel,
  NonPositiveLog,
  UnknownLevel,
  ResponseNotNumeric,
  MissingValuesPresent,
  InterceptSuppressed,
  DuplicateColumn,
  // solve
  RankDeficient,
  TooFewRows,
  UnknownLabel,
  DimensionMismatch,
  IncompleteProfile,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `position` is a byte offset into
// formula text, `row` a 1-based CSV/data row, `labels` the design columns
// involved (RankDeficient).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::size_t>& position() const noexcept { return position_; }
  const std::optional<std::size_t>& row() const noexcept { return row_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  Error& at_position(std::size_t pos) {
    position_ = pos;
    return *this;
  }
  Error& at_row(std::size_t r) {
    row_ = r;
    return *this;
  }
  Error& with_labels(std::vector<std::string> labels) {
    labels_ = std::move(labels);
    return *this;
  }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
  std::optional<std::size_t> row_;
  std::vector<std::string> labels_;
};

}  // namespace catreg

#endif  // CATREG_ERROR_HPP_
