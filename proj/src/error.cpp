#include "catreg/error.hpp"

namespace catreg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IllegalCharacter: return "IllegalCharacter";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::ConflictingFactor: return "ConflictingFactor";
    case ErrorCode::ResponseInTerms: return "ResponseInTerms";
    case ErrorCode::MalformedCsv: return "MalformedCsv";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NotCategorical: return "NotCategorical";
    case ErrorCode::EmptyAfterDeletion: return "EmptyAfterDeletion";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SingleLevel: return "SingleLevel";
    case ErrorCode::ZeroCountLevel: return "ZeroCountLevel";
    case ErrorCode::NonPositiveLog: return "NonPositiveLog";
    case ErrorCode::UnknownLevel: return "UnknownLevel";
    case ErrorCode::ResponseNotNumeric: return "ResponseNotNumeric";
    case ErrorCode::MissingValuesPresent: return "MissingValuesPresent";
    case ErrorCode::InterceptSuppressed: return "InterceptSuppressed";
    case ErrorCode::DuplicateColumn: return "DuplicateColumn";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IncompleteProfile: return "IncompleteProfile";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace catreg
