#ifndef CATREG_CONTRAST_HPP_
#define CATREG_CONTRAST_HPP_

#include <optional>
#include <string_view>

namespace catreg {

// How a k-level factor becomes k-1 numeric columns.
//   Treatment:      omitted level is all zeros; intercept is its group mean.
//   Effect:         omitted level is -1 everywhere; intercept is the
//                   unweighted mean of the group means.
//   WeightedEffect: omitted level is -n_j/n_omitted in column j; intercept
//                   is the grand sample mean.
enum class ContrastKind { Treatment, Effect, WeightedEffect };

std::string_view to_string(ContrastKind kind);

// Accepts "treatment", "effect", "weighted" (and "weighted-effect").
std::optional<ContrastKind> parse_contrast_kind(std::string_view text);

}  // namespace catreg

#endif  // CATREG_CONTRAST_HPP_
