#ifndef CATREG_NUMERIC_TEXT_HPP_
#define CATREG_NUMERIC_TEXT_HPP_

#include <optional>
#include <string>
#include <string_view>

namespace catreg {

// Shortest decimal spelling that parses back to the identical double.
std::string shortest_repr(double value);

// Locale-free parse of a finite real ("12", "-3.5", "1e-3"). Surrounding
// ASCII blanks are ignored; anything else, including inf/nan, yields nullopt.
std::optional<double> parse_real(std::string_view text);

}  // namespace catreg

#endif  // CATREG_NUMERIC_TEXT_HPP_
