#ifndef CATREG_FORMULA_HPP_
#define CATREG_FORMULA_HPP_

// Model-formula language.
//
//   formula  := ident "~" rhs
//   rhs      := element {"+" element}
//   element  := "0" | "1" | term          (constants only in first position)
//   term     := factor {(":" | "*") factor}
//   factor   := ident
//             | "log" "(" ident ")"
//             | "center" "(" (ident | "log" "(" ident ")") "," "at" "=" const ")"
//             | "cat" "(" ident {"," ("ref" | "scheme") "=" (string | number | ident)} ")"
//   const    := number | "log" "(" number ")"
//
// `a:b` is the product term only. `a*b` is `a + b + a:b`; a chain of k
// starred groups expands to every non-empty subset of the groups. A leading
// `0 +` suppresses the intercept (parsed, but rejected by build_design).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catreg/contrast.hpp"

namespace catreg {

enum class TokenKind {
  Identifier,
  Number,
  String,
  Tilde,
  Plus,
  Colon,
  Star,
  LParen,
  RParen,
  Comma,
  Equals,
  End,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;       // identifier name, number spelling, or unquoted string
  std::size_t position;   // byte offset into the source

  friend bool operator==(const Token&, const Token&) = default;
};

// Always ends with a TokenKind::End token positioned at source.size().
std::vector<Token> tokenize(std::string_view source);

// Constant accepted by center(..., at=...): either a literal or log(literal).
struct CenterAt {
  double number = 0.0;
  bool is_log = false;

  double value() const;
  friend bool operator==(const CenterAt&, const CenterAt&) = default;
};

struct Transform {
  enum class Kind { Log, Center };
  Kind kind = Kind::Log;
  CenterAt at;  // Center only

  friend bool operator==(const Transform&, const Transform&) = default;
};

struct CatSpec {
  std::optional<std::string> ref;
  std::optional<ContrastKind> scheme;

  friend bool operator==(const CatSpec&, const CatSpec&) = default;
};

// One variable as it appears inside a term, with its transforms applied
// left to right.
struct VarRef {
  std::string name;
  std::vector<Transform> transforms;
  std::optional<CatSpec> cat;

  friend bool operator==(const VarRef&, const VarRef&) = default;
};

struct Term {
  enum class Kind { Intercept, Main, Interaction };
  Kind kind = Kind::Intercept;
  std::vector<VarRef> factors;  // empty / one / two or more

  friend bool operator==(const Term&, const Term&) = default;
};

struct FormulaAst {
  std::string response;
  std::vector<Term> terms;  // Intercept first when present
  bool intercept = true;

  friend bool operator==(const FormulaAst&, const FormulaAst&) = default;
};

// Parse a token stream produced by tokenize().
FormulaAst parse(const std::vector<Token>& tokens);
inline FormulaAst parse_formula(std::string_view source) { return parse(tokenize(source)); }

// Formula-language spelling of a variable reference, e.g.
// `center(log(age), at=log(18))`. Round-trips through the parser.
std::string to_string(const VarRef& ref);

// Term spelling with `:` between factors; "1" for the intercept.
std::string to_string(const Term& term);

// Expanded formula, e.g. `y ~ a + b + a:b`. parse_formula(to_string(ast)) == ast.
std::string to_string(const FormulaAst& ast);

// Names of the variables used on the right-hand side, in first-appearance order.
std::vector<std::string> variables(const FormulaAst& ast);

}  // namespace catreg

#endif  // CATREG_FORMULA_HPP_
