#include "catreg/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>

#include "catreg/error.hpp"
#include "catreg/numeric_text.hpp"

namespace catreg {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::String: return "string";
    case TokenKind::Tilde: return "'~'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Star: return "'*'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::Equals: return "'='";
    case TokenKind::End: return "end of formula";
  }
  return "?";
}

double CenterAt::value() const { return is_log ? std::log(number) : number; }

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}
bool digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = source.size();
  while (i < n) {
    const char c = source[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < n && ident_char(source[i])) ++i;
      out.push_back({TokenKind::Identifier, std::string(source.substr(start, i - start)), start});
      continue;
    }
    if (digit(c) || (c == '.' && i + 1 < n && digit(source[i + 1]))) {
      while (i < n && (digit(source[i]) || source[i] == '.')) ++i;
      if (i < n && (source[i] == 'e' || source[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (source[j] == '+' || source[j] == '-')) ++j;
        if (j < n && digit(source[j])) {
          i = j;
          while (i < n && digit(source[i])) ++i;
        }
      }
      std::string text(source.substr(start, i - start));
      if (!parse_real(text)) {
        throw Error(ErrorCode::SyntaxError, "malformed number '" + text + "' at offset " +
                                                std::to_string(start))
            .at_position(start);
      }
      out.push_back({TokenKind::Number, std::move(text), start});
      continue;
    }
    if (c == '"' || c == '\'') {
      const char quote = c;
      std::string text;
      ++i;
      bool closed = false;
      while (i < n) {
        if (source[i] == '\\' && i + 1 < n) {
          text.push_back(source[i + 1]);
          i += 2;
        } else if (source[i] == quote) {
          ++i;
          closed = true;
          break;
        } else {
          text.push_back(source[i++]);
        }
      }
      if (!closed) {
        throw Error(ErrorCode::SyntaxError,
                    "unterminated string starting at offset " + std::to_string(start))
            .at_position(start);
      }
      out.push_back({TokenKind::String, std::move(text), start});
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '~': kind = TokenKind::Tilde; break;
      case '+': kind = TokenKind::Plus; break;
      case ':': kind = TokenKind::Colon; break;
      case '*': kind = TokenKind::Star; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case ',': kind = TokenKind::Comma; break;
      case '=': kind = TokenKind::Equals; break;
      default:
        throw Error(ErrorCode::IllegalCharacter, "illegal character '" + std::string(1, c) +
                                                     "' at offset " + std::to_string(start))
            .at_position(start);
    }
    out.push_back({kind, std::string(1, c), start});
    ++i;
  }
  out.push_back({TokenKind::End, "", n});
  return out;
}

namespace {

// A `:`-product of factors; the unit that `*` crosses.
using Group = std::vector<VarRef>;

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
    if (tokens_.empty() || tokens_.back().kind != TokenKind::End) {
      throw Error(ErrorCode::InvalidArgument, "token stream must end with an End token");
    }
  }

  FormulaAst parse_formula() {
    FormulaAst ast;
    ast.response = expect(TokenKind::Identifier).text;
    expect(TokenKind::Tilde);

    std::vector<std::vector<VarRef>> raw_terms;
    bool first = true;
    bool saw_term = false;
    for (;;) {
      if (first && peek().kind == TokenKind::Number && (peek().text == "0" || peek().text == "1")) {
        ast.intercept = next().text == "1";
      } else {
        for (auto& t : parse_term()) raw_terms.push_back(std::move(t));
        saw_term = true;
      }
      first = false;
      if (peek().kind == TokenKind::Plus) {
        next();
        continue;
      }
      break;
    }
    expect(TokenKind::End, {TokenKind::Plus, TokenKind::Colon, TokenKind::Star, TokenKind::End});
    (void)saw_term;

    assemble(ast, std::move(raw_terms));
    return ast;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::End) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::vector<TokenKind> expected) const {
    const Token& t = peek();
    std::string msg = "at offset " + std::to_string(t.position) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += to_string(expected[i]);
    }
    msg += ", found ";
    msg += t.kind == TokenKind::End ? std::string("end of formula") : "'" + t.text + "'";
    throw Error(ErrorCode::SyntaxError, msg).at_position(t.position);
  }

  [[noreturn]] void fail_message(const Token& at, const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, "at offset " + std::to_string(at.position) + ": " + what)
        .at_position(at.position);
  }

  const Token& expect(TokenKind kind, std::vector<TokenKind> expected = {}) {
    if (peek().kind != kind) fail(expected.empty() ? std::vector<TokenKind>{kind} : expected);
    return next();
  }

  // term := factor {(":" | "*") factor}; returns the expanded product terms.
  std::vector<std::vector<VarRef>> parse_term() {
    std::vector<Group> groups(1);
    groups.back().push_back(parse_factor());
    while (peek().kind == TokenKind::Colon || peek().kind == TokenKind::Star) {
      if (next().kind == TokenKind::Star) groups.emplace_back();
      groups.back().push_back(parse_factor());
    }
    const std::size_t g = groups.size();
    if (g >= 20) fail_message(peek(), "too many crossed groups");

    // Every non-empty subset of the starred groups, by size then position.
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m < (1u << g); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
      return __builtin_popcount(a) < __builtin_popcount(b);
    });
    std::vector<std::vector<VarRef>> out;
    for (std::uint32_t m : masks) {
      std::vector<VarRef> product;
      for (std::size_t k = 0; k < g; ++k) {
        if (!(m & (1u << k))) continue;
        product.insert(product.end(), groups[k].begin(), groups[k].end());
      }
      out.push_back(std::move(product));
    }
    return out;
  }

  VarRef parse_factor() {
    const Token& name = peek();
    if (name.kind != TokenKind::Identifier) fail({TokenKind::Identifier});
    next();
    if (peek().kind != TokenKind::LParen) return VarRef{name.text, {}, std::nullopt};

    const Token& open = next();
    (void)open;
    if (name.text == "log") {
      VarRef inner = parse_plain_identifier();
      expect(TokenKind::RParen);
      inner.transforms.push_back({Transform::Kind::Log, {}});
      return inner;
    }
    if (name.text == "center") {
      VarRef inner;
      if (peek().kind == TokenKind::Identifier && peek().text == "log" &&
          tokens_[pos_ + 1].kind == TokenKind::LParen) {
        next();
        next();
        inner = parse_plain_identifier();
        expect(TokenKind::RParen);
        inner.transforms.push_back({Transform::Kind::Log, {}});
      } else {
        inner = parse_plain_identifier();
      }
      expect(TokenKind::Comma, {TokenKind::Comma});
      const Token& key = expect(TokenKind::Identifier);
      if (key.text != "at") fail_message(key, "center() takes a single 'at=' argument");
      expect(TokenKind::Equals);
      CenterAt at = parse_constant();
      expect(TokenKind::RParen);
      inner.transforms.push_back({Transform::Kind::Center, at});
      return inner;
    }
    if (name.text == "cat") {
      VarRef inner = parse_plain_identifier();
      CatSpec spec;
      while (peek().kind == TokenKind::Comma) {
        next();
        const Token& key = expect(TokenKind::Identifier);
        expect(TokenKind::Equals);
        const Token& val = peek();
        if (val.kind != TokenKind::String && val.kind != TokenKind::Number &&
            val.kind != TokenKind::Identifier) {
          fail({TokenKind::String, TokenKind::Number, TokenKind::Identifier});
        }
        next();
        if (key.text == "ref") {
          if (spec.ref) fail_message(key, "duplicate 'ref' argument");
          spec.ref = val.text;
        } else if (key.text == "scheme") {
          if (spec.scheme) fail_message(key, "duplicate 'scheme' argument");
          auto kind = parse_contrast_kind(val.text);
          if (!kind) fail_message(val, "unknown contrast scheme '" + val.text + "'");
          spec.scheme = *kind;
        } else {
          fail_message(key, "cat() accepts only 'ref=' and 'scheme=' arguments");
        }
      }
      expect(TokenKind::RParen, {TokenKind::Comma, TokenKind::RParen});
      inner.cat = spec;
      return inner;
    }
    throw Error(ErrorCode::UnknownFunction, "unknown function '" + name.text + "' at offset " +
                                                std::to_string(name.position))
        .at_position(name.position);
  }

  // Function arguments must be bare variables; deeper nesting is rejected.
  VarRef parse_plain_identifier() {
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier) fail({TokenKind::Identifier});
    next();
    if (peek().kind == TokenKind::LParen) {
      fail_message(t, "transform '" + t.text + "(...)' cannot be nested here");
    }
    return VarRef{t.text, {}, std::nullopt};
  }

  CenterAt parse_constant() {
    const Token& t = peek();
    if (t.kind == TokenKind::Number) {
      next();
      return {*parse_real(t.text), false};
    }
    if (t.kind == TokenKind::Identifier && t.text == "log") {
      next();
      expect(TokenKind::LParen);
      const Token& num = expect(TokenKind::Number);
      double v = *parse_real(num.text);
      if (!(v > 0.0)) fail_message(num, "log() of a non-positive constant");
      expect(TokenKind::RParen);
      return {v, true};
    }
    fail({TokenKind::Number, TokenKind::Identifier});
  }

  void assemble(FormulaAst& ast, std::vector<std::vector<VarRef>> raw_terms) {
    // Canonical factor order is first appearance anywhere in the formula.
    std::vector<VarRef> order;
    for (const auto& t : raw_terms) {
      for (const auto& f : t) {
        if (std::find(order.begin(), order.end(), f) == order.end()) order.push_back(f);
      }
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i].name == ast.response) {
        throw Error(ErrorCode::ResponseInTerms,
                    "response '" + ast.response + "' also appears as a predictor");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (order[i].name == order[j].name && (order[i].cat || order[j].cat)) {
          throw Error(ErrorCode::ConflictingFactor,
                      "variable '" + order[i].name + "' is used with conflicting specifications '" +
                          to_string(order[j]) + "' and '" + to_string(order[i]) + "'");
        }
      }
    }
    auto rank = [&](const VarRef& f) {
      return std::find(order.begin(), order.end(), f) - order.begin();
    };

    std::vector<Term> terms;
    for (auto& factors : raw_terms) {
      std::vector<VarRef> unique;
      for (auto& f : factors) {
        if (std::find(unique.begin(), unique.end(), f) == unique.end()) unique.push_back(f);
      }
      std::sort(unique.begin(), unique.end(),
                [&](const VarRef& a, const VarRef& b) { return rank(a) < rank(b); });
      Term term;
      term.kind = unique.size() == 1 ? Term::Kind::Main : Term::Kind::Interaction;
      term.factors = std::move(unique);
      if (std::find(terms.begin(), terms.end(), term) == terms.end()) {
        terms.push_back(std::move(term));
      }
    }
    std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return a.factors.size() < b.factors.size();
    });

    // Main effects now lead, so re-derive first appearance from the sorted
    // list until stable; the printed formula then parses back unchanged.
    for (int pass = 0; pass < 64; ++pass) {
      order.clear();
      for (const auto& t : terms) {
        for (const auto& f : t.factors) {
          if (std::find(order.begin(), order.end(), f) == order.end()) order.push_back(f);
        }
      }
      bool changed = false;
      for (auto& t : terms) {
        auto before = t.factors;
        std::sort(t.factors.begin(), t.factors.end(),
                  [&](const VarRef& a, const VarRef& b) { return rank(a) < rank(b); });
        changed = changed || before != t.factors;
      }
      if (!changed) break;
    }

    if (ast.intercept) ast.terms.push_back(Term{Term::Kind::Intercept, {}});
    for (auto& t : terms) ast.terms.push_back(std::move(t));
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string constant_text(const CenterAt& at) {
  return at.is_log ? "log(" + shortest_repr(at.number) + ")" : shortest_repr(at.number);
}

}  // namespace

FormulaAst parse(const std::vector<Token>& tokens) { return Parser(tokens).parse_formula(); }

std::string to_string(const VarRef& ref) {
  std::string s = ref.name;
  for (const auto& t : ref.transforms) {
    if (t.kind == Transform::Kind::Log) {
      s = "log(" + s + ")";
    } else {
      s = "center(" + s + ", at=" + constant_text(t.at) + ")";
    }
  }
  if (ref.cat) {
    s = "cat(" + s;
    if (ref.cat->ref) s += ", ref=" + quote(*ref.cat->ref);
    if (ref.cat->scheme) s += ", scheme=" + std::string(to_string(*ref.cat->scheme));
    s += ")";
  }
  return s;
}

std::string to_string(const Term& term) {
  if (term.kind == Term::Kind::Intercept) return "1";
  std::string s;
  for (std::size_t i = 0; i < term.factors.size(); ++i) {
    if (i) s += ":";
    s += to_string(term.factors[i]);
  }
  return s;
}

std::string to_string(const FormulaAst& ast) {
  std::string s = ast.response + " ~ ";
  bool first = true;
  if (!ast.intercept) {
    s += "0";
    first = false;
  }
  for (const auto& t : ast.terms) {
    if (t.kind == Term::Kind::Intercept) continue;
    if (!first) s += " + ";
    s += to_string(t);
    first = false;
  }
  if (first) s += "1";
  return s;
}

std::vector<std::string> variables(const FormulaAst& ast) {
  std::vector<std::string> out;
  for (const auto& t : ast.terms) {
    for (const auto& f : t.factors) {
      if (std::find(out.begin(), out.end(), f.name) == out.end()) out.push_back(f.name);
    }
  }
  return out;
}

}  // namespace catreg
