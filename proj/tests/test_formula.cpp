#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "catreg/error.hpp"
#include "catreg/formula.hpp"

using namespace catreg;

namespace {

ErrorCode error_of(std::string_view src) {
  try {
    parse_formula(src);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for: " << src;
  return ErrorCode::InvalidArgument;
}

std::set<std::string> term_set(const FormulaAst& ast) {
  std::set<std::string> out;
  for (const auto& t : ast.terms) {
    std::vector<std::string> names;
    for (const auto& f : t.factors) names.push_back(to_string(f));
    std::sort(names.begin(), names.end());
    std::string key;
    for (const auto& n : names) key += n + ":";
    out.insert(key);
  }
  return out;
}

}  // namespace

TEST(Tokenize, Kinds) {
  const auto toks = tokenize("bmi ~ female*edu + cat(year, ref=\"2000\")");
  std::vector<TokenKind> kinds;
  for (const auto& t : toks) kinds.push_back(t.kind);
  const std::vector<TokenKind> want = {
      TokenKind::Identifier, TokenKind::Tilde,  TokenKind::Identifier, TokenKind::Star,
      TokenKind::Identifier, TokenKind::Plus,   TokenKind::Identifier, TokenKind::LParen,
      TokenKind::Identifier, TokenKind::Comma,  TokenKind::Identifier, TokenKind::Equals,
      TokenKind::String,     TokenKind::RParen, TokenKind::End};
  EXPECT_EQ(kinds, want);
  EXPECT_EQ(toks[12].text, "2000");
  EXPECT_EQ(toks.back().position, 40u);
}

TEST(Tokenize, IllegalCharacterPosition) {
  try {
    tokenize("y ~ @a");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllegalCharacter);
    ASSERT_TRUE(e.position().has_value());
    EXPECT_EQ(*e.position(), 4u);
  }
}

TEST(Tokenize, UnterminatedString) {
  EXPECT_EQ(error_of("y ~ cat(a, ref=\"x)"), ErrorCode::SyntaxError);
}

TEST(Parse, MainEffects) {
  const auto ast = parse_formula("bmi ~ female");
  EXPECT_EQ(ast.response, "bmi");
  EXPECT_TRUE(ast.intercept);
  ASSERT_EQ(ast.terms.size(), 2u);
  EXPECT_EQ(ast.terms[0].kind, Term::Kind::Intercept);
  EXPECT_EQ(ast.terms[1].kind, Term::Kind::Main);
  EXPECT_EQ(ast.terms[1].factors[0].name, "female");
}

TEST(Parse, StarExpandsToMainsAndProduct) {
  const auto ast = parse_formula("bmi ~ female*edu");
  EXPECT_EQ(to_string(ast), "bmi ~ female + edu + female:edu");
}

TEST(Parse, ColonIsProductOnly) {
  const auto ast = parse_formula("y ~ a:b");
  ASSERT_EQ(ast.terms.size(), 2u);
  EXPECT_EQ(ast.terms[1].kind, Term::Kind::Interaction);
}

TEST(Parse, ThreeWayStarHasSevenTerms) {
  const auto ast = parse_formula("y ~ a*b*c");
  EXPECT_EQ(ast.terms.size(), 8u);  // intercept + 7
  EXPECT_EQ(ast.terms[7].factors.size(), 3u);
}

TEST(Parse, DuplicateTermsCollapse) {
  EXPECT_EQ(to_string(parse_formula("y ~ a + a*b + b")), "y ~ a + b + a:b");
}

TEST(Parse, Transforms) {
  const auto ast = parse_formula("bmi ~ center(log(age), at=log(18))");
  const auto& v = ast.terms[1].factors[0];
  ASSERT_EQ(v.transforms.size(), 2u);
  EXPECT_EQ(v.transforms[0].kind, Transform::Kind::Log);
  EXPECT_EQ(v.transforms[1].kind, Transform::Kind::Center);
  EXPECT_TRUE(v.transforms[1].at.is_log);
  EXPECT_DOUBLE_EQ(v.transforms[1].at.value(), std::log(18.0));
  EXPECT_EQ(to_string(v), "center(log(age), at=log(18))");
}

TEST(Parse, CatOptions) {
  const auto ast = parse_formula("y ~ cat(year, ref=\"2000\", scheme=effect)");
  const auto& v = ast.terms[1].factors[0];
  ASSERT_TRUE(v.cat.has_value());
  EXPECT_EQ(v.cat->ref, "2000");
  EXPECT_EQ(v.cat->scheme, ContrastKind::Effect);
}

TEST(Parse, InterceptForms) {
  EXPECT_FALSE(parse_formula("y ~ 0 + a").intercept);
  EXPECT_TRUE(parse_formula("y ~ 1 + a").intercept);
  EXPECT_EQ(parse_formula("y ~ 1").terms.size(), 1u);
}

TEST(Parse, Errors) {
  EXPECT_EQ(error_of("y ~"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_of("~ a"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_of("y ~ a +"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_of("y ~ (a)"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_of("y ~ sqrt(a)"), ErrorCode::UnknownFunction);
  EXPECT_EQ(error_of("y ~ y + a"), ErrorCode::ResponseInTerms);
  EXPECT_EQ(error_of("y ~ cat(a, ref=\"x\") + cat(a, ref=\"z\")"), ErrorCode::ConflictingFactor);
  EXPECT_EQ(error_of("y ~ log(log(a))"), ErrorCode::SyntaxError);
}

TEST(Parse, Variables) {
  const auto vars = variables(parse_formula("bmi ~ female*edu + log(age)"));
  EXPECT_EQ(vars, (std::vector<std::string>{"female", "edu", "age"}));
}

// Property: to_string(ast) parses back to the same AST.
TEST(FormulaProperty, RoundTrip) {
  const std::vector<std::string> atoms = {"a", "b", "c", "log(d)", "center(e, at=2.5)",
                                          "cat(f, ref=\"x\")", "center(log(g), at=log(3))"};
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    std::string src = "y ~ ";
    const int n_terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < n_terms; ++t) {
      if (t) src += " + ";
      const int n_fac = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < n_fac; ++k) {
        if (k) src += (rng() % 2) ? "*" : ":";
        src += atoms[rng() % atoms.size()];
      }
    }
    FormulaAst ast;
    try {
      ast = parse_formula(src);
    } catch (const Error&) {
      continue;  // e.g. a variable repeated inside one term
    }
    EXPECT_EQ(parse_formula(to_string(ast)), ast) << src << " -> " << to_string(ast);
  }
}

TEST(FormulaProperty, StarCommutes) {
  EXPECT_EQ(term_set(parse_formula("y ~ a*b")), term_set(parse_formula("y ~ b*a")));
  EXPECT_EQ(term_set(parse_formula("y ~ a*b*c")), term_set(parse_formula("y ~ c*a*b")));
}

TEST(FormulaProperty, MainsPrecedeInteractions) {
  const auto ast = parse_formula("y ~ a:b + c + a*d");
  std::size_t prev = 0;
  for (const auto& t : ast.terms) {
    EXPECT_GE(t.factors.size(), prev);
    prev = t.factors.size();
  }
}
