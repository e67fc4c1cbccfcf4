#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "catreg/bmi_examples.hpp"
#include "catreg/encode.hpp"
#include "catreg/error.hpp"
#include "catreg/formula.hpp"
#include "catreg/oracle.hpp"

using namespace catreg;

namespace {

CategoricalColumn column(std::vector<std::string> levels, std::vector<std::int32_t> codes) {
  return CategoricalColumn{std::move(levels), std::move(codes)};
}

std::vector<std::string> names(const DesignMatrix& d) {
  std::vector<std::string> out;
  for (const auto& l : d.labels) out.push_back(l.name);
  return out;
}

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ContrastMatrix, Treatment) {
  const std::vector<std::size_t> counts{1, 1, 1};
  const Matrix m = contrast_matrix(3, 0, ContrastKind::Treatment, counts);
  ASSERT_EQ(m.rows(), 3u);
  ASSERT_EQ(m.cols(), 2u);
  EXPECT_EQ(m(0, 0), 0.0);
  EXPECT_EQ(m(0, 1), 0.0);
  EXPECT_EQ(m(1, 0), 1.0);
  EXPECT_EQ(m(2, 1), 1.0);
  EXPECT_EQ(m(1, 1), 0.0);
}

TEST(ContrastMatrix, Effect) {
  const std::vector<std::size_t> counts{1, 1, 1};
  const Matrix m = contrast_matrix(3, 1, ContrastKind::Effect, counts);
  EXPECT_EQ(m(1, 0), -1.0);
  EXPECT_EQ(m(1, 1), -1.0);
  EXPECT_EQ(m(0, 0), 1.0);
  EXPECT_EQ(m(2, 1), 1.0);
}

TEST(ContrastMatrix, WeightedEffect) {
  const std::vector<std::size_t> counts{10, 20, 5};
  const Matrix m = contrast_matrix(3, 2, ContrastKind::WeightedEffect, counts);
  EXPECT_DOUBLE_EQ(m(2, 0), -2.0);
  EXPECT_DOUBLE_EQ(m(2, 1), -4.0);
  const Matrix low = contrast_matrix(3, 0, ContrastKind::WeightedEffect, counts);
  EXPECT_DOUBLE_EQ(low(0, 0), -2.0);
  EXPECT_DOUBLE_EQ(low(0, 1), -0.5);
  EXPECT_EQ(low(1, 0), 1.0);
  EXPECT_EQ(low(2, 1), 1.0);
  const Matrix n = contrast_matrix(3, 1, ContrastKind::WeightedEffect, counts);
  EXPECT_DOUBLE_EQ(n(1, 0), -0.5);
  EXPECT_DOUBLE_EQ(n(1, 1), -0.25);
}

// Property: under weighted-effect coding every column sums to zero over rows.
TEST(ContrastMatrix, WeightedEffectColumnsSumToZero) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng() % 5;
    std::vector<std::size_t> counts(k);
    for (auto& c : counts) c = 1 + rng() % 30;
    const std::size_t omitted = rng() % k;
    const Matrix m = contrast_matrix(k, omitted, ContrastKind::WeightedEffect, counts);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < k; ++l) s += static_cast<double>(counts[l]) * m(l, j);
      EXPECT_NEAR(s, 0.0, 1e-12);
    }
  }
}

// Property: a treatment row is all zero (reference) or has a single 1.
TEST(ContrastMatrix, TreatmentRowsSumToZeroOrOne) {
  for (std::size_t k = 2; k <= 7; ++k) {
    for (std::size_t omitted = 0; omitted < k; ++omitted) {
      const std::vector<std::size_t> counts(k, 1);
      const Matrix m = contrast_matrix(k, omitted, ContrastKind::Treatment, counts);
      for (std::size_t l = 0; l < k; ++l) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(l, j);
        EXPECT_EQ(s, l == omitted ? 0.0 : 1.0);
      }
    }
  }
}

TEST(EncodeCategorical, TreatmentColumns) {
  const auto c = column({"low", "middle", "high"}, {0, 1, 2, 1});
  const auto cols = encode_categorical(c, {ContrastKind::Treatment, "low"});
  ASSERT_EQ(cols.size(), 2u);
  EXPECT_EQ(cols[0].level, "middle");
  EXPECT_EQ(cols[0].values, (std::vector<double>{0, 1, 0, 1}));
  EXPECT_EQ(cols[1].values, (std::vector<double>{0, 0, 1, 0}));
}

TEST(EncodeCategorical, Errors) {
  EXPECT_EQ(error_of([] { encode_categorical(column({"a"}, {0, 0}), {ContrastKind::Treatment, "a"}); }),
            ErrorCode::SingleLevel);
  EXPECT_EQ(error_of([] { encode_categorical(column({"a", "b"}, {0, 1}), {ContrastKind::Treatment, "z"}); }),
            ErrorCode::UnknownLevel);
  EXPECT_EQ(error_of([] {
              encode_categorical(column({"a", "b", "c"}, {0, 1}), {ContrastKind::WeightedEffect, "c"});
            }),
            ErrorCode::ZeroCountLevel);
  EXPECT_EQ(error_of([] { encode_categorical(column({"a", "b"}, {0, -1}), {ContrastKind::Treatment, "a"}); }),
            ErrorCode::MissingValuesPresent);
}

TEST(ApplyTransform, LogAndCenter) {
  const std::vector<double> age{18.0, 36.0};
  const auto out = apply_transform(age, parse_formula("y ~ center(log(age), at=log(18))").terms[1].factors[0].transforms);
  EXPECT_DOUBLE_EQ(out[0], 0.0);
  EXPECT_NEAR(out[1], std::log(2.0), 1e-15);
}

TEST(ApplyTransform, NonPositiveLogReportsRow) {
  const std::vector<double> v{1.0, 0.0};
  try {
    apply_transform(v, {Transform{Transform::Kind::Log, {}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveLog);
    EXPECT_EQ(e.row(), 2u);
  }
}

TEST(BuildDesign, GenderEducationLabels) {
  const Dataset d = oracle::synthesize(examples::gender_education_means());
  const auto design = build_design(parse_formula("bmi ~ female*edu"), d);
  EXPECT_EQ(names(design), (std::vector<std::string>{"(Intercept)", "female", "edu[middle]", "edu[high]",
                                                     "female×edu[middle]", "female×edu[high]"}));
  EXPECT_EQ(design.info.references().at("edu"), "low");
}

// Property: each interaction column is the elementwise product of its parents.
TEST(BuildDesign, InteractionColumnsAreExactProducts) {
  std::mt19937_64 rng(9);
  const Dataset d = examples::full_interaction_dataset(rng);
  const auto design = build_design(parse_formula(examples::kFullInteractionFormula), d);
  auto col = [&](const std::string& n) {
    for (std::size_t j = 0; j < design.n_cols(); ++j) {
      if (design.labels[j].name == n) return design.values.col(j);
    }
    throw std::runtime_error("missing column " + n);
  };
  for (const auto& l : design.labels) {
    if (!l.is_interaction()) continue;
    const auto pos = l.name.find("×");
    const auto a = col(l.name.substr(0, pos));
    const auto b = col(l.name.substr(pos + std::string("×").size()));
    const auto c = col(l.name);
    for (std::size_t i = 0; i < design.n_rows(); ++i) EXPECT_EQ(c[i], a[i] * b[i]);
  }
}

TEST(BuildDesign, FullModelHasSeventeenColumns) {
  std::mt19937_64 rng(2012);
  const Dataset d = examples::full_interaction_dataset(rng);
  const auto design = build_design(parse_formula(examples::kFullInteractionFormula), d);
  EXPECT_EQ(design.n_cols(), 17u);
  EXPECT_EQ(design.info.references().at("year"), "2000");
  EXPECT_EQ(design.info.references().at("children"), "none");
}

TEST(BuildDesign, RefsMapOverridesCatDefault) {
  std::mt19937_64 rng(2012);
  const Dataset d = examples::full_interaction_dataset(rng);
  const auto design = build_design(parse_formula(examples::kFullInteractionFormula), d,
                                   ContrastKind::Treatment, {{"year", "2011"}});
  EXPECT_EQ(design.info.references().at("year"), "2011");
}

TEST(BuildDesign, Errors) {
  const Dataset d = oracle::synthesize(examples::education_means());
  EXPECT_EQ(error_of([&] { build_design(parse_formula("bmi ~ 0 + edu"), d); }),
            ErrorCode::InterceptSuppressed);
  EXPECT_EQ(error_of([&] { build_design(parse_formula("bmi ~ nope"), d); }), ErrorCode::UnknownVariable);
  EXPECT_EQ(error_of([&] { build_design(parse_formula("edu ~ bmi"), d); }), ErrorCode::ResponseNotNumeric);
  EXPECT_EQ(error_of([&] { build_design(parse_formula("bmi ~ log(edu)"), d); }), ErrorCode::TypeMismatch);
  EXPECT_EQ(error_of([&] { build_design(parse_formula("bmi ~ edu"), d, ContrastKind::Treatment, {{"edu", "phd"}}); }),
            ErrorCode::UnknownLevel);
}

TEST(BuildDesign, ZeroCountLevelWarnsUnderTreatment) {
  Dataset d({"y", "g"}, {NumericColumn{{1, 2, 3, 4}}, column({"a", "b", "c"}, {0, 0, 1, 1})});
  const auto design = build_design(parse_formula("y ~ g"), d);
  EXPECT_FALSE(design.info.warnings.empty());
  EXPECT_EQ(error_of([&] { build_design(parse_formula("y ~ g"), d, ContrastKind::WeightedEffect); }),
            ErrorCode::ZeroCountLevel);
}

TEST(BuildDesign, SerialAndParallelAgree) {
  std::mt19937_64 rng(4);
  const Dataset d = examples::full_interaction_dataset(rng, 40);
  const auto ast = parse_formula(examples::kFullInteractionFormula);
  const auto a = build_design(ast, d, ContrastKind::Treatment, {}, kernels::Backend::Serial);
  const auto b = build_design(ast, d, ContrastKind::Treatment, {}, kernels::Backend::Parallel);
  EXPECT_EQ(a.values, b.values);
}

TEST(Relevel, ChangesReference) {
  const Dataset d = oracle::synthesize(examples::education_means());
  const Refs refs = relevel({}, d, "edu", "middle");
  EXPECT_EQ(refs.at("edu"), "middle");
  const auto design = build_design(parse_formula("bmi ~ edu"), d, ContrastKind::Treatment, refs);
  EXPECT_EQ(names(design), (std::vector<std::string>{"(Intercept)", "edu[low]", "edu[high]"}));
  EXPECT_EQ(error_of([&] { relevel({}, d, "edu", "phd"); }), ErrorCode::UnknownLevel);
  EXPECT_EQ(error_of([&] { relevel({}, d, "nope", "x"); }), ErrorCode::UnknownVariable);
}

TEST(FactorLevels, NumericColumnsSortAscending) {
  Dataset d({"x"}, {NumericColumn{{2011, 2000, 2005, 2000}}});
  EXPECT_EQ(factor_levels(d, "x"), (std::vector<std::string>{"2000", "2005", "2011"}));
}

TEST(EncodeProfile, MatchesDesignRow) {
  const Dataset d = oracle::synthesize(examples::gender_education_means());
  const auto design = build_design(parse_formula("bmi ~ female*edu"), d);
  const auto row = encode_profile(design.info, {{"female", "1"}, {"edu", "high"}});
  EXPECT_EQ(row, (std::vector<double>{1, 1, 0, 1, 0, 1}));
  EXPECT_EQ(error_of([&] { encode_profile(design.info, {{"female", "1"}}); }), ErrorCode::IncompleteProfile);
}

TEST(WriteDesignCsv, Header) {
  const Dataset d = oracle::synthesize(examples::gender_means());
  std::ostringstream out;
  write_design_csv(out, build_design(parse_formula("bmi ~ female"), d));
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "bmi,(Intercept),female");
}
