#include <sstream>

#include <gtest/gtest.h>

#include "catreg/dataset.hpp"
#include "catreg/error.hpp"

using namespace catreg;

namespace {

Dataset csv(const std::string& text, const Schema& schema = {}) {
  std::istringstream in(text);
  return read_csv(in, schema);
}

ErrorCode csv_error(const std::string& text, const Schema& schema = {}) {
  try {
    csv(text, schema);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ReadCsv, InfersTypes) {
  const auto d = csv("bmi,edu,female\n25.1,low,0\n24,high,1\n");
  EXPECT_EQ(d.n_rows(), 2u);
  EXPECT_FALSE(is_categorical(d.column("bmi")));
  EXPECT_TRUE(is_categorical(d.column("edu")));
  EXPECT_FALSE(is_categorical(d.column("female")));
  EXPECT_EQ(levels(d, "edu"), (std::vector<std::string>{"low", "high"}));
}

TEST(ReadCsv, QuotedFieldsAndMissing) {
  const auto d = csv("name,x\n\"a, b\",1\n\"say \"\"hi\"\"\",NA\nc,\n");
  const auto& name = std::get<CategoricalColumn>(d.column("name"));
  EXPECT_EQ(name.levels[0], "a, b");
  EXPECT_EQ(name.levels[1], "say \"hi\"");
  const auto& x = std::get<NumericColumn>(d.column("x"));
  EXPECT_FALSE(x.missing(0));
  EXPECT_TRUE(x.missing(1));
  EXPECT_TRUE(x.missing(2));
}

TEST(ReadCsv, CrLfAndBom) {
  const auto d = csv("\xEF\xBB\xBFy,g\r\n1,a\r\n2,b\r\n");
  EXPECT_TRUE(d.has("y"));
  EXPECT_EQ(d.n_rows(), 2u);
}

TEST(ReadCsv, Errors) {
  EXPECT_EQ(csv_error(""), ErrorCode::EmptyInput);
  EXPECT_EQ(csv_error("a,b\n1,2\n3\n"), ErrorCode::RaggedRow);
  EXPECT_EQ(csv_error("a,a\n1,2\n"), ErrorCode::MalformedCsv);
}

TEST(ReadCsv, RaggedRowNumber) {
  try {
    csv("a,b\n1,2\n3\n");
    FAIL();
  } catch (const Error& e) {
    ASSERT_TRUE(e.row().has_value());
    EXPECT_EQ(*e.row(), 3u);
  }
}

TEST(ReadCsv, SchemaControlsTypesAndLevelOrder) {
  Schema s;
  s.columns["edu"] = {ColumnSchema::Type::Categorical, std::vector<std::string>{"low", "middle", "high"}};
  s.columns["year"] = {ColumnSchema::Type::Categorical, std::nullopt};
  const auto d = csv("edu,year\nhigh,2000\nlow,2005\n", s);
  EXPECT_EQ(levels(d, "edu"), (std::vector<std::string>{"low", "middle", "high"}));
  EXPECT_TRUE(is_categorical(d.column("year")));
  EXPECT_EQ(std::get<CategoricalColumn>(d.column("edu")).counts(),
            (std::vector<std::size_t>{1, 0, 1}));
}

TEST(ReadCsv, SchemaViolations) {
  Schema s;
  s.columns["x"] = {ColumnSchema::Type::Numeric, std::nullopt};
  EXPECT_EQ(csv_error("x\n1\nabc\n", s), ErrorCode::TypeMismatch);
  Schema t;
  t.columns["g"] = {ColumnSchema::Type::Categorical, std::vector<std::string>{"a"}};
  EXPECT_EQ(csv_error("g\na\nb\n", t), ErrorCode::UnknownLevel);
  Schema u;
  u.columns["zz"] = {ColumnSchema::Type::Numeric, std::nullopt};
  EXPECT_EQ(csv_error("g\na\n", u), ErrorCode::UnknownVariable);
}

TEST(SchemaJson, Parses) {
  std::istringstream in(
      R"({"columns": {"edu": {"type": "categorical", "levels": ["low","middle","high"]},
                     "bmi": {"type": "numeric"}}})");
  const auto s = read_schema_json(in);
  EXPECT_EQ(s.columns.at("bmi").type, ColumnSchema::Type::Numeric);
  EXPECT_EQ(s.columns.at("edu").levels->size(), 3u);
}

TEST(WriteCsv, RoundTrips) {
  const auto d = csv("y,g,note\n0.1,a,\"x,y\"\nNA,b,z\n1e-300,a,z\n");
  std::ostringstream out;
  write_csv(out, d);
  EXPECT_EQ(csv(out.str()), d);
}

TEST(Dataset, Determinism) {
  const std::string text = "y,g\n1.5,b\n2,a\n3,b\n";
  EXPECT_EQ(csv(text), csv(text));
}

TEST(Dataset, RejectsRaggedColumns) {
  EXPECT_THROW(Dataset({"a", "b"}, {NumericColumn{{1.0}}, NumericColumn{{1.0, 2.0}}}), Error);
  EXPECT_THROW(Dataset({"a", "a"}, {NumericColumn{{1.0}}, NumericColumn{{1.0}}}), Error);
}

TEST(Dataset, UnknownColumnAndNotCategorical) {
  const auto d = csv("y,g\n1,a\n");
  try {
    d.column("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownVariable);
  }
  try {
    levels(d, "y");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCategorical);
  }
}

TEST(ListwiseDelete, DropsRowsWithMissingModelValues) {
  const auto d = csv("y,g,other\n1,a,NA\nNA,b,1\n3,,1\n4,b,2\n");
  const auto kept = listwise_delete(d, {"y", "g"});
  EXPECT_EQ(kept.n_rows(), 2u);
  EXPECT_EQ(std::get<NumericColumn>(kept.column("y")).values, (std::vector<double>{1, 4}));
  // Levels survive even if they lose rows.
  EXPECT_EQ(levels(kept, "g"), levels(d, "g"));
}

TEST(ListwiseDelete, Idempotent) {
  const auto d = csv("y,g\n1,a\nNA,b\n3,NA\n4,b\n");
  const auto once = listwise_delete(d, {"y", "g"});
  EXPECT_EQ(listwise_delete(once, {"y", "g"}), once);
  const auto full = csv("y,g\n1,a\n2,b\n");
  EXPECT_EQ(listwise_delete(full, {"y", "g"}), full);
}

TEST(ListwiseDelete, EmptyAfterDeletion) {
  const auto d = csv("y,g\nNA,a\n2,NA\n");
  try {
    listwise_delete(d, {"y", "g"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyAfterDeletion);
  }
}

TEST(SelectRows, Reorders) {
  const auto d = csv("y\n1\n2\n3\n");
  const auto s = select_rows(d, {2, 0});
  EXPECT_EQ(std::get<NumericColumn>(s.column("y")).values, (std::vector<double>{3, 1}));
}
