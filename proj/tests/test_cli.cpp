#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "catreg/cli.hpp"

using namespace catreg::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "catreg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(CATREG_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, FitGender) {
  const auto r = run_cli({"fit", "--data", data("bmi_gender.csv"), "--formula", "bmi ~ female"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("female          -.51"), std::string::npos) << r.out;
}

TEST(Cli, RelevelKeepsRss) {
  const auto a = run_cli({"fit", "--data", data("bmi_education.csv"), "--formula", "bmi ~ edu", "--output", "json"});
  const auto b = run_cli({"relevel", "--data", data("bmi_education.csv"), "--formula", "bmi ~ edu", "--ref",
                          "edu=middle", "--output", "json"});
  ASSERT_EQ(a.code, kExitOk);
  ASSERT_EQ(b.code, kExitOk) << b.err;
  const auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
  EXPECT_NEAR(ja["rss"].get<double>(), jb["rss"].get<double>(), 1e-10);
  EXPECT_EQ(jb["references"]["edu"], "middle");
  EXPECT_NEAR(jb["coefficients"][0]["estimate"].get<double>(), 24.94, 1e-9);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args = {"fit", "--data", data("bmi_full.csv"), "--formula",
                                         "bmi ~ female*edu + female*children + cat(year, ref=\"2000\") + "
                                         "center(log(age), at=log(18))",
                                         "--output", "json"};
  const auto a = run_cli(args), b = run_cli(args);
  EXPECT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["coefficients"].size(), 17u);
}

TEST(Cli, EncodeCsv) {
  const auto r = run_cli({"encode", "--data", data("bmi_education.csv"), "--formula", "bmi ~ edu"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "bmi,(Intercept),edu[middle],edu[high]");
}

TEST(Cli, Predict) {
  const auto r = run_cli({"predict", "--data", data("bmi_gender_education.csv"), "--formula", "bmi ~ female*edu",
                          "--profile", "female=1", "--profile", "edu=middle"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "bmi = 24.69\n");
}

TEST(Cli, TailAnnotation) {
  const auto r = run_cli({"fit", "--data", data("bmi_gender.csv"), "--formula", "bmi ~ female", "--tail",
                          "less:female"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("one-tailed (less)"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"fit", "--formula", "bmi ~ edu"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"relevel", "--data", data("bmi_education.csv"), "--formula", "bmi ~ edu"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"fit", "--data", data("bmi_education.csv"), "--formula", "bmi ~ edu", "--scheme", "helmert"}).code,
            kExitUsage);
  EXPECT_EQ(run_cli({"fit", "--data", data("bmi_education.csv"), "--formula", "bmi ~ edu", "--ref", "age=1"}).code,
            kExitUsage);
  EXPECT_EQ(run_cli({"fit", "--data", data("bmi_education.csv"), "--formula", "bmi ~ edu", "--tail", "less:nope"}).code,
            kExitUsage);
}

TEST(Cli, DataErrors) {
  EXPECT_EQ(run_cli({"fit", "--data", data("missing.csv"), "--formula", "bmi ~ edu"}).code, kExitData);
  EXPECT_EQ(run_cli({"fit", "--data", data("bmi_education.csv"), "--formula", "bmi ~ @"}).code, kExitData);
  EXPECT_EQ(run_cli({"fit", "--data", data("bmi_education.csv"), "--formula", "bmi ~ nope"}).code, kExitData);
  const auto r = run_cli({"fit", "--data", data("bmi_education.csv"), "--formula", "bmi ~ edu", "--ref", "edu=phd"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("UnknownLevel"), std::string::npos) << r.err;
}

TEST(Cli, Selftest) {
  const auto r = run_cli({"selftest"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
