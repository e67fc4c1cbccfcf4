#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "catreg/bmi_examples.hpp"
#include "catreg/cli.hpp"
#include "catreg/encode.hpp"
#include "catreg/error.hpp"
#include "catreg/formula.hpp"
#include "catreg/oracle.hpp"
#include "catreg/solve.hpp"

namespace catreg::cli {
namespace {

struct Check {
  std::string name;
  std::function<std::string()> body;  // empty string on success, else the reason
};

std::string near(double got, double want, double tol, const std::string& what) {
  if (std::abs(got - want) <= tol) return {};
  return what + ": got " + std::to_string(got) + ", want " + std::to_string(want);
}

FitResult fit_formula(const Dataset& data, const std::string& formula, Refs refs = {},
                      ContrastKind scheme = ContrastKind::Treatment) {
  return fit(build_design(parse_formula(formula), data, scheme, refs));
}

std::string t_cdf_against_quadrature() {
  double worst = 0.0;
  for (double df : {1.0, 2.0, 5.0, 10.0, 30.0, 100.0, 1000.0}) {
    for (int k = -20; k <= 20; ++k) {
      const double t = 0.25 * k;
      worst = std::max(worst, std::abs(student_t_cdf(t, df) - oracle::t_cdf_quadrature(t, df)));
    }
  }
  if (worst < 1e-8) return {};
  return "max deviation " + std::to_string(worst);
}

std::string gender_table() {
  const auto r = fit_formula(oracle::synthesize(examples::gender_means()), "bmi ~ female");
  auto e = near(r.coefficients[0], 25.23, 1e-9, "intercept");
  return e.empty() ? near(r.coefficients[1], -0.51, 1e-9, "female") : e;
}

std::string education_relevel() {
  const Dataset d = oracle::synthesize(examples::education_means());
  const auto low = fit_formula(d, "bmi ~ edu");
  const auto mid = fit_formula(d, "bmi ~ edu", {{"edu", "middle"}});
  const double want_low[] = {26.12, -1.18, -1.83};
  const double want_mid[] = {24.94, 1.18, -0.65};
  for (int j = 0; j < 3; ++j) {
    if (auto e = near(low.coefficients[j], want_low[j], 1e-9, "ref low"); !e.empty()) return e;
    if (auto e = near(mid.coefficients[j], want_mid[j], 1e-9, "ref middle"); !e.empty()) return e;
  }
  for (std::size_t i = 0; i < low.fitted.size(); ++i) {
    if (auto e = near(low.fitted[i], mid.fitted[i], 1e-10, "fitted"); !e.empty()) return e;
  }
  return {};
}

std::string gender_education_interaction() {
  const auto r = fit_formula(oracle::synthesize(examples::gender_education_means()),
                             "bmi ~ female * edu");
  const double want[] = {26.07, 0.09, -0.82, -1.37, -0.65, -0.92};
  for (int j = 0; j < 6; ++j) {
    if (auto e = near(r.coefficients[j], want[j], 1e-9, r.labels[j].name); !e.empty()) return e;
  }
  return {};
}

std::string dummy_trap() {
  std::mt19937_64 rng(7);
  for (std::size_t k : {2u, 3u, 5u}) {
    const Dataset base = oracle::random_factorial(rng, {k}, 3, 6);
    const auto& f = std::get<CategoricalColumn>(base.column("f0"));
    std::vector<std::string> names;
    std::vector<Column> cols;
    std::string formula = "y ~ ";
    for (std::size_t l = 0; l < k; ++l) {
      NumericColumn d;
      for (auto c : f.codes) d.values.push_back(c == static_cast<std::int32_t>(l) ? 1.0 : 0.0);
      names.push_back("d" + std::to_string(l));
      cols.emplace_back(std::move(d));
      formula += (l ? " + d" : "d") + std::to_string(l);
    }
    names.push_back("y");
    cols.push_back(base.column("y"));
    try {
      fit_formula(Dataset(names, cols), formula);
      return "k=" + std::to_string(k) + ": no error raised";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RankDeficient || e.labels().size() != k + 1) {
        return "k=" + std::to_string(k) + ": " + e.what();
      }
    }
  }
  return {};
}

std::string saturated_cells() {
  std::mt19937_64 rng(11);
  for (unsigned trial = 0; trial < 20; ++trial) {
    const Dataset d = oracle::random_factorial(rng, {2u + trial % 3u, 2u + trial % 2u}, 1, 5);
    const auto r = fit_formula(d, "y ~ f0 * f1");
    const auto means = oracle::cell_means(d, {"f0", "f1"}, "y");
    const auto& f0 = std::get<CategoricalColumn>(d.column("f0"));
    const auto& f1 = std::get<CategoricalColumn>(d.column("f1"));
    for (std::size_t i = 0; i < d.n_rows(); ++i) {
      const double want = means.at({f0.levels[f0.codes[i]], f1.levels[f1.codes[i]]});
      if (auto e = near(r.fitted[i], want, 1e-9, "fitted vs cell mean"); !e.empty()) return e;
    }
  }
  return {};
}

std::string scheme_intercepts() {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset d = oracle::random_factorial(rng, {2 + static_cast<std::size_t>(trial % 4)}, 1, 9);
    const auto means = oracle::cell_means(d, {"f0"}, "y");
    double unweighted = 0.0;
    for (const auto& [k, m] : means) unweighted += m;
    unweighted /= static_cast<double>(means.size());
    const auto& y = std::get<NumericColumn>(d.column("y")).values;
    double grand = 0.0;
    for (double v : y) grand += v;
    grand /= static_cast<double>(y.size());
    const auto eff = fit_formula(d, "y ~ f0", {}, ContrastKind::Effect);
    const auto wef = fit_formula(d, "y ~ f0", {}, ContrastKind::WeightedEffect);
    if (auto e = near(eff.coefficients[0], unweighted, 1e-10, "effect intercept"); !e.empty()) return e;
    if (auto e = near(wef.coefficients[0], grand, 1e-10, "weighted intercept"); !e.empty()) return e;
  }
  return {};
}

}  // namespace

bool run_selftest(std::ostream& out) {
  const std::vector<Check> checks = {
      {"t-cdf matches quadrature oracle", t_cdf_against_quadrature},
      {"gender means: intercept 25.23, slope -0.51", gender_table},
      {"education means: releveling low -> middle", education_relevel},
      {"gender x education interaction coefficients", gender_education_interaction},
      {"dummy trap raises RankDeficient", dummy_trap},
      {"saturated two-factor fit equals cell means", saturated_cells},
      {"effect / weighted-effect intercepts", scheme_intercepts},
  };
  bool all = true;
  for (const auto& c : checks) {
    std::string failure;
    try {
      failure = c.body();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    out << (failure.empty() ? "PASS  " : "FAIL  ") << c.name;
    if (!failure.empty()) out << " (" << failure << ")";
    out << "\n";
    all = all && failure.empty();
  }
  return all;
}

}  // namespace catreg::cli
