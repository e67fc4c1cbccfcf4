#include "catreg/oracle.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "catreg/error.hpp"
#include "catreg/numeric_text.hpp"

namespace catreg::oracle {

void CellMeanSpec::validate() const {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (factors.empty()) bad("cell-mean spec has no factors");
  std::set<std::string> names{response};
  for (const auto& f : factors) {
    if (!names.insert(f.name).second) bad("duplicate column name '" + f.name + "'");
    if (f.levels.empty()) bad("factor '" + f.name + "' has no levels");
    std::set<std::string> seen;
    for (const auto& lv : f.levels) {
      if (!seen.insert(lv).second) bad("factor '" + f.name + "' repeats level '" + lv + "'");
      if (f.numeric && !parse_real(lv)) bad("numeric factor '" + f.name + "' has level '" + lv + "'");
    }
  }
  std::set<std::vector<std::string>> cells_seen;
  for (const auto& c : cells) {
    if (c.levels.size() != factors.size()) bad("cell has the wrong number of levels");
    for (std::size_t k = 0; k < factors.size(); ++k) {
      const auto& lv = factors[k].levels;
      if (std::find(lv.begin(), lv.end(), c.levels[k]) == lv.end()) {
        bad("'" + c.levels[k] + "' is not a level of '" + factors[k].name + "'");
      }
    }
    if (!cells_seen.insert(c.levels).second) bad("duplicate cell");
    if (c.count < 2) bad("every cell needs at least two rows");
    if (!std::isfinite(c.mean)) bad("cell mean must be finite");
  }
}

CellMeanSpec read_cell_mean_spec(std::istream& in) {
  CellMeanSpec spec;
  try {
    const auto doc = nlohmann::json::parse(in);
    spec.response = doc.value("response", std::string("y"));
    for (const auto& f : doc.at("factors")) {
      CellFactor cf;
      cf.name = f.at("name").get<std::string>();
      cf.levels = f.at("levels").get<std::vector<std::string>>();
      cf.numeric = f.value("numeric", false);
      spec.factors.push_back(std::move(cf));
    }
    for (const auto& c : doc.at("cells")) {
      Cell cell;
      cell.levels = c.at("levels").get<std::vector<std::string>>();
      cell.mean = c.at("mean").get<double>();
      const auto count = c.value("count", 2);
      if (count < 0) throw Error(ErrorCode::InvalidArgument, "cell count must be positive");
      cell.count = static_cast<std::size_t>(count);
      spec.cells.push_back(std::move(cell));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("invalid cell-mean spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

CellMeanSpec read_cell_mean_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_cell_mean_spec(in);
}

Dataset synthesize(const CellMeanSpec& spec, double spread) {
  spec.validate();
  if (!(spread >= 0.0) || !std::isfinite(spread)) {
    throw Error(ErrorCode::InvalidArgument, "spread must be a non-negative real");
  }
  std::vector<std::string> names;
  std::vector<Column> columns;
  std::vector<double> y;
  std::vector<std::vector<std::size_t>> level_rows(spec.factors.size());
  for (const auto& c : spec.cells) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < spec.factors.size(); ++k) {
      const auto& lv = spec.factors[k].levels;
      idx.push_back(static_cast<std::size_t>(std::find(lv.begin(), lv.end(), c.levels[k]) - lv.begin()));
    }
    for (std::size_t r = 0; r < c.count; ++r) {
      double v = c.mean;
      if (r + 1 < c.count || c.count % 2 == 0) v = r % 2 == 0 ? c.mean - spread : c.mean + spread;
      y.push_back(v);
      for (std::size_t k = 0; k < idx.size(); ++k) level_rows[k].push_back(idx[k]);
    }
  }
  for (std::size_t k = 0; k < spec.factors.size(); ++k) {
    const auto& f = spec.factors[k];
    names.push_back(f.name);
    if (f.numeric) {
      NumericColumn col;
      for (auto li : level_rows[k]) col.values.push_back(*parse_real(f.levels[li]));
      columns.emplace_back(std::move(col));
    } else {
      CategoricalColumn col;
      col.levels = f.levels;
      for (auto li : level_rows[k]) col.codes.push_back(static_cast<std::int32_t>(li));
      columns.emplace_back(std::move(col));
    }
  }
  names.push_back(spec.response);
  columns.emplace_back(NumericColumn{std::move(y)});
  return Dataset(std::move(names), std::move(columns));
}

std::map<CellKey, double> cell_means(const Dataset& data, const std::vector<std::string>& factors,
                                     const std::string& response) {
  std::vector<const Column*> cols;
  for (const auto& f : factors) cols.push_back(&data.column(f));
  const auto* y = std::get_if<NumericColumn>(&data.column(response));
  if (!y) throw Error(ErrorCode::ResponseNotNumeric, "response '" + response + "' is categorical");

  std::map<CellKey, std::pair<double, std::size_t>> acc;
  for (std::size_t i = 0; i < data.n_rows(); ++i) {
    if (y->missing(i)) continue;
    CellKey key;
    bool skip = false;
    for (const Column* c : cols) {
      if (cell_missing(*c, i)) {
        skip = true;
        break;
      }
      if (const auto* num = std::get_if<NumericColumn>(c)) {
        const double v = num->values[i];
        key.push_back(shortest_repr(v == 0.0 ? 0.0 : v));
      } else {
        const auto& cat = std::get<CategoricalColumn>(*c);
        key.push_back(cat.levels[static_cast<std::size_t>(cat.codes[i])]);
      }
    }
    if (skip) continue;
    auto& [sum, count] = acc[key];
    sum += y->values[i];
    ++count;
  }
  std::map<CellKey, double> out;
  for (const auto& [key, sc] : acc) out[key] = sc.first / static_cast<double>(sc.second);
  return out;
}

double t_cdf_quadrature(double t, double df) {
  if (!(df > 0.0)) throw Error(ErrorCode::InvalidArgument, "degrees of freedom must be positive");
  if (t == 0.0) return 0.5;
  const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                          0.5 * std::log(df * std::numbers::pi);
  auto density = [&](double u) {
    return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(u * u / df));
  };
  using boost::math::quadrature::gauss_kronrod;
  const double mass = gauss_kronrod<double, 31>::integrate(density, 0.0, std::abs(t), 12, 1e-13);
  return t > 0.0 ? 0.5 + mass : 0.5 - mass;
}

}  // namespace catreg::oracle

namespace catreg::oracle {

Dataset random_factorial(std::mt19937_64& rng, const std::vector<std::size_t>& levels_per_factor,
                         std::size_t min_count, std::size_t max_count) {
  if (levels_per_factor.empty() || min_count == 0 || min_count > max_count) {
    throw Error(ErrorCode::InvalidArgument, "invalid random_factorial parameters");
  }
  std::uniform_int_distribution<std::size_t> count_dist(min_count, max_count);
  std::uniform_real_distribution<double> mean_dist(18.0, 32.0);
  std::normal_distribution<double> noise(0.0, 1.5);

  const std::size_t nf = levels_per_factor.size();
  std::vector<CategoricalColumn> factors(nf);
  for (std::size_t k = 0; k < nf; ++k) {
    for (std::size_t l = 0; l < levels_per_factor[k]; ++l) factors[k].levels.push_back("L" + std::to_string(l));
  }
  NumericColumn y;
  std::vector<std::size_t> idx(nf, 0);
  for (;;) {
    const double mean = mean_dist(rng);
    const std::size_t count = count_dist(rng);
    for (std::size_t r = 0; r < count; ++r) {
      y.values.push_back(mean + noise(rng));
      for (std::size_t k = 0; k < nf; ++k) factors[k].codes.push_back(static_cast<std::int32_t>(idx[k]));
    }
    std::size_t d = nf;
    bool done = false;
    while (d > 0) {
      --d;
      if (++idx[d] < levels_per_factor[d]) break;
      idx[d] = 0;
      if (d == 0) done = true;
    }
    if (done) break;
  }
  std::vector<std::string> names;
  std::vector<Column> cols;
  for (std::size_t k = 0; k < nf; ++k) {
    names.push_back("f" + std::to_string(k));
    cols.emplace_back(std::move(factors[k]));
  }
  names.push_back("y");
  cols.emplace_back(std::move(y));
  return Dataset(std::move(names), std::move(cols));
}

}  // namespace catreg::oracle
