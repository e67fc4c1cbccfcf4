#include "catreg/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "catreg/error.hpp"

namespace catreg {

std::string format_number(double value, int places) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  const double scale = std::pow(10.0, places);
  double r = std::round(value * scale) / scale;
  if (r == 0.0) r = 0.0;  // no "-.00"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, r);
  std::string s = buf;
  if (s.rfind("0.", 0) == 0) {
    s.erase(0, 1);
  } else if (s.rfind("-0.", 0) == 0) {
    s.erase(1, 1);
  }
  return s;
}

std::string format_p(double p) {
  if (std::isnan(p)) return "nan";
  if (p < 0.01) return "<.01";
  return format_number(p, 2);
}

TableLayout make_layout(const FitResult& fit, const ReportOptions& options) {
  TableLayout layout;
  layout.rounding = options.rounding;
  const auto& info = fit.info;
  const bool has_interactions = std::any_of(info.blocks.begin(), info.blocks.end(),
                                            [](const TermBlock& b) { return b.factors.size() > 1; });
  const bool sections = options.sections.value_or(has_interactions);

  if (sections) layout.rows.push_back({TableRow::Kind::Section, "Main effects", 0});
  layout.rows.push_back({TableRow::Kind::Coefficient, "a", 0});

  std::set<std::size_t> referenced;
  bool in_interactions = false;
  for (const auto& block : info.blocks) {
    if (sections && !in_interactions && block.factors.size() > 1) {
      layout.rows.push_back({TableRow::Kind::Section, "Interaction effects", 0});
      in_interactions = true;
    }
    for (auto fi : block.factors) {
      const auto& f = info.factors[fi];
      if (!f.categorical || !referenced.insert(fi).second) continue;
      layout.rows.push_back(
          {TableRow::Kind::Reference, f.ref.name + "[" + f.reference_level() + "]", 0});
    }
    for (std::size_t c = 0; c < block.n_columns; ++c) {
      const std::size_t j = block.first_column + c;
      layout.rows.push_back({TableRow::Kind::Coefficient, fit.labels[j].name, j});
    }
  }
  return layout;
}

namespace {

// Display columns of UTF-8 text (continuation bytes take no width).
std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++w;
  }
  return w;
}

std::string pad_right(const std::string& s, std::size_t width) {
  const std::size_t w = display_width(s);
  return w >= width ? s : s + std::string(width - w, ' ');
}

std::string pad_left(const std::string& s, std::size_t width) {
  const std::size_t w = display_width(s);
  return w >= width ? s : std::string(width - w, ' ') + s;
}

const char* direction_name(Direction d) { return d == Direction::Greater ? "greater" : "less"; }

std::optional<std::size_t> tail_index(const FitResult& fit, const ReportOptions& options) {
  if (!options.tail) return std::nullopt;
  return fit.index_of(options.tail->label);
}

}  // namespace

std::string render_text(const FitResult& fit, const ReportOptions& options) {
  const TableLayout layout = make_layout(fit, options);
  const auto tail = tail_index(fit, options);
  const int places = layout.rounding;

  const std::vector<std::string> headers = {"coefficients", "standard error", "t-value",
                                            "p-value (2-tailed)"};
  std::vector<std::vector<std::string>> cells;
  std::size_t label_width = 0;
  for (const auto& row : layout.rows) {
    label_width = std::max(label_width, display_width(row.label));
    if (row.kind != TableRow::Kind::Coefficient) {
      cells.push_back(row.kind == TableRow::Kind::Reference ? std::vector<std::string>{"reference"}
                                                            : std::vector<std::string>{});
      continue;
    }
    const std::size_t j = row.coefficient;
    std::string p = format_p(fit.p_two_tailed[j]);
    std::vector<std::string> r = {format_number(fit.coefficients[j], places),
                                  format_number(fit.std_errors[j], places),
                                  format_number(fit.t_values[j], places), p};
    if (tail && *tail == j) {
      r[3] = format_p(one_tailed_p(fit.coefficients[j], fit.p_two_tailed[j], options.tail->direction));
      r.push_back("one-tailed (" + std::string(direction_name(options.tail->direction)) + ")");
    }
    cells.push_back(std::move(r));
  }

  std::ostringstream out;
  out << std::string(label_width, ' ');
  for (const auto& h : headers) out << "  " << h;
  out << '\n';
  for (std::size_t r = 0; r < layout.rows.size(); ++r) {
    const auto& row = layout.rows[r];
    std::string line = pad_right(row.label, label_width);
    if (row.kind == TableRow::Kind::Reference) {
      line += "  " + pad_left(cells[r][0], headers[0].size());
    } else if (row.kind == TableRow::Kind::Coefficient) {
      for (std::size_t c = 0; c < headers.size(); ++c) {
        line += "  " + pad_left(cells[r][c], headers[c].size());
      }
      if (cells[r].size() > headers.size()) line += "  " + cells[r].back();
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  out << "n = " << fit.n_obs << ", residual df = " << fit.df_residual
      << ", R-squared = " << format_number(fit.r_squared, places) << '\n';
  return out.str();
}

std::string render_json(const FitResult& fit, const ReportOptions& options) {
  using nlohmann::ordered_json;
  const auto tail = tail_index(fit, options);
  ordered_json doc;
  doc["formula"] = to_string(fit.info.formula);
  doc["response"] = fit.info.formula.response;
  doc["n"] = fit.n_obs;
  doc["df_residual"] = fit.df_residual;
  doc["rss"] = fit.rss;
  doc["sigma2"] = fit.sigma2;
  doc["r_squared"] = fit.r_squared;
  doc["default_scheme"] = std::string(to_string(fit.info.default_scheme));

  ordered_json refs = ordered_json::object();
  ordered_json schemes = ordered_json::object();
  for (const auto& f : fit.info.factors) {
    if (!f.categorical) continue;
    refs[f.ref.name] = f.reference_level();
    schemes[f.ref.name] = std::string(to_string(f.scheme));
  }
  doc["references"] = std::move(refs);
  doc["schemes"] = std::move(schemes);

  ordered_json coefs = ordered_json::array();
  for (std::size_t j = 0; j < fit.n_coefficients(); ++j) {
    ordered_json c;
    c["label"] = fit.labels[j].name;
    c["term"] = fit.labels[j].term;
    c["estimate"] = fit.coefficients[j];
    c["std_error"] = fit.std_errors[j];
    c["t"] = fit.t_values[j];
    c["p_two_tailed"] = fit.p_two_tailed[j];
    coefs.push_back(std::move(c));
  }
  doc["coefficients"] = std::move(coefs);

  ordered_json cov = ordered_json::array();
  for (std::size_t a = 0; a < fit.cov.rows(); ++a) {
    ordered_json row = ordered_json::array();
    for (std::size_t b = 0; b < fit.cov.cols(); ++b) row.push_back(fit.cov(a, b));
    cov.push_back(std::move(row));
  }
  doc["covariance"] = std::move(cov);

  if (tail) {
    ordered_json t;
    t["label"] = options.tail->label;
    t["direction"] = direction_name(options.tail->direction);
    t["p"] = one_tailed_p(fit.coefficients[*tail], fit.p_two_tailed[*tail], options.tail->direction);
    doc["one_tailed"] = std::move(t);
  }
  doc["warnings"] = fit.info.warnings;
  return doc.dump(2) + "\n";
}

}  // namespace catreg
