#include "catreg/encode.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "catreg/error.hpp"
#include "catreg/numeric_text.hpp"

namespace catreg {

Matrix contrast_matrix(std::size_t n_levels, std::size_t omitted, ContrastKind kind,
                       std::span<const std::size_t> counts) {
  if (n_levels < 2) throw Error(ErrorCode::SingleLevel, "a factor needs at least two levels");
  if (omitted >= n_levels) throw Error(ErrorCode::InvalidArgument, "omitted level out of range");
  Matrix c(n_levels, n_levels - 1, 0.0);
  std::size_t col = 0;
  for (std::size_t level = 0; level < n_levels; ++level) {
    if (level == omitted) continue;
    c(level, col) = 1.0;
    switch (kind) {
      case ContrastKind::Treatment:
        break;
      case ContrastKind::Effect:
        c(omitted, col) = -1.0;
        break;
      case ContrastKind::WeightedEffect:
        if (counts.size() != n_levels) {
          throw Error(ErrorCode::InvalidArgument, "weighted effect coding needs per-level counts");
        }
        c(omitted, col) = -static_cast<double>(counts[level]) / static_cast<double>(counts[omitted]);
        break;
    }
    ++col;
  }
  return c;
}

namespace {

void check_counts(const std::string& variable, const std::vector<std::string>& levels,
                  const std::vector<std::size_t>& counts, ContrastKind kind,
                  std::vector<std::string>* warnings) {
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (counts[j] != 0) continue;
    const std::string what = "level '" + levels[j] + "' of '" + variable + "' has no observations";
    if (kind == ContrastKind::WeightedEffect) {
      throw Error(ErrorCode::ZeroCountLevel, what + " (weighted effect coding divides by group sizes)");
    }
    if (warnings) warnings->push_back(what + "; its column is identically zero");
  }
}

}  // namespace

std::vector<EncodedColumn> encode_categorical(const CategoricalColumn& column,
                                              const ContrastScheme& scheme) {
  const std::size_t k = column.levels.size();
  if (k < 2) throw Error(ErrorCode::SingleLevel, "categorical column has a single level");
  auto omitted = column.level_index(scheme.omitted_level);
  if (!omitted) {
    throw Error(ErrorCode::UnknownLevel, "'" + scheme.omitted_level + "' is not a level");
  }
  for (std::size_t i = 0; i < column.codes.size(); ++i) {
    if (column.missing(i)) {
      throw Error(ErrorCode::MissingValuesPresent, "missing value in row " + std::to_string(i + 1))
          .at_row(i + 1);
    }
  }
  const auto counts = column.counts();
  check_counts("column", column.levels, counts, scheme.kind, nullptr);
  const Matrix coding = contrast_matrix(k, *omitted, scheme.kind, counts);

  std::vector<EncodedColumn> out;
  std::size_t col = 0;
  for (std::size_t level = 0; level < k; ++level) {
    if (level == *omitted) continue;
    EncodedColumn ec{column.levels[level], std::vector<double>(column.codes.size())};
    for (std::size_t i = 0; i < column.codes.size(); ++i) {
      ec.values[i] = coding(static_cast<std::size_t>(column.codes[i]), col);
    }
    out.push_back(std::move(ec));
    ++col;
  }
  return out;
}

std::vector<double> apply_transform(std::span<const double> values,
                                    const std::vector<Transform>& chain) {
  std::vector<double> out(values.begin(), values.end());
  for (const auto& t : chain) {
    if (t.kind == Transform::Kind::Log) {
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(out[i] > 0.0)) {
          throw Error(ErrorCode::NonPositiveLog, "log of non-positive value " + shortest_repr(out[i]) +
                                                     " in row " + std::to_string(i + 1))
              .at_row(i + 1);
        }
        out[i] = std::log(out[i]);
      }
    } else {
      const double c = t.at.value();
      for (double& v : out) v -= c;
    }
  }
  return out;
}

std::vector<std::string> factor_levels(const Dataset& data, std::string_view variable) {
  const Column& c = data.column(variable);
  if (const auto* cat = std::get_if<CategoricalColumn>(&c)) return cat->levels;
  const auto& num = std::get<NumericColumn>(c);
  std::set<double> distinct;
  for (double v : num.values) {
    if (!std::isnan(v)) distinct.insert(v == 0.0 ? 0.0 : v);
  }
  std::vector<std::string> out;
  for (double v : distinct) out.push_back(shortest_repr(v));
  return out;
}

std::vector<std::string> FactorCoding::column_names() const {
  std::vector<std::string> out;
  if (!categorical) {
    VarRef plain{ref.name, ref.transforms, std::nullopt};
    out.push_back(to_string(plain));
    return out;
  }
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (j != reference) out.push_back(levels[j]);
  }
  return out;
}

std::map<std::string, std::string> DesignInfo::references() const {
  std::map<std::string, std::string> out;
  for (const auto& f : factors) {
    if (f.categorical) out[f.ref.name] = f.reference_level();
  }
  return out;
}

std::map<std::string, ContrastKind> DesignInfo::schemes() const {
  std::map<std::string, ContrastKind> out;
  for (const auto& f : factors) {
    if (f.categorical) out[f.ref.name] = f.scheme;
  }
  return out;
}

namespace {

std::size_t first_missing_row(const Column& c) {
  const std::size_t n = std::visit(
      [](const auto& col) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(col)>, NumericColumn>) {
          return col.values.size();
        } else {
          return col.codes.size();
        }
      },
      c);
  for (std::size_t i = 0; i < n; ++i) {
    if (cell_missing(c, i)) return i + 1;
  }
  return 0;
}

// Level codes of a numeric column treated as categorical via cat().
std::vector<std::int32_t> numeric_codes(const NumericColumn& col,
                                        const std::vector<std::string>& levels) {
  std::unordered_map<std::string, std::int32_t> index;
  for (std::size_t j = 0; j < levels.size(); ++j) index.emplace(levels[j], static_cast<std::int32_t>(j));
  std::vector<std::int32_t> codes(col.values.size());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const double v = col.values[i] == 0.0 ? 0.0 : col.values[i];
    codes[i] = index.at(shortest_repr(v));
  }
  return codes;
}

ColumnFactor column_factor(const FactorCoding& f, std::size_t block_col) {
  ColumnFactor cf;
  cf.variable = f.ref.name;
  if (f.categorical) {
    cf.level = f.column_names()[block_col];
  } else if (!f.ref.transforms.empty()) {
    cf.transform = f.column_names()[0];
  }
  return cf;
}

std::string factor_column_name(const FactorCoding& f, std::size_t block_col) {
  if (f.categorical) return f.ref.name + "[" + f.column_names()[block_col] + "]";
  return f.column_names()[0];
}

// Visits every combination of block columns, first factor slowest.
template <typename Fn>
void for_each_combination(const std::vector<std::size_t>& widths, Fn&& fn) {
  std::vector<std::size_t> idx(widths.size(), 0);
  for (;;) {
    fn(idx);
    std::size_t d = widths.size();
    while (d > 0) {
      --d;
      if (++idx[d] < widths[d]) break;
      idx[d] = 0;
      if (d == 0) return;
    }
    if (widths.empty()) return;
  }
}

}  // namespace

DesignMatrix build_design(const FormulaAst& ast, const Dataset& data, ContrastKind default_scheme,
                          const Refs& refs, kernels::Backend backend) {
  if (!ast.intercept) {
    throw Error(ErrorCode::InterceptSuppressed,
                "models without an intercept are not supported (remove the leading '0 +')");
  }
  const Column& response_col = data.column(ast.response);
  const auto* response = std::get_if<NumericColumn>(&response_col);
  if (!response) {
    throw Error(ErrorCode::ResponseNotNumeric, "response '" + ast.response + "' is categorical");
  }
  if (auto row = first_missing_row(response_col)) {
    throw Error(ErrorCode::MissingValuesPresent,
                "response '" + ast.response + "' is missing in row " + std::to_string(row))
        .at_row(row);
  }

  const std::size_t n = data.n_rows();
  DesignInfo info;
  info.formula = ast;
  info.default_scheme = default_scheme;

  // Distinct variable references, first appearance order.
  std::vector<Matrix> blocks;
  auto factor_index = [&](const VarRef& ref) -> std::size_t {
    for (std::size_t i = 0; i < info.factors.size(); ++i) {
      if (info.factors[i].ref == ref) return i;
    }
    return info.factors.size();
  };

  for (const auto& term : ast.terms) {
    for (const auto& ref : term.factors) {
      if (factor_index(ref) < info.factors.size()) continue;
      const Column& col = data.column(ref.name);
      if (auto row = first_missing_row(col)) {
        throw Error(ErrorCode::MissingValuesPresent,
                    "variable '" + ref.name + "' is missing in row " + std::to_string(row))
            .at_row(row);
      }
      FactorCoding f;
      f.ref = ref;
      f.categorical = is_categorical(col) || ref.cat.has_value();
      if (!f.categorical) {
        auto it = refs.find(ref.name);
        if (it != refs.end()) {
          throw Error(ErrorCode::NotCategorical,
                      "reference level given for numeric variable '" + ref.name +
                          "'; wrap it in cat() to treat it as categorical");
        }
        const auto& num = std::get<NumericColumn>(col);
        auto values = apply_transform(num.values, ref.transforms);
        Matrix b(n, 1);
        std::copy(values.begin(), values.end(), b.col(0).begin());
        blocks.push_back(std::move(b));
        info.factors.push_back(std::move(f));
        continue;
      }
      if (!ref.transforms.empty()) {
        throw Error(ErrorCode::TypeMismatch, "transform applied to categorical variable '" +
                                                 ref.name + "'");
      }

      std::vector<std::int32_t> codes;
      if (const auto* cat = std::get_if<CategoricalColumn>(&col)) {
        f.levels = cat->levels;
        codes = cat->codes;
      } else {
        f.levels = factor_levels(data, ref.name);
        codes = numeric_codes(std::get<NumericColumn>(col), f.levels);
      }
      if (f.levels.size() < 2) {
        throw Error(ErrorCode::SingleLevel,
                    "variable '" + ref.name + "' has a single level '" +
                        (f.levels.empty() ? std::string() : f.levels[0]) + "'");
      }
      f.counts.assign(f.levels.size(), 0);
      for (auto c : codes) ++f.counts[static_cast<std::size_t>(c)];

      std::string ref_level = f.levels.front();
      if (ref.cat && ref.cat->ref) ref_level = *ref.cat->ref;
      if (auto it = refs.find(ref.name); it != refs.end()) ref_level = it->second;
      auto pos = std::find(f.levels.begin(), f.levels.end(), ref_level);
      if (pos == f.levels.end()) {
        throw Error(ErrorCode::UnknownLevel,
                    "'" + ref_level + "' is not a level of '" + ref.name + "'");
      }
      f.reference = static_cast<std::size_t>(pos - f.levels.begin());
      f.scheme = ref.cat && ref.cat->scheme ? *ref.cat->scheme : default_scheme;
      check_counts(ref.name, f.levels, f.counts, f.scheme, &info.warnings);
      f.coding = contrast_matrix(f.levels.size(), f.reference, f.scheme, f.counts);

      Matrix b(n, f.coding.cols());
      for (std::size_t c = 0; c < f.coding.cols(); ++c) {
        auto dst = b.col(c);
        for (std::size_t i = 0; i < n; ++i) dst[i] = f.coding(static_cast<std::size_t>(codes[i]), c);
      }
      blocks.push_back(std::move(b));
      info.factors.push_back(std::move(f));
    }
  }

  // Column layout.
  std::vector<ColumnLabel> labels;
  labels.push_back({"1", {}, std::string(kInterceptName)});
  std::size_t p = 1;
  for (const auto& term : ast.terms) {
    if (term.kind == Term::Kind::Intercept) continue;
    TermBlock tb;
    tb.term = term;
    tb.first_column = p;
    std::vector<std::size_t> widths;
    for (const auto& ref : term.factors) {
      tb.factors.push_back(factor_index(ref));
      widths.push_back(info.factors[tb.factors.back()].width());
    }
    const std::string term_text = to_string(term);
    for_each_combination(widths, [&](const std::vector<std::size_t>& idx) {
      ColumnLabel label;
      label.term = term_text;
      for (std::size_t d = 0; d < idx.size(); ++d) {
        const auto& f = info.factors[tb.factors[d]];
        label.factors.push_back(column_factor(f, idx[d]));
        if (d) label.name += "×";
        label.name += factor_column_name(f, idx[d]);
      }
      labels.push_back(std::move(label));
      ++tb.n_columns;
    });
    p += tb.n_columns;
    info.blocks.push_back(std::move(tb));
  }
  for (std::size_t a = 0; a < labels.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      if (labels[a].name == labels[b].name) {
        throw Error(ErrorCode::DuplicateColumn, "two design columns are both named '" +
                                                    labels[a].name + "'");
      }
    }
  }

  DesignMatrix design;
  design.values = Matrix(n, p, 1.0);
  for (const auto& tb : info.blocks) {
    std::vector<std::size_t> widths;
    for (auto fi : tb.factors) widths.push_back(info.factors[fi].width());
    std::size_t col = tb.first_column;
    for_each_combination(widths, [&](const std::vector<std::size_t>& idx) {
      auto dst = design.values.col(col++);
      for (std::size_t d = 0; d < idx.size(); ++d) {
        kernels::multiply_into(dst, blocks[tb.factors[d]].col(idx[d]), backend);
      }
    });
  }
  design.labels = std::move(labels);
  design.response = response->values;
  design.info = std::move(info);
  return design;
}

Refs relevel(const Refs& refs, const Dataset& data, const std::string& variable,
             const std::string& new_reference) {
  const auto lv = factor_levels(data, variable);
  if (std::find(lv.begin(), lv.end(), new_reference) == lv.end()) {
    throw Error(ErrorCode::UnknownLevel,
                "'" + new_reference + "' is not a level of '" + variable + "'");
  }
  Refs out = refs;
  out[variable] = new_reference;
  return out;
}

std::vector<double> encode_profile(const DesignInfo& info,
                                   const std::map<std::string, std::string>& profile) {
  std::vector<std::vector<double>> rows;
  for (const auto& f : info.factors) {
    auto it = profile.find(f.ref.name);
    if (it == profile.end()) {
      throw Error(ErrorCode::IncompleteProfile, "profile does not set '" + f.ref.name + "'");
    }
    const std::string& text = it->second;
    if (f.categorical) {
      std::string key = text;
      auto pos = std::find(f.levels.begin(), f.levels.end(), key);
      if (pos == f.levels.end()) {
        // cat() over a numeric column: accept any spelling of the same number.
        if (auto v = parse_real(text)) {
          key = shortest_repr(*v == 0.0 ? 0.0 : *v);
          pos = std::find(f.levels.begin(), f.levels.end(), key);
        }
      }
      if (pos == f.levels.end()) {
        throw Error(ErrorCode::UnknownLevel, "'" + text + "' is not a level of '" + f.ref.name + "'");
      }
      const auto level = static_cast<std::size_t>(pos - f.levels.begin());
      std::vector<double> row(f.coding.cols());
      for (std::size_t c = 0; c < row.size(); ++c) row[c] = f.coding(level, c);
      rows.push_back(std::move(row));
    } else {
      auto v = parse_real(text);
      if (!v) {
        throw Error(ErrorCode::TypeMismatch,
                    "'" + text + "' is not a number (variable '" + f.ref.name + "')");
      }
      const double x[1] = {*v};
      rows.push_back(apply_transform(x, f.ref.transforms));
    }
  }
  std::vector<double> out{1.0};
  for (const auto& tb : info.blocks) {
    std::vector<std::size_t> widths;
    for (auto fi : tb.factors) widths.push_back(info.factors[fi].width());
    for_each_combination(widths, [&](const std::vector<std::size_t>& idx) {
      double v = 1.0;
      for (std::size_t d = 0; d < idx.size(); ++d) v *= rows[tb.factors[d]][idx[d]];
      out.push_back(v);
    });
  }
  return out;
}

namespace {

void csv_cell(std::ostream& out, const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

void write_design_csv(std::ostream& out, const DesignMatrix& design) {
  csv_cell(out, design.info.formula.response);
  for (const auto& l : design.labels) {
    out << ',';
    csv_cell(out, l.name);
  }
  out << '\n';
  for (std::size_t i = 0; i < design.n_rows(); ++i) {
    out << shortest_repr(design.response[i]);
    for (std::size_t j = 0; j < design.n_cols(); ++j) out << ',' << shortest_repr(design.values(i, j));
    out << '\n';
  }
}

}  // namespace catreg
