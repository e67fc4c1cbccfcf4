#include "catreg/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "catreg/error.hpp"

namespace catreg {

std::size_t FitResult::index_of(std::string_view label) const {
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j].name == label) return j;
  }
  throw Error(ErrorCode::UnknownLabel, "no coefficient named '" + std::string(label) + "'");
}

namespace {

// t and two-tailed p for an estimate; a zero standard error means the
// estimate is exact.
void inference(double estimate, double se, double df, double* t, double* p) {
  if (se > 0.0) {
    *t = estimate / se;
  } else if (estimate == 0.0) {
    *t = 0.0;
  } else {
    *t = std::copysign(std::numeric_limits<double>::infinity(), estimate);
  }
  *p = two_tailed_p(*t, df);
}

// Solves R11 z = rhs for the leading `r` x `r` upper-triangular block.
std::vector<double> back_substitute(const kernels::PivotedQr& f, std::size_t r,
                                    std::vector<double> rhs) {
  for (std::size_t ii = r; ii-- > 0;) {
    double s = rhs[ii];
    for (std::size_t j = ii + 1; j < r; ++j) s -= f.qr(ii, j) * rhs[j];
    rhs[ii] = s / f.qr(ii, ii);
  }
  return rhs;
}

// Original-order indices of the columns taking part in each dependency:
// every trailing pivoted column plus the leading columns it is built from.
std::vector<std::size_t> dependent_columns(const kernels::PivotedQr& f, std::size_t rank) {
  std::set<std::size_t> out;
  for (std::size_t j = rank; j < f.cols(); ++j) {
    out.insert(f.pivot[j]);
    std::vector<double> rhs(rank);
    for (std::size_t i = 0; i < rank; ++i) rhs[i] = f.qr(i, j);
    const auto z = back_substitute(f, rank, std::move(rhs));
    double zmax = 0.0;
    for (double v : z) zmax = std::max(zmax, std::abs(v));
    for (std::size_t i = 0; i < rank; ++i) {
      if (std::abs(z[i]) > 1e-8 * zmax) out.insert(f.pivot[i]);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

FitResult fit(const DesignMatrix& design, const FitOptions& options) {
  const std::size_t n = design.n_rows();
  const std::size_t p = design.n_cols();
  if (design.response.size() != n || design.labels.size() != p) {
    throw Error(ErrorCode::DimensionMismatch, "design matrix, labels and response disagree in size");
  }
  if (n <= p) {
    throw Error(ErrorCode::TooFewRows, std::to_string(n) + " observations cannot support " +
                                           std::to_string(p) + " coefficients with residual df >= 1");
  }
  for (double v : design.values.data()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::MissingValuesPresent, "design matrix has non-finite entries");
  }
  for (double v : design.response) {
    if (!std::isfinite(v)) throw Error(ErrorCode::MissingValuesPresent, "response has non-finite entries");
  }

  const kernels::PivotedQr f = kernels::pivoted_qr(design.values, options.backend);
  const std::size_t rank = kernels::numerical_rank(f, kRankTolerance);
  if (rank < p) {
    std::vector<std::string> names;
    for (auto j : dependent_columns(f, rank)) names.push_back(design.labels[j].name);
    std::string msg = "design matrix is rank deficient (rank " + std::to_string(rank) + " of " +
                      std::to_string(p) + "); linearly dependent columns:";
    for (const auto& s : names) msg += " '" + s + "'";
    throw Error(ErrorCode::RankDeficient, msg).with_labels(std::move(names));
  }

  std::vector<double> qty = design.response;
  kernels::apply_qt(f, qty);
  const auto coef_pivoted = back_substitute(f, p, std::vector<double>(qty.begin(), qty.begin() + p));

  FitResult out;
  out.coefficients.assign(p, 0.0);
  for (std::size_t k = 0; k < p; ++k) out.coefficients[f.pivot[k]] = coef_pivoted[k];

  out.n_obs = n;
  out.df_residual = n - p;
  out.fitted = kernels::matvec(design.values, out.coefficients, options.backend);
  out.residuals.resize(n);
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.residuals[i] = design.response[i] - out.fitted[i];
    rss += out.residuals[i] * out.residuals[i];
  }
  out.rss = rss;
  out.sigma2 = rss / static_cast<double>(out.df_residual);

  const double mean = std::accumulate(design.response.begin(), design.response.end(), 0.0) /
                      static_cast<double>(n);
  double tss = 0.0;
  for (double y : design.response) tss += (y - mean) * (y - mean);
  out.r_squared = tss > 0.0 ? std::clamp(1.0 - rss / tss, 0.0, 1.0) : 0.0;

  // (X'X)^-1 = P R^-1 R^-T P'.
  Matrix rinv(p, p, 0.0);
  for (std::size_t c = 0; c < p; ++c) {
    std::vector<double> e(p, 0.0);
    e[c] = 1.0;
    const auto col = back_substitute(f, p, std::move(e));
    for (std::size_t i = 0; i <= c; ++i) rinv(i, c) = col[i];
  }
  out.cov = Matrix(p, p, 0.0);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a; b < p; ++b) {
      double s = 0.0;
      for (std::size_t k = std::max(a, b); k < p; ++k) s += rinv(a, k) * rinv(b, k);
      const double v = out.sigma2 * s;
      out.cov(f.pivot[a], f.pivot[b]) = v;
      out.cov(f.pivot[b], f.pivot[a]) = v;
    }
  }

  const double df = static_cast<double>(out.df_residual);
  out.std_errors.resize(p);
  out.t_values.resize(p);
  out.p_two_tailed.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    out.std_errors[j] = std::sqrt(std::max(0.0, out.cov(j, j)));
    inference(out.coefficients[j], out.std_errors[j], df, &out.t_values[j], &out.p_two_tailed[j]);
  }
  out.labels = design.labels;
  out.info = design.info;
  return out;
}

double one_tailed_p(double estimate, double p_two, Direction direction) {
  if (estimate == 0.0) return 0.5;
  const bool agrees = (direction == Direction::Greater) == (estimate > 0.0);
  return agrees ? p_two / 2.0 : 1.0 - p_two / 2.0;
}

double one_tailed_p(const FitResult& fit, std::string_view label, Direction direction) {
  const std::size_t j = fit.index_of(label);
  return one_tailed_p(fit.coefficients[j], fit.p_two_tailed[j], direction);
}

LinearCombination linear_combination(const FitResult& fit, std::span<const double> weights) {
  const std::size_t p = fit.n_coefficients();
  if (weights.size() != p) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(p) + " weights, got " +
                                                  std::to_string(weights.size()));
  }
  LinearCombination lc;
  for (std::size_t j = 0; j < p; ++j) lc.estimate += weights[j] * fit.coefficients[j];
  double var = 0.0;
  for (std::size_t a = 0; a < p; ++a) {
    if (weights[a] == 0.0) continue;
    for (std::size_t b = 0; b < p; ++b) var += weights[a] * fit.cov(a, b) * weights[b];
  }
  lc.std_error = std::sqrt(std::max(0.0, var));
  inference(lc.estimate, lc.std_error, static_cast<double>(fit.df_residual), &lc.t, &lc.p_two);
  return lc;
}

LinearCombination linear_combination(const FitResult& fit,
                                     const std::map<std::string, double>& weights) {
  std::vector<double> w(fit.n_coefficients(), 0.0);
  for (const auto& [label, value] : weights) w[fit.index_of(label)] = value;
  return linear_combination(fit, w);
}

double predict_mean(const FitResult& fit, const std::map<std::string, std::string>& profile) {
  const auto row = encode_profile(fit.info, profile);
  double s = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * fit.coefficients[j];
  return s;
}

}  // namespace catreg
