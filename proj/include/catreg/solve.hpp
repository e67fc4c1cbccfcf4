#ifndef CATREG_SOLVE_HPP_
#define CATREG_SOLVE_HPP_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catreg/encode.hpp"
#include "catreg/kernels.hpp"
#include "catreg/matrix.hpp"

namespace catreg {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and 0 <= x <= 1,
// by Lentz's continued fraction.
double incomplete_beta(double a, double b, double x);

// P(T <= t) for Student's t with `df` > 0 degrees of freedom. Finite for
// all t; +/-inf map to 1/0. cdf(-t) and cdf(t) are computed from the same
// tail so they sum to one up to a single rounding.
double student_t_cdf(double t, double df);

// Two-tailed p-value 2 * P(T >= |t|).
double two_tailed_p(double t, double df);

// Columns closer to dependence than this fraction of the leading pivot are
// treated as linear combinations of the others.
inline constexpr double kRankTolerance = 1e-10;

struct FitOptions {
  kernels::Backend backend = kernels::Backend::Parallel;
};

struct FitResult {
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> t_values;
  std::vector<double> p_two_tailed;
  std::size_t n_obs = 0;
  std::size_t df_residual = 0;
  double rss = 0.0;
  double sigma2 = 0.0;
  double r_squared = 0.0;
  Matrix cov;  // sigma2 * (X'X)^-1
  std::vector<double> fitted;
  std::vector<double> residuals;
  std::vector<ColumnLabel> labels;
  DesignInfo info;

  std::size_t n_coefficients() const { return coefficients.size(); }
  // Index of the coefficient named `label`; throws UnknownLabel.
  std::size_t index_of(std::string_view label) const;
};

// Ordinary least squares by Householder QR with column pivoting.
// Throws TooFewRows (n <= p) and RankDeficient, whose labels() are the
// columns of every exact dependency found.
FitResult fit(const DesignMatrix& design, const FitOptions& options = {});

enum class Direction { Less, Greater };

// One-tailed p for a directional hypothesis: p_two/2 when the estimate
// lies on the hypothesized side, 1 - p_two/2 when it does not, 0.5 at zero.
double one_tailed_p(double estimate, double p_two, Direction direction);
double one_tailed_p(const FitResult& fit, std::string_view label, Direction direction);

struct LinearCombination {
  double estimate = 0.0;
  double std_error = 0.0;
  double t = 0.0;
  double p_two = 1.0;
};

// w'b with standard error sqrt(w' cov w); throws DimensionMismatch.
LinearCombination linear_combination(const FitResult& fit, std::span<const double> weights);
// Same, with weights given per coefficient label (others zero).
LinearCombination linear_combination(const FitResult& fit,
                                     const std::map<std::string, double>& weights);

// Estimated mean response for a profile (variable -> level or number).
double predict_mean(const FitResult& fit, const std::map<std::string, std::string>& profile);

}  // namespace catreg

#endif  // CATREG_SOLVE_HPP_
