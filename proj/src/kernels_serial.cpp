#include <cassert>
#include <cmath>
#include <numeric>
#include <utility>

#include "catreg/kernels.hpp"
#include "kernels_detail.hpp"

namespace catreg::kernels {

void apply_qt(const PivotedQr& f, std::span<double> y) {
  const std::size_t m = f.rows();
  assert(y.size() == m);
  for (std::size_t k = 0; k < f.tau.size(); ++k) {
    const double tau = f.tau[k];
    if (tau == 0.0) continue;
    double w = y[k];
    for (std::size_t i = k + 1; i < m; ++i) w += f.qr(i, k) * y[i];
    w *= tau;
    y[k] -= w;
    for (std::size_t i = k + 1; i < m; ++i) y[i] -= w * f.qr(i, k);
  }
}

std::size_t numerical_rank(const PivotedQr& f, double relative_tol) {
  const std::size_t kmax = f.tau.size();
  if (kmax == 0) return 0;
  const double top = std::abs(f.qr(0, 0));
  if (top == 0.0) return 0;
  std::size_t rank = 0;
  while (rank < kmax && std::abs(f.qr(rank, rank)) >= relative_tol * top) ++rank;
  return rank;
}

namespace detail {

// Sum of squares of column j below row k-1.
double tail_norm2(const Matrix& a, std::size_t k, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = k; i < a.rows(); ++i) s += a(i, j) * a(i, j);
  return s;
}

// Builds the reflector for column k in place; returns tau.
double make_reflector(Matrix& a, std::size_t k) {
  const std::size_t m = a.rows();
  const double alpha = a(k, k);
  double xnorm2 = 0.0;
  for (std::size_t i = k + 1; i < m; ++i) xnorm2 += a(i, k) * a(i, k);
  if (xnorm2 == 0.0) return 0.0;
  const double beta = -std::copysign(std::sqrt(alpha * alpha + xnorm2), alpha);
  const double tau = (beta - alpha) / beta;
  const double scale = 1.0 / (alpha - beta);
  for (std::size_t i = k + 1; i < m; ++i) a(i, k) *= scale;
  a(k, k) = beta;
  return tau;
}

// Applies reflector k to column j > k.
void reflect_column(Matrix& a, std::size_t k, double tau, std::size_t j) {
  const std::size_t m = a.rows();
  double w = a(k, j);
  for (std::size_t i = k + 1; i < m; ++i) w += a(i, k) * a(i, j);
  w *= tau;
  a(k, j) -= w;
  for (std::size_t i = k + 1; i < m; ++i) a(i, j) -= w * a(i, k);
}

void swap_columns(Matrix& a, std::size_t x, std::size_t y) {
  if (x == y) return;
  auto cx = a.col(x);
  auto cy = a.col(y);
  for (std::size_t i = 0; i < a.rows(); ++i) std::swap(cx[i], cy[i]);
}

}  // namespace detail

namespace serial {

PivotedQr pivoted_qr(Matrix a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t kmax = std::min(m, n);
  PivotedQr f;
  f.pivot.resize(n);
  std::iota(f.pivot.begin(), f.pivot.end(), std::size_t{0});
  f.tau.assign(kmax, 0.0);
  std::vector<double> norms(n);

  for (std::size_t k = 0; k < kmax; ++k) {
    // Norms are recomputed, not downdated: exact dependencies then show up
    // as residual norms at rounding level instead of stale large values.
    for (std::size_t j = k; j < n; ++j) norms[j] = detail::tail_norm2(a, k, j);
    std::size_t best = k;
    for (std::size_t j = k + 1; j < n; ++j) {
      if (norms[j] > norms[best]) best = j;
    }
    detail::swap_columns(a, k, best);
    std::swap(f.pivot[k], f.pivot[best]);

    const double tau = detail::make_reflector(a, k);
    f.tau[k] = tau;
    if (tau == 0.0) continue;
    for (std::size_t j = k + 1; j < n; ++j) detail::reflect_column(a, k, tau, j);
  }
  f.qr = std::move(a);
  return f;
}

std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
  assert(x.size() == a.cols());
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

void multiply_into(std::span<double> acc, std::span<const double> x) {
  assert(acc.size() == x.size());
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] *= x[i];
}

}  // namespace serial
}  // namespace catreg::kernels
