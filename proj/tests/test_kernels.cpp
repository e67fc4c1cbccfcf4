#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "catreg/kernels.hpp"

using namespace catreg;
namespace k = catreg::kernels;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Matrix m(rows, cols, 0.0);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = z(rng);
  }
  return m;
}

// Q R P^T rebuilt column by column from the stored reflectors.
Matrix reconstruct(const k::PivotedQr& f) {
  const std::size_t n = f.rows(), p = f.cols();
  Matrix out(n, p, 0.0);
  for (std::size_t c = 0; c < p; ++c) {
    std::vector<double> v(n, 0.0);
    for (std::size_t i = 0; i <= c && i < n; ++i) v[i] = f.r(i, c);
    for (std::size_t kk = std::min(n, p); kk-- > 0;) {
      double s = v[kk];
      for (std::size_t i = kk + 1; i < n; ++i) s += f.qr(i, kk) * v[i];
      s *= f.tau[kk];
      v[kk] -= s;
      for (std::size_t i = kk + 1; i < n; ++i) v[i] -= s * f.qr(i, kk);
    }
    for (std::size_t i = 0; i < n; ++i) out(i, f.pivot[c]) = v[i];
  }
  return out;
}

}  // namespace

TEST(PivotedQr, ReconstructsInput) {
  const Matrix a = random_matrix(40, 6, 1);
  const auto f = k::serial::pivoted_qr(a);
  const Matrix b = reconstruct(f);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) EXPECT_NEAR(b(i, j), a(i, j), 1e-12);
  }
}

TEST(PivotedQr, DiagonalNonIncreasing) {
  const auto f = k::serial::pivoted_qr(random_matrix(50, 8, 2));
  for (std::size_t j = 1; j < 8; ++j) EXPECT_LE(std::abs(f.r(j, j)), std::abs(f.r(j - 1, j - 1)) * (1 + 1e-12));
}

TEST(PivotedQr, DetectsRank) {
  Matrix a = random_matrix(30, 4, 3);
  for (std::size_t i = 0; i < 30; ++i) a(i, 3) = a(i, 0) + 2.0 * a(i, 1);
  EXPECT_EQ(k::numerical_rank(k::serial::pivoted_qr(a), 1e-10), 3u);
}

TEST(ApplyQt, PreservesNorm) {
  const Matrix a = random_matrix(25, 5, 4);
  const auto f = k::serial::pivoted_qr(a);
  std::vector<double> y(25);
  std::iota(y.begin(), y.end(), 1.0);
  double before = 0.0, after = 0.0;
  for (double v : y) before += v * v;
  k::apply_qt(f, y);
  for (double v : y) after += v * v;
  EXPECT_NEAR(before, after, 1e-9 * before);
}

// Serial and parallel kernels must agree bit for bit, also above the
// threshold where OpenMP takes over.
TEST(Backends, BitIdenticalQr) {
  for (std::size_t rows : {200u, 40'000u}) {
    const Matrix a = random_matrix(rows, 9, rows);
    const auto s = k::serial::pivoted_qr(a);
    const auto p = k::parallel::pivoted_qr(a);
    EXPECT_EQ(s.qr, p.qr);
    EXPECT_EQ(s.tau, p.tau);
    EXPECT_EQ(s.pivot, p.pivot);
  }
}

TEST(Backends, BitIdenticalMatvecAndProduct) {
  const Matrix a = random_matrix(50'000, 7, 5);
  const std::vector<double> x{0.5, -1.0, 2.0, 0.25, 3.0, -0.75, 1.5};
  EXPECT_EQ(k::serial::matvec(a, x), k::parallel::matvec(a, x));
  std::vector<double> acc1(a.col(0).begin(), a.col(0).end()), acc2 = acc1;
  k::serial::multiply_into(acc1, a.col(1));
  k::parallel::multiply_into(acc2, a.col(1));
  EXPECT_EQ(acc1, acc2);
}

TEST(Backends, ThreadCountPositive) { EXPECT_GE(k::parallel::max_threads(), 1); }
