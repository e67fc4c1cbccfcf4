#ifndef CATREG_KERNELS_HPP_
#define CATREG_KERNELS_HPP_

// Dense kernels behind design construction and least squares.
//
// Two implementations with identical signatures:
//   serial::   straight-line reference code, kept for testing.
//   parallel:: OpenMP versions that split work over independent columns
//              (QR) or rows (matvec, products).
// Every reduction stays inside one thread and runs in the same order as
// the serial code, so both produce bit-identical results.

#include <cstddef>
#include <span>
#include <vector>

#include "catreg/matrix.hpp"

namespace catreg::kernels {

// Householder QR with column pivoting: A P = Q R.
// `qr` holds R on and above the diagonal and the essential part of each
// reflector below it (unit leading entry implied), as LAPACK's geqp3.
struct PivotedQr {
  Matrix qr;
  std::vector<double> tau;
  std::vector<std::size_t> pivot;  // column k of A P is column pivot[k] of A

  std::size_t rows() const { return qr.rows(); }
  std::size_t cols() const { return qr.cols(); }
  double r(std::size_t i, std::size_t j) const { return i <= j ? qr(i, j) : 0.0; }
};

// y <- Q^T y using the stored reflectors.
void apply_qt(const PivotedQr& f, std::span<double> y);

// Number of leading |R_kk| at or above `relative_tol * |R_00|`.
std::size_t numerical_rank(const PivotedQr& f, double relative_tol);

// Rows above the parallel threshold go to OpenMP; smaller problems run
// inline since thread start-up dominates.
inline constexpr std::size_t kParallelMinWork = 1u << 15;

namespace serial {
PivotedQr pivoted_qr(Matrix a);
std::vector<double> matvec(const Matrix& a, std::span<const double> x);
void multiply_into(std::span<double> acc, std::span<const double> x);
}  // namespace serial

namespace parallel {
PivotedQr pivoted_qr(Matrix a);
std::vector<double> matvec(const Matrix& a, std::span<const double> x);
void multiply_into(std::span<double> acc, std::span<const double> x);
// Threads OpenMP would use; 1 when built without OpenMP.
int max_threads();
}  // namespace parallel

enum class Backend { Serial, Parallel };

inline PivotedQr pivoted_qr(Matrix a, Backend b) {
  return b == Backend::Serial ? serial::pivoted_qr(std::move(a))
                              : parallel::pivoted_qr(std::move(a));
}
inline std::vector<double> matvec(const Matrix& a, std::span<const double> x, Backend b) {
  return b == Backend::Serial ? serial::matvec(a, x) : parallel::matvec(a, x);
}
inline void multiply_into(std::span<double> acc, std::span<const double> x, Backend b) {
  b == Backend::Serial ? serial::multiply_into(acc, x) : parallel::multiply_into(acc, x);
}

}  // namespace catreg::kernels

#endif  // CATREG_KERNELS_HPP_
