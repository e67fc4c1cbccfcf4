#include <cassert>
#include <cstdint>
#include <numeric>
#include <utility>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "catreg/kernels.hpp"
#include "kernels_detail.hpp"

namespace catreg::kernels::parallel {

int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

PivotedQr pivoted_qr(Matrix a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t kmax = std::min(m, n);
  PivotedQr f;
  f.pivot.resize(n);
  std::iota(f.pivot.begin(), f.pivot.end(), std::size_t{0});
  f.tau.assign(kmax, 0.0);
  std::vector<double> norms(n);
  const auto ncols = static_cast<std::int64_t>(n);

  for (std::size_t k = 0; k < kmax; ++k) {
    const bool wide = (m - k) * (n - k) >= kParallelMinWork;
    const auto first = static_cast<std::int64_t>(k);

#pragma omp parallel for schedule(static) if (wide)
    for (std::int64_t j = first; j < ncols; ++j) {
      norms[static_cast<std::size_t>(j)] = detail::tail_norm2(a, k, static_cast<std::size_t>(j));
    }
    std::size_t best = k;
    for (std::size_t j = k + 1; j < n; ++j) {
      if (norms[j] > norms[best]) best = j;
    }
    detail::swap_columns(a, k, best);
    std::swap(f.pivot[k], f.pivot[best]);

    const double tau = detail::make_reflector(a, k);
    f.tau[k] = tau;
    if (tau == 0.0) continue;

#pragma omp parallel for schedule(static) if (wide)
    for (std::int64_t j = first + 1; j < ncols; ++j) {
      detail::reflect_column(a, k, tau, static_cast<std::size_t>(j));
    }
  }
  f.qr = std::move(a);
  return f;
}

std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
  assert(x.size() == a.cols());
  const auto m = static_cast<std::int64_t>(a.rows());
  const std::size_t n = a.cols();
  std::vector<double> y(a.rows(), 0.0);
#pragma omp parallel for schedule(static) if (a.rows() * n >= kParallelMinWork)
  for (std::int64_t ii = 0; ii < m; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

void multiply_into(std::span<double> acc, std::span<const double> x) {
  assert(acc.size() == x.size());
  const auto m = static_cast<std::int64_t>(acc.size());
#pragma omp parallel for schedule(static) if (acc.size() >= kParallelMinWork)
  for (std::int64_t i = 0; i < m; ++i) {
    acc[static_cast<std::size_t>(i)] *= x[static_cast<std::size_t>(i)];
  }
}

}  // namespace catreg::kernels::parallel
