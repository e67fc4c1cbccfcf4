#ifndef CATREG_SRC_KERNELS_DETAIL_HPP_
#define CATREG_SRC_KERNELS_DETAIL_HPP_

#include <cstddef>

#include "catreg/matrix.hpp"

// Per-column building blocks shared by the serial and parallel QR.
namespace catreg::kernels::detail {

double tail_norm2(const Matrix& a, std::size_t k, std::size_t j);
double make_reflector(Matrix& a, std::size_t k);
void reflect_column(Matrix& a, std::size_t k, double tau, std::size_t j);
void swap_columns(Matrix& a, std::size_t x, std::size_t y);

}  // namespace catreg::kernels::detail

#endif  // CATREG_SRC_KERNELS_DETAIL_HPP_
