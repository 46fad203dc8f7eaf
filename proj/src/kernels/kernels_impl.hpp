#pragma once

#include <cstddef>
#include <cstdint>

namespace bargain::kernels::detail {

void weighted_sum_min_scalar(const double* const* cols, std::size_t dim,
                             std::size_t rows, const double* weights,
                             double offset, std::int32_t index, double* best,
                             std::int32_t* best_index);
void product_scalar(const double* const* cols, std::size_t dim,
                    std::size_t rows, double* out);
void minimum_scalar(const double* const* cols, std::size_t dim,
                    std::size_t rows, double* out);
void sum_scalar(const double* const* cols, std::size_t dim, std::size_t rows,
                double* out);
void mark_dominated_scalar(const double* const* cols, std::size_t dim,
                           std::size_t rows, const double* point, double tol,
                           std::uint8_t* mask);

#if defined(BARGAIN_HAVE_AVX2)
void weighted_sum_min_avx2(const double* const* cols, std::size_t dim,
                           std::size_t rows, const double* weights,
                           double offset, std::int32_t index, double* best,
                           std::int32_t* best_index);
void product_avx2(const double* const* cols, std::size_t dim, std::size_t rows,
                  double* out);
void minimum_avx2(const double* const* cols, std::size_t dim, std::size_t rows,
                  double* out);
void sum_avx2(const double* const* cols, std::size_t dim, std::size_t rows,
              double* out);
void mark_dominated_avx2(const double* const* cols, std::size_t dim,
                         std::size_t rows, const double* point, double tol,
                         std::uint8_t* mask);
#endif

}  // namespace bargain::kernels::detail
