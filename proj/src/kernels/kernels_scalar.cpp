#include "kernels_impl.hpp"

#include <algorithm>

namespace bargain::kernels::detail {

void weighted_sum_min_scalar(const double* const* cols, std::size_t dim,
                             std::size_t rows, const double* weights,
                             double offset, std::int32_t index, double* best,
                             std::int32_t* best_index) {
  for (std::size_t r = 0; r < rows; ++r) {
    double s = offset;
    for (std::size_t i = 0; i < dim; ++i) {
      if (weights[i] != 0.0) s = s + weights[i] * cols[i][r];
    }
    if (s < best[r]) {
      best[r] = s;
      best_index[r] = index;
    }
  }
}

void product_scalar(const double* const* cols, std::size_t dim,
                    std::size_t rows, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    double p = cols[0][r];
    for (std::size_t i = 1; i < dim; ++i) p = p * cols[i][r];
    out[r] = p;
  }
}

void minimum_scalar(const double* const* cols, std::size_t dim,
                    std::size_t rows, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    double m = cols[0][r];
    for (std::size_t i = 1; i < dim; ++i) m = std::min(m, cols[i][r]);
    out[r] = m;
  }
}

void sum_scalar(const double* const* cols, std::size_t dim, std::size_t rows,
                double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    double s = cols[0][r];
    for (std::size_t i = 1; i < dim; ++i) s = s + cols[i][r];
    out[r] = s;
  }
}

void mark_dominated_scalar(const double* const* cols, std::size_t dim,
                           std::size_t rows, const double* point, double tol,
                           std::uint8_t* mask) {
  for (std::size_t r = 0; r < rows; ++r) {
    bool all = true;
    for (std::size_t i = 0; i < dim && all; ++i) {
      const double x = cols[i][r];
      all = (point[i] - x) > tol * std::max(point[i], x);
    }
    if (all) mask[r] = 1;
  }
}

}  // namespace bargain::kernels::detail
