// Compiled with -mavx2 (and without FMA contraction) so the lane arithmetic
// matches the scalar reference exactly.

#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>
#include <vector>

namespace bargain::kernels::detail {

void weighted_sum_min_avx2(const double* const* cols, std::size_t dim,
                           std::size_t rows, const double* weights,
                           double offset, std::int32_t index, double* best,
                           std::int32_t* best_index) {
  const std::size_t body = rows / 4 * 4;
  const __m256d off = _mm256_set1_pd(offset);
  for (std::size_t r = 0; r < body; r += 4) {
    __m256d s = off;
    for (std::size_t i = 0; i < dim; ++i) {
      if (weights[i] == 0.0) continue;
      const __m256d w = _mm256_set1_pd(weights[i]);
      s = _mm256_add_pd(s, _mm256_mul_pd(w, _mm256_loadu_pd(cols[i] + r)));
    }
    const __m256d b = _mm256_loadu_pd(best + r);
    const __m256d lt = _mm256_cmp_pd(s, b, _CMP_LT_OQ);
    const int bits = _mm256_movemask_pd(lt);
    if (bits == 0) continue;
    _mm256_storeu_pd(best + r, _mm256_blendv_pd(b, s, lt));
    for (int lane = 0; lane < 4; ++lane) {
      if (bits & (1 << lane)) best_index[r + lane] = index;
    }
  }
  if (body < rows) {
    std::vector<const double*> tail(dim);
    for (std::size_t i = 0; i < dim; ++i) tail[i] = cols[i] + body;
    weighted_sum_min_scalar(tail.data(), dim, rows - body, weights, offset,
                            index, best + body, best_index + body);
  }
}

namespace {

template <class Op, class Tail>
void fold_columns(const double* const* cols, std::size_t dim, std::size_t rows,
                  double* out, Op op, Tail tail) {
  const std::size_t body = rows / 4 * 4;
  for (std::size_t r = 0; r < body; r += 4) {
    __m256d acc = _mm256_loadu_pd(cols[0] + r);
    for (std::size_t i = 1; i < dim; ++i) {
      acc = op(acc, _mm256_loadu_pd(cols[i] + r));
    }
    _mm256_storeu_pd(out + r, acc);
  }
  if (body < rows) {
    std::vector<const double*> rest(dim);
    for (std::size_t i = 0; i < dim; ++i) rest[i] = cols[i] + body;
    tail(rest.data(), dim, rows - body, out + body);
  }
}

}  // namespace

void product_avx2(const double* const* cols, std::size_t dim, std::size_t rows,
                  double* out) {
  fold_columns(
      cols, dim, rows, out,
      [](__m256d acc, __m256d x) { return _mm256_mul_pd(acc, x); },
      product_scalar);
}

void minimum_avx2(const double* const* cols, std::size_t dim, std::size_t rows,
                  double* out) {
  // _mm256_min_pd(x, acc) returns x only when x < acc, as std::min(acc, x).
  fold_columns(
      cols, dim, rows, out,
      [](__m256d acc, __m256d x) { return _mm256_min_pd(x, acc); },
      minimum_scalar);
}

void sum_avx2(const double* const* cols, std::size_t dim, std::size_t rows,
              double* out) {
  fold_columns(
      cols, dim, rows, out,
      [](__m256d acc, __m256d x) { return _mm256_add_pd(acc, x); }, sum_scalar);
}

void mark_dominated_avx2(const double* const* cols, std::size_t dim,
                         std::size_t rows, const double* point, double tol,
                         std::uint8_t* mask) {
  const std::size_t body = rows / 4 * 4;
  const __m256d t = _mm256_set1_pd(tol);
  for (std::size_t r = 0; r < body; r += 4) {
    __m256d all = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (std::size_t i = 0; i < dim; ++i) {
      const __m256d p = _mm256_set1_pd(point[i]);
      const __m256d x = _mm256_loadu_pd(cols[i] + r);
      // std::max(p, x) returns p unless p < x.
      const __m256d hi = _mm256_max_pd(x, p);
      const __m256d gap = _mm256_sub_pd(p, x);
      const __m256d ok = _mm256_cmp_pd(gap, _mm256_mul_pd(t, hi), _CMP_GT_OQ);
      all = _mm256_and_pd(all, ok);
    }
    const int bits = _mm256_movemask_pd(all);
    for (int lane = 0; lane < 4; ++lane) {
      if (bits & (1 << lane)) mask[r + lane] = 1;
    }
  }
  if (body < rows) {
    std::vector<const double*> rest(dim);
    for (std::size_t i = 0; i < dim; ++i) rest[i] = cols[i] + body;
    mark_dominated_scalar(rest.data(), dim, rows - body, point, tol,
                          mask + body);
  }
}

}  // namespace bargain::kernels::detail
