#pragma once

// Batched inner loops over candidate sets. Candidates are stored column-wise
// (one contiguous array per player) so every kernel is data-parallel over
// candidates. Each kernel has a scalar reference and, where the CPU supports
// it, an AVX2 variant; the two perform the same floating-point operations in
// the same order and must agree bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace bargain {

class UtilityVector;

/// Structure-of-arrays view of a candidate set.
class Columns {
 public:
  Columns() = default;
  Columns(std::size_t dim, std::size_t rows);
  static Columns from_points(std::span<const UtilityVector> points);

  std::size_t dim() const { return cols_.size(); }
  std::size_t rows() const { return rows_; }
  double* col(std::size_t i) { return cols_[i].data(); }
  const double* col(std::size_t i) const { return cols_[i].data(); }
  /// Column pointers, valid while this object is alive and unmodified.
  std::vector<const double*> pointers() const;

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<double>> cols_;
};

namespace kernels {

struct Table {
  const char* name;

  /// For each row r: s = offset + sum_{i: weights[i] != 0} weights[i] * cols[i][r];
  /// if s < best[r], set best[r] = s and best_index[r] = index.
  void (*weighted_sum_min)(const double* const* cols, std::size_t dim,
                           std::size_t rows, const double* weights,
                           double offset, std::int32_t index, double* best,
                           std::int32_t* best_index);

  /// out[r] = cols[0][r] * cols[1][r] * ... (left to right).
  void (*product)(const double* const* cols, std::size_t dim, std::size_t rows,
                  double* out);

  /// out[r] = min_i cols[i][r].
  void (*minimum)(const double* const* cols, std::size_t dim, std::size_t rows,
                  double* out);

  /// out[r] = cols[0][r] + cols[1][r] + ... (left to right).
  void (*sum)(const double* const* cols, std::size_t dim, std::size_t rows,
              double* out);

  /// mask[r] |= 1 if point[i] - cols[i][r] > tol * max(point[i], cols[i][r])
  /// for every i (point strictly dominates the row).
  void (*mark_dominated)(const double* const* cols, std::size_t dim,
                         std::size_t rows, const double* point, double tol,
                         std::uint8_t* mask);
};

const Table& scalar();
/// nullptr when the build or the running CPU lacks AVX2.
const Table* avx2();

/// The table used by the library: AVX2 when available, unless the
/// BARGAIN_KERNELS environment variable is set to "scalar".
const Table& active();
/// Override the active table ("scalar", "avx2", or "auto").
/// Returns false when the request cannot be honoured.
bool select(std::string_view name);

}  // namespace kernels
}  // namespace bargain
