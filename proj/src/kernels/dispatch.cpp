#include "bargain/kernels.hpp"

#include <cstdlib>
#include <string>

#include "bargain/problem.hpp"
#include "kernels_impl.hpp"

namespace bargain {

Columns::Columns(std::size_t dim, std::size_t rows)
    : rows_(rows), cols_(dim, std::vector<double>(rows, 0.0)) {}

Columns Columns::from_points(std::span<const UtilityVector> points) {
  const std::size_t dim = points.empty() ? 0 : points.front().dim();
  Columns c(dim, points.size());
  for (std::size_t r = 0; r < points.size(); ++r) {
    for (std::size_t i = 0; i < dim; ++i) c.cols_[i][r] = points[r][i];
  }
  return c;
}

std::vector<const double*> Columns::pointers() const {
  std::vector<const double*> out;
  out.reserve(cols_.size());
  for (const auto& c : cols_) out.push_back(c.data());
  return out;
}

namespace kernels {
namespace {

const Table kScalar{
    "scalar",
    detail::weighted_sum_min_scalar,
    detail::product_scalar,
    detail::minimum_scalar,
    detail::sum_scalar,
    detail::mark_dominated_scalar,
};

#if defined(BARGAIN_HAVE_AVX2)
const Table kAvx2{
    "avx2",
    detail::weighted_sum_min_avx2,
    detail::product_avx2,
    detail::minimum_avx2,
    detail::sum_avx2,
    detail::mark_dominated_avx2,
};
#endif

const Table* initial() {
  const char* env = std::getenv("BARGAIN_KERNELS");
  if (env != nullptr && std::string(env) == "scalar") return &kScalar;
  if (const Table* t = avx2()) return t;
  return &kScalar;
}

const Table*& current() {
  static const Table* table = initial();
  return table;
}

}  // namespace

const Table& scalar() { return kScalar; }

const Table* avx2() {
#if defined(BARGAIN_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() { return *current(); }

bool select(std::string_view name) {
  if (name == "scalar") {
    current() = &kScalar;
    return true;
  }
  if (name == "avx2") {
    if (const Table* t = avx2()) {
      current() = t;
      return true;
    }
    return false;
  }
  if (name == "auto") {
    current() = avx2() != nullptr ? avx2() : &kScalar;
    return true;
  }
  return false;
}

}  // namespace kernels
}  // namespace bargain
