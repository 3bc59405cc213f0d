#include "hcross/grid_function.hpp"

#include <numbers>

#include "hcross/errors.hpp"
#include "hcross/freq_index.hpp"

namespace hcross {

namespace {

std::size_t total_size(const std::vector<int>& shape) {
  check_dimension(static_cast<int>(shape.size()));
  std::size_t n = 1;
  for (int s : shape) {
    if (s < 1) throw InvalidArgument("grid extents must be >= 1");
    n *= static_cast<std::size_t>(s);
  }
  return n;
}

}  // namespace

GridFunction::GridFunction(std::vector<int> shape)
    : shape_(std::move(shape)), values_(total_size(shape_)) {}

GridFunction::GridFunction(std::vector<int> shape, std::vector<std::complex<double>> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (values_.size() != total_size(shape_)) throw InvalidArgument("grid value count mismatch");
}

std::vector<double> GridFunction::point(std::size_t flat) const {
  std::vector<double> x(shape_.size());
  for (int j = dim() - 1; j >= 0; --j) {
    const auto n = static_cast<std::size_t>(shape_[j]);
    x[j] = 2.0 * std::numbers::pi * static_cast<double>(flat % n) / static_cast<double>(n);
    flat /= n;
  }
  return x;
}

GridFunction GridFunction::shifted(int axis, int steps) const {
  if (axis < 0 || axis >= dim()) throw InvalidArgument("shift axis out of range");
  const auto n = static_cast<std::size_t>(shape_[axis]);
  std::size_t inner = 1;
  for (int j = axis + 1; j < dim(); ++j) inner *= static_cast<std::size_t>(shape_[j]);
  const std::size_t outer = values_.size() / (n * inner);
  const auto shift = static_cast<std::size_t>(((steps % static_cast<long>(n)) + static_cast<long>(n)) %
                                              static_cast<long>(n));
  GridFunction out(shape_);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t src = (o * n + (i + shift) % n) * inner;
      const std::size_t dst = (o * n + i) * inner;
      for (std::size_t q = 0; q < inner; ++q) out.values_[dst + q] = values_[src + q];
    }
  return out;
}

}  // namespace hcross
