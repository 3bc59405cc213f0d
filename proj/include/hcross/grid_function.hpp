#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hcross {

// Complex samples on the uniform tensor grid x_j = 2 pi i_j / N_j, stored
// row-major with the last axis fastest.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(std::vector<int> shape);
  GridFunction(std::vector<int> shape, std::vector<std::complex<double>> values);

  int dim() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }

  std::span<std::complex<double>> values() { return values_; }
  std::span<const std::complex<double>> values() const { return values_; }

  std::complex<double>& operator[](std::size_t flat) { return values_[flat]; }
  const std::complex<double>& operator[](std::size_t flat) const { return values_[flat]; }

  // Grid coordinates of a flat index.
  std::vector<double> point(std::size_t flat) const;

  // Cyclic shift along one axis: result(x) = f(x + steps * 2 pi / N_axis).
  GridFunction shifted(int axis, int steps) const;

 private:
  std::vector<int> shape_;
  std::vector<std::complex<double>> values_;
};

}  // namespace hcross
