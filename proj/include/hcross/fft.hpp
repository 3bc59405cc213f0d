#pragma once

#include <complex>
#include <span>

namespace hcross::fft {

enum class Direction { forward, backward };

// In-place unnormalized multi-dimensional DFT over a row-major array.
// forward:  X[k] = sum_x x[j] e^{-2 pi i j.k / N}
// backward: x[j] = sum_k X[k] e^{+2 pi i j.k / N}
// Plans are cached; concurrent calls on distinct buffers are safe.
void transform(std::span<std::complex<double>> data, std::span<const int> shape, Direction dir);

}  // namespace hcross::fft
