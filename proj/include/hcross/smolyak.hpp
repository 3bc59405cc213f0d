#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "hcross/mterm.hpp"
#include "hcross/trig_polynomial.hpp"

namespace hcross {

// Point-evaluation oracle with a running tally of evaluated points.
class Sampler {
 public:
  explicit Sampler(int d);
  virtual ~Sampler() = default;
  Sampler(const Sampler&) = delete;
  Sampler& operator=(const Sampler&) = delete;

  int dim() const { return dim_; }
  std::uint64_t call_count() const { return calls_.load(); }

  Complex operator()(std::span<const double> x);

  // Values at the given flat indices of the uniform grid of `shape`;
  // counts one call per index.
  void sample_grid(std::span<const int> shape, std::span<const std::size_t> flat,
                   std::span<Complex> out);

 protected:
  virtual Complex evaluate_point(std::span<const double> x) = 0;
  // Default walks the points one by one.
  virtual void evaluate_grid(std::span<const int> shape, std::span<const std::size_t> flat,
                             std::span<Complex> out);

 private:
  int dim_;
  std::atomic<std::uint64_t> calls_{0};
};

class FunctionSampler : public Sampler {
 public:
  FunctionSampler(int d, std::function<Complex(std::span<const double>)> fn);

 protected:
  Complex evaluate_point(std::span<const double> x) override;

 private:
  std::function<Complex(std::span<const double>)> fn_;
};

// Samples a known polynomial; whole grids go through one folded FFT.
class PolynomialSampler : public Sampler {
 public:
  explicit PolynomialSampler(TrigPolynomial p);

 protected:
  Complex evaluate_point(std::span<const double> x) override;
  void evaluate_grid(std::span<const int> shape, std::span<const std::size_t> flat,
                     std::span<Complex> out) override;

 private:
  TrigPolynomial p_;
};

// T_n reproduces every polynomial on Q_(n - offset); found by brute-force
// search over d <= 2, n <= 7 and kept as a regression constant.
inline constexpr int kSmolyakReproductionOffset = 0;

// Smolyak operator T_n = sum_{|s|_1 <= n} tensor_j (I_{s_j} - I_{s_j - 1}),
// I_j interpolating on 2^(j+1) equispaced points. Every sparse-grid point
// is sampled exactly once.
TrigPolynomial smolyak_recover(Sampler& sampler, int n);

// Number of distinct points of the level-n sparse grid in dimension d.
std::uint64_t sparse_grid_size(int n, int d);

struct RecoveryRow {
  int level = 0;
  std::uint64_t samples = 0;
  double error = 0.0;     // in the requested L_p
  double error_l2 = 0.0;  // exact
};

std::vector<RecoveryRow> recovery_error_sweep(
    const std::function<std::unique_ptr<Sampler>()>& factory, const TrigPolynomial& exact,
    std::span<const int> levels, double p, const ErrorOptions& options = {});

}  // namespace hcross
