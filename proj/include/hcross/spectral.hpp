#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hcross/freq_index.hpp"
#include "hcross/grid_function.hpp"
#include "hcross/trig_polynomial.hpp"

namespace hcross {

// Grid-size guard for measured norms; larger grids raise ResourceError.
inline constexpr std::uint64_t kDefaultGridCap = std::uint64_t{1} << 31;

// Streaming evaluation works on slabs of at most this many points.
inline constexpr std::size_t kDefaultSlabPoints = std::size_t{1} << 22;

// Oversampling beyond the Nyquist rate used for grid-maximum estimates.
inline constexpr double kDefaultOversample = 4.0;

// Coefficients below this fraction of the largest one are dropped by analyze().
inline constexpr double kAnalyzeDropTolerance = 1e-13;

// ---- analysis / synthesis -------------------------------------------------

// Discrete Fourier coefficients (2 pi)^{-d} sum-quadrature over the box
// |k_j| <= floor((N_j - 1) / 2).
TrigPolynomial analyze(const GridFunction& g, double relative_drop = kAnalyzeDropTolerance);

// Samples of p on the grid; requires N_j > 2 max|k_j| (AliasingError).
GridFunction synthesize(const TrigPolynomial& p, std::span<const int> resolution);

void check_alias_free(const TrigPolynomial& p, std::span<const int> resolution);

// Smallest power of two per axis that is >= oversample * (2 K_j + 1) and
// strictly alias free.
std::vector<int> alias_free_resolution(std::span<const int> max_abs_freq, double oversample);
std::vector<int> alias_free_resolution(const TrigPolynomial& p, double oversample);

// Evaluates polynomials on a large grid slab by slab. Axis 0 is split into
// residue classes i_0 = a (mod B); each slab is one FFT of size N_0/B x ...
class SlabEvaluator {
 public:
  SlabEvaluator(std::vector<int> resolution, std::size_t slab_points = kDefaultSlabPoints);

  const std::vector<int>& resolution() const { return resolution_; }
  int slab_count() const { return slabs_; }
  std::size_t slab_size() const { return slab_size_; }
  std::uint64_t total_points() const { return total_; }

  // Values of p on slab a (unordered within the slab).
  void evaluate(const TrigPolynomial& p, int a, std::vector<Complex>& out) const;

 private:
  std::vector<int> resolution_;
  std::vector<int> slab_shape_;
  std::vector<Complex> twiddle_;  // e^{2 pi i q / N_0}
  int slabs_ = 1;
  std::size_t slab_size_ = 1;
  std::uint64_t total_ = 1;
};

// ---- block operators -----------------------------------------------------

enum class LayerKind { sharp, vp };

// One non-zero univariate block weight a_s(k).
struct AxisBlockWeight {
  int s;
  double weight;
};

// All s with a_s(k) != 0; at most two entries.
std::vector<AxisBlockWeight> block_weights_at(long k);

// sum over |s|_1 <= n of prod_j a_{s_j}(k_j); exact dyadic arithmetic.
double cross_weight(const FreqIndex& k, int n);

// sum over |s|_1 == n of prod_j a_{s_j}(k_j).
double layer_weight(const FreqIndex& k, int n);

TrigPolynomial delta_block(const TrigPolynomial& f, const BlockIndex& s);
TrigPolynomial vp_block(const TrigPolynomial& f, const BlockIndex& s);
TrigPolynomial project_cross(const TrigPolynomial& f, int n);
TrigPolynomial vp_cross(const TrigPolynomial& f, int n);
TrigPolynomial layer_op(const TrigPolynomial& f, int n, LayerKind kind);

// Every non-empty layer of f, ascending in n. The sharp pieces partition
// the support; the vp pieces sum to f up to rounding.
std::vector<std::pair<int, TrigPolynomial>> layer_decomposition(const TrigPolynomial& f,
                                                               LayerKind kind);

// Blocks s whose vp piece of f is non-zero, with the piece itself.
std::vector<std::pair<BlockIndex, TrigPolynomial>> vp_pieces(const TrigPolynomial& f);
std::vector<std::pair<BlockIndex, TrigPolynomial>> delta_pieces(const TrigPolynomial& f);

// ---- norms --------------------------------------------------------------

// ((2 pi)^{-d} int |f|^p)^{1/p} by the grid Riemann sum; p = inf is the grid max.
double norm_lp(const GridFunction& g, double p);

// Same quantity streamed slab by slab without materializing the grid.
double norm_lp(const TrigPolynomial& f, double p, std::span<const int> resolution,
               std::size_t slab_points = kDefaultSlabPoints);

enum class Family { W, H, B };

struct SmoothnessSpec {
  Family family = Family::W;
  double r = 1.0;
  double p = 2.0;
  double q = 2.0;                 // B only
  std::vector<double> alpha;      // W only; the Littlewood-Paley norm does not depend on it

  void validate() const;
};

struct NormOptions {
  double oversample = kDefaultOversample;
  // Empty: each piece gets its own alias-free grid. Otherwise one shared grid.
  std::vector<int> resolution;
  std::size_t slab_points = kDefaultSlabPoints;
};

double norm_smoothness(const TrigPolynomial& f, const SmoothnessSpec& spec,
                       const NormOptions& options = {});

// sup over the step list of prod_{i in e} |h_i|^{-r} || Delta_h^e f ||_p,
// with h_i = 2 pi t / N_i for every step t in `steps` (all combinations).
double seminorm_h_diff(const GridFunction& g, double r, double p, std::span<const int> axes,
                       std::span<const int> steps);

// sum over all coordinate subsets e of seminorm_h_diff.
double norm_h_diff(const GridFunction& g, double r, double p, std::span<const int> steps);

// (2 pi)^{-d} int |sum_{|s|_1 <= n} A_s(x)| dx by quadrature on the grid.
double l1_kernel_norm(int n, int d, std::span<const int> resolution);

}  // namespace hcross
