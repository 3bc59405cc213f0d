#include "hcross/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <array>
#include <string>
#include <map>
#include <numbers>

#include "hcross/errors.hpp"
#include "hcross/fft.hpp"
#include "hcross/kernels.hpp"

namespace hcross {

namespace {

long wrap(long k, long n) {
  const long r = k % n;
  return r < 0 ? r + n : r;
}

std::size_t grid_points(std::span<const int> shape) {
  std::size_t n = 1;
  for (int s : shape) n *= static_cast<std::size_t>(s);
  return n;
}

void check_p(double p) {
  if (!(p >= 1.0)) throw InvalidArgument("L_p exponent must lie in [1, inf]");
}

// Running L_p accumulator; p = inf keeps the maximum.
class LpAccumulator {
 public:
  explicit LpAccumulator(double p) : p_(p) { check_p(p); }

  void add(std::span<const Complex> values) {
    count_ += values.size();
    // |v|^2 avoids a hypot per point.
    if (std::isinf(p_)) {
      double top = 0.0;
      for (const Complex& v : values) top = std::max(top, std::norm(v));
      acc_ = std::max(acc_, std::sqrt(top));
    } else if (p_ == 2.0) {
      double part = 0.0;
      for (const Complex& v : values) part += std::norm(v);
      acc_ += part;
    } else if (p_ == 4.0) {
      double part = 0.0;
      for (const Complex& v : values) {
        const double n2 = std::norm(v);
        part += n2 * n2;
      }
      acc_ += part;
    } else {
      const double half = p_ / 2.0;
      double part = 0.0;
      for (const Complex& v : values) part += std::pow(std::norm(v), half);
      acc_ += part;
    }
  }
  void add_real(std::span<const double> values) {
    count_ += values.size();
    if (std::isinf(p_)) {
      for (double v : values) acc_ = std::max(acc_, std::abs(v));
    } else {
      double part = 0.0;
      for (double v : values) part += std::pow(std::abs(v), p_);
      acc_ += part;
    }
  }

  double result() const {
    if (std::isinf(p_)) return acc_;
    if (count_ == 0) return 0.0;
    return std::pow(acc_ / static_cast<double>(count_), 1.0 / p_);
  }

 private:
  double p_;
  double acc_ = 0.0;
  std::size_t count_ = 0;
};

// Calls visit(s, w) for every s in N_0^d with non-zero prod_j a_{s_j}(k_j).
template <class Visit>
void for_each_block_weight(const FreqIndex& k, Visit&& visit) {
  const int d = k.dim();
  std::array<std::vector<AxisBlockWeight>, kMaxDim> axes;
  for (int j = 0; j < d; ++j) axes[j] = block_weights_at(k[j]);
  std::array<std::size_t, kMaxDim> pos{};
  BlockIndex s(d);
  while (true) {
    double w = 1.0;
    for (int j = 0; j < d; ++j) {
      s[j] = axes[j][pos[j]].s;
      w *= axes[j][pos[j]].weight;
    }
    visit(s, w);
    int j = d - 1;
    while (j >= 0 && ++pos[j] == axes[j].size()) pos[j--] = 0;
    if (j < 0) break;
  }
}

}  // namespace

// ---- analysis / synthesis -------------------------------------------------

TrigPolynomial analyze(const GridFunction& g, double relative_drop) {
  const int d = g.dim();
  const auto& shape = g.shape();
  std::vector<Complex> buf(g.values().begin(), g.values().end());
  fft::transform(buf, shape, fft::Direction::forward);
  const double scale = 1.0 / static_cast<double>(buf.size());
  double peak = 0.0;
  for (auto& v : buf) {
    v *= scale;
    peak = std::max(peak, std::abs(v));
  }
  const double cutoff = relative_drop * peak;

  TrigPolynomial::Builder builder(d);
  std::vector<int> half(d);
  for (int j = 0; j < d; ++j) half[j] = (shape[j] - 1) / 2;
  FreqIndex k(d);
  for (std::size_t flat = 0; flat < buf.size(); ++flat) {
    if (std::abs(buf[flat]) <= cutoff) continue;
    std::size_t rest = flat;
    bool inside = true;
    for (int j = d - 1; j >= 0; --j) {
      const int n = shape[j];
      const int i = static_cast<int>(rest % static_cast<std::size_t>(n));
      rest /= static_cast<std::size_t>(n);
      const int kj = i <= half[j] ? i : i - n;
      if (kj < -half[j]) inside = false;
      k[j] = kj;
    }
    if (inside) builder.add(k, buf[flat]);
  }
  return std::move(builder).build();
}

void check_alias_free(const TrigPolynomial& p, std::span<const int> resolution) {
  if (static_cast<int>(resolution.size()) != p.dim())
    throw InvalidArgument("resolution length must equal the dimension");
  const auto kmax = p.max_abs_frequency();
  for (int j = 0; j < p.dim(); ++j) {
    if (resolution[j] < 1) throw InvalidArgument("resolution must be positive");
    if (static_cast<long>(resolution[j]) <= 2L * kmax[j])
      throw AliasingError("resolution " + std::to_string(resolution[j]) + " on axis " +
                          std::to_string(j) + " aliases frequency " + std::to_string(kmax[j]));
  }
}

GridFunction synthesize(const TrigPolynomial& p, std::span<const int> resolution) {
  check_alias_free(p, resolution);
  std::vector<int> shape(resolution.begin(), resolution.end());
  std::vector<Complex> buf(grid_points(shape));
  const int d = p.dim();
  for (const auto& [k, c] : p) {
    std::size_t flat = 0;
    for (int j = 0; j < d; ++j)
      flat = flat * static_cast<std::size_t>(shape[j]) +
             static_cast<std::size_t>(wrap(k[j], shape[j]));
    buf[flat] += c;
  }
  fft::transform(buf, shape, fft::Direction::backward);
  return GridFunction(std::move(shape), std::move(buf));
}

std::vector<int> alias_free_resolution(std::span<const int> max_abs_freq, double oversample) {
  if (!(oversample >= 1.0)) throw InvalidArgument("oversample factor must be >= 1");
  std::vector<int> res;
  for (int k : max_abs_freq) {
    const double want = std::ceil(oversample * (2.0 * k + 1.0));
    if (want > static_cast<double>(1 << 30)) throw ResourceError("resolution exceeds 2^30 per axis");
    res.push_back(static_cast<int>(std::bit_ceil(static_cast<unsigned>(want))));
  }
  return res;
}

std::vector<int> alias_free_resolution(const TrigPolynomial& p, double oversample) {
  return alias_free_resolution(p.max_abs_frequency(), oversample);
}

SlabEvaluator::SlabEvaluator(std::vector<int> resolution, std::size_t slab_points)
    : resolution_(std::move(resolution)) {
  check_dimension(static_cast<int>(resolution_.size()));
  for (int n : resolution_)
    if (n < 1) throw InvalidArgument("resolution must be positive");
  total_ = 1;
  for (int n : resolution_) total_ *= static_cast<std::uint64_t>(n);
  const int n0 = resolution_[0];
  const std::uint64_t rest = total_ / static_cast<std::uint64_t>(n0);
  slabs_ = n0;
  for (int b = 1; b <= n0; ++b) {
    if (n0 % b == 0 && rest * static_cast<std::uint64_t>(n0 / b) <= slab_points) {
      slabs_ = b;
      break;
    }
  }
  slab_shape_ = resolution_;
  slab_shape_[0] = n0 / slabs_;
  slab_size_ = grid_points(slab_shape_);
  twiddle_.resize(static_cast<std::size_t>(n0));
  for (int q = 0; q < n0; ++q)
    twiddle_[q] = std::polar(1.0, 2.0 * std::numbers::pi * q / n0);
}

void SlabEvaluator::evaluate(const TrigPolynomial& p, int a, std::vector<Complex>& out) const {
  check_alias_free(p, resolution_);
  if (a < 0 || a >= slabs_) throw InvalidArgument("slab index out of range");
  out.assign(slab_size_, Complex{});
  const int d = p.dim();
  const long n0 = resolution_[0];
  for (const auto& [k, c] : p) {
    std::size_t flat = static_cast<std::size_t>(wrap(k[0], slab_shape_[0]));
    for (int j = 1; j < d; ++j)
      flat = flat * static_cast<std::size_t>(slab_shape_[j]) +
             static_cast<std::size_t>(wrap(k[j], slab_shape_[j]));
    out[flat] += c * twiddle_[static_cast<std::size_t>(wrap(k[0] * static_cast<long>(a), n0))];
  }
  fft::transform(out, slab_shape_, fft::Direction::backward);
}

// ---- block operators -----------------------------------------------------

std::vector<AxisBlockWeight> block_weights_at(long k) {
  std::vector<AxisBlockWeight> out;
  const int level = dyadic_level(k);
  for (int s = std::max(0, level - 1); s <= level + 1; ++s) {
    const double w = block_weight(s, k);
    if (w != 0.0) out.push_back({s, w});
  }
  return out;
}

double cross_weight(const FreqIndex& k, int n) {
  double total = 0.0;
  for_each_block_weight(k, [&](const BlockIndex& s, double w) {
    if (s.l1() <= n) total += w;
  });
  return total;
}

double layer_weight(const FreqIndex& k, int n) {
  double total = 0.0;
  for_each_block_weight(k, [&](const BlockIndex& s, double w) {
    if (s.l1() == n) total += w;
  });
  return total;
}

TrigPolynomial delta_block(const TrigPolynomial& f, const BlockIndex& s) {
  if (s.dim() != f.dim()) throw InvalidArgument("block dimension mismatch");
  return f.filter([&](const FreqIndex& k) { return block_of(k) == s; });
}

TrigPolynomial vp_block(const TrigPolynomial& f, const BlockIndex& s) {
  if (s.dim() != f.dim()) throw InvalidArgument("block dimension mismatch");
  return f.multiply([&](const FreqIndex& k) {
    double w = 1.0;
    for (int j = 0; j < k.dim() && w != 0.0; ++j) w *= block_weight(s[j], k[j]);
    return w;
  });
}

TrigPolynomial project_cross(const TrigPolynomial& f, int n) {
  return f.filter([&](const FreqIndex& k) { return block_of(k).l1() <= n; });
}

TrigPolynomial vp_cross(const TrigPolynomial& f, int n) {
  return f.multiply([&](const FreqIndex& k) { return cross_weight(k, n); });
}

TrigPolynomial layer_op(const TrigPolynomial& f, int n, LayerKind kind) {
  if (n < 0) throw InvalidArgument("layer level must be non-negative");
  if (kind == LayerKind::sharp)
    return f.filter([&](const FreqIndex& k) { return block_of(k).l1() == n; });
  return f.multiply([&](const FreqIndex& k) { return layer_weight(k, n); });
}

std::vector<std::pair<int, TrigPolynomial>> layer_decomposition(const TrigPolynomial& f,
                                                               LayerKind kind) {
  const int d = f.dim();
  std::map<int, std::vector<TrigPolynomial::Term>> layers;
  for (const auto& [k, c] : f) {
    if (kind == LayerKind::sharp) {
      layers[static_cast<int>(block_of(k).l1())].emplace_back(k, c);
      continue;
    }
    // Candidate blocks of k span at most d + 1 consecutive layers.
    std::map<int, double> w;
    for_each_block_weight(k, [&](const BlockIndex& s, double ws) { w[static_cast<int>(s.l1())] += ws; });
    for (const auto& [n, wn] : w)
      if (wn != 0.0) layers[n].emplace_back(k, c * wn);
  }
  std::vector<std::pair<int, TrigPolynomial>> out;
  // Terms were appended in frequency order, so each list stays sorted.
  for (auto& [n, terms] : layers) out.emplace_back(n, TrigPolynomial::from_sorted(d, std::move(terms)));
  return out;
}

std::vector<std::pair<BlockIndex, TrigPolynomial>> vp_pieces(const TrigPolynomial& f) {
  const int d = f.dim();
  std::map<BlockIndex, std::vector<TrigPolynomial::Term>> pieces;
  for (const auto& [k, c] : f)
    for_each_block_weight(k, [&](const BlockIndex& s, double w) { pieces[s].emplace_back(k, c * w); });
  std::vector<std::pair<BlockIndex, TrigPolynomial>> out;
  for (auto& [s, terms] : pieces) {
    auto piece = TrigPolynomial::from_sorted(d, std::move(terms));
    if (!piece.empty()) out.emplace_back(s, std::move(piece));
  }
  return out;
}

std::vector<std::pair<BlockIndex, TrigPolynomial>> delta_pieces(const TrigPolynomial& f) {
  const int d = f.dim();
  std::map<BlockIndex, std::vector<TrigPolynomial::Term>> pieces;
  for (const auto& [k, c] : f) pieces[block_of(k)].emplace_back(k, c);
  std::vector<std::pair<BlockIndex, TrigPolynomial>> out;
  for (auto& [s, terms] : pieces) out.emplace_back(s, TrigPolynomial::from_sorted(d, std::move(terms)));
  return out;
}

// ---- norms --------------------------------------------------------------

double norm_lp(const GridFunction& g, double p) {
  LpAccumulator acc(p);
  acc.add(g.values());
  return acc.result();
}

double norm_lp(const TrigPolynomial& f, double p, std::span<const int> resolution,
               std::size_t slab_points) {
  check_p(p);
  check_alias_free(f, resolution);
  SlabEvaluator eval(std::vector<int>(resolution.begin(), resolution.end()), slab_points);
  LpAccumulator acc(p);
  std::vector<Complex> slab;
  for (int a = 0; a < eval.slab_count(); ++a) {
    eval.evaluate(f, a, slab);
    acc.add(slab);
  }
  return acc.result();
}

void SmoothnessSpec::validate() const {
  if (!(r > 0.0)) throw InvalidArgument("smoothness r must be positive");
  check_p(p);
  if (family == Family::B && !(q >= 1.0)) throw InvalidArgument("B-family q must lie in [1, inf]");
  if (family == Family::H && !(r < 1.0))
    throw InvalidArgument("H-family smoothness must satisfy 0 < r < 1");
}

namespace {

double piece_norm(const TrigPolynomial& piece, double p, const NormOptions& options) {
  if (options.resolution.empty())
    return norm_lp(piece, p, alias_free_resolution(piece, options.oversample), options.slab_points);
  return norm_lp(piece, p, options.resolution, options.slab_points);
}

double littlewood_paley_norm(const TrigPolynomial& f, const SmoothnessSpec& spec,
                             const NormOptions& options) {
  auto pieces = delta_pieces(f);
  if (spec.p == 2.0) {
    // The square function integrates blockwise by Parseval.
    double total = 0.0;
    for (const auto& [s, piece] : pieces) total += std::exp2(2.0 * spec.r * s.l1()) * piece.squared_l2();
    return std::sqrt(total);
  }
  std::vector<int> res = options.resolution;
  if (res.empty()) {
    res = alias_free_resolution(f, options.oversample);
    // For even p the p-th power of the square function is a polynomial of
    // degree p K per axis, which a grid finer than p K integrates exactly.
    if (spec.p <= 8.0 && spec.p == 2.0 * std::floor(spec.p / 2.0)) {
      const auto reach = f.max_abs_frequency();
      for (std::size_t j = 0; j < res.size(); ++j)
        res[j] = std::min(res[j], static_cast<int>(std::bit_ceil(
                                      static_cast<unsigned>(spec.p * reach[j] + 1.0))));
    }
  }
  check_alias_free(f, res);
  SlabEvaluator eval(res, options.slab_points);
  std::vector<double> square(eval.slab_size());
  std::vector<Complex> slab;
  LpAccumulator acc(spec.p);
  for (int a = 0; a < eval.slab_count(); ++a) {
    std::fill(square.begin(), square.end(), 0.0);
    for (const auto& [s, piece] : pieces) {
      const double w = std::exp2(2.0 * spec.r * s.l1());
      eval.evaluate(piece, a, slab);
      for (std::size_t i = 0; i < slab.size(); ++i) square[i] += w * std::norm(slab[i]);
    }
    for (double& v : square) v = std::sqrt(v);
    acc.add_real(square);
  }
  return acc.result();
}

}  // namespace

double norm_smoothness(const TrigPolynomial& f, const SmoothnessSpec& spec,
                       const NormOptions& options) {
  spec.validate();
  if (f.empty()) return 0.0;
  if (spec.family == Family::W) return littlewood_paley_norm(f, spec, options);

  const bool sup = spec.family == Family::H || std::isinf(spec.q);
  double total = 0.0;
  for (const auto& [s, piece] : vp_pieces(f)) {
    const double v = std::exp2(spec.r * s.l1()) * piece_norm(piece, spec.p, options);
    if (sup)
      total = std::max(total, v);
    else
      total += std::pow(v, spec.q);
  }
  return sup ? total : std::pow(total, 1.0 / spec.q);
}

double seminorm_h_diff(const GridFunction& g, double r, double p, std::span<const int> axes,
                       std::span<const int> steps) {
  check_p(p);
  for (int axis : axes)
    if (axis < 0 || axis >= g.dim()) throw InvalidArgument("difference axis out of range");
  if (axes.empty()) return norm_lp(g, p);
  if (steps.empty()) throw InvalidArgument("step list must not be empty");
  for (int t : steps)
    if (t <= 0) throw InvalidArgument("difference steps must be positive");

  const std::size_t e = axes.size();
  std::vector<std::size_t> pos(e, 0);
  double best = 0.0;
  while (true) {
    GridFunction diff = g;
    double weight = 1.0;
    for (std::size_t i = 0; i < e; ++i) {
      const int axis = axes[i];
      const int t = steps[pos[i]];
      GridFunction moved = diff.shifted(axis, t);
      auto mv = moved.values();
      auto dv = diff.values();
      for (std::size_t q = 0; q < dv.size(); ++q) dv[q] = mv[q] - dv[q];
      const double h = 2.0 * std::numbers::pi * t / g.shape()[axis];
      weight *= std::pow(h, -r);
    }
    best = std::max(best, weight * norm_lp(diff, p));
    std::size_t i = e;
    while (i > 0 && ++pos[i - 1] == steps.size()) pos[--i] = 0;
    if (i == 0) break;
  }
  return best;
}

double norm_h_diff(const GridFunction& g, double r, double p, std::span<const int> steps) {
  const int d = g.dim();
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    std::vector<int> axes;
    for (int j = 0; j < d; ++j)
      if (mask & (1u << j)) axes.push_back(j);
    total += seminorm_h_diff(g, r, p, axes, steps);
  }
  return total;
}

double l1_kernel_norm(int n, int d, std::span<const int> resolution) {
  check_dimension(d);
  if (n < 0 || n > 28) throw InvalidArgument("kernel level out of range");
  if (static_cast<int>(resolution.size()) != d) throw InvalidArgument("resolution length must equal d");
  const long reach = (1L << (n + 1)) - 1;
  for (int N : resolution)
    if (static_cast<long>(N) <= 2 * reach)
      throw AliasingError("resolution too coarse for the level-" + std::to_string(n) + " kernel");
  std::vector<int> shape(resolution.begin(), resolution.end());
  const std::size_t total = grid_points(shape);
  if (total > kDefaultGridCap) throw ResourceError("kernel grid exceeds the grid cap");

  std::vector<Complex> buf(total);
  FreqIndex k(d);
  for (int j = 0; j < d; ++j) k[j] = static_cast<int>(-reach);
  while (true) {
    const double w = cross_weight(k, n);
    if (w != 0.0) {
      std::size_t flat = 0;
      for (int j = 0; j < d; ++j)
        flat = flat * static_cast<std::size_t>(shape[j]) +
               static_cast<std::size_t>(wrap(k[j], shape[j]));
      buf[flat] = w;
    }
    int j = d - 1;
    while (j >= 0 && k[j] == reach) k[j--] = static_cast<int>(-reach);
    if (j < 0) break;
    ++k[j];
  }
  fft::transform(buf, shape, fft::Direction::backward);
  double sum = 0.0;
  for (const Complex& v : buf) sum += std::abs(v);
  return sum / static_cast<double>(total);
}

}  // namespace hcross
