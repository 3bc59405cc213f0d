#include "hcross/smolyak.hpp"

#include <cmath>
#include <unordered_map>

#include "hcross/errors.hpp"
#include "hcross/fft.hpp"
#include "hcross/freq_index.hpp"

namespace hcross {

Sampler::Sampler(int d) : dim_(d) { check_dimension(d); }

Complex Sampler::operator()(std::span<const double> x) {
  if (static_cast<int>(x.size()) != dim_) throw InvalidArgument("sample point dimension mismatch");
  calls_.fetch_add(1);
  return evaluate_point(x);
}

void Sampler::sample_grid(std::span<const int> shape, std::span<const std::size_t> flat,
                          std::span<Complex> out) {
  if (static_cast<int>(shape.size()) != dim_) throw InvalidArgument("grid dimension mismatch");
  if (out.size() != flat.size()) throw InvalidArgument("output size mismatch");
  calls_.fetch_add(flat.size());
  evaluate_grid(shape, flat, out);
}

void Sampler::evaluate_grid(std::span<const int> shape, std::span<const std::size_t> flat,
                            std::span<Complex> out) {
  GridFunction coords{std::vector<int>(shape.begin(), shape.end())};
  for (std::size_t i = 0; i < flat.size(); ++i) out[i] = evaluate_point(coords.point(flat[i]));
}

FunctionSampler::FunctionSampler(int d, std::function<Complex(std::span<const double>)> fn)
    : Sampler(d), fn_(std::move(fn)) {}

Complex FunctionSampler::evaluate_point(std::span<const double> x) { return fn_(x); }

PolynomialSampler::PolynomialSampler(TrigPolynomial p) : Sampler(p.dim()), p_(std::move(p)) {}

Complex PolynomialSampler::evaluate_point(std::span<const double> x) { return p_.evaluate(x); }

void PolynomialSampler::evaluate_grid(std::span<const int> shape, std::span<const std::size_t> flat,
                                      std::span<Complex> out) {
  // Folding frequencies modulo the grid gives exact samples at any size.
  std::size_t total = 1;
  for (int n : shape) total *= static_cast<std::size_t>(n);
  std::vector<Complex> buf(total);
  for (const auto& [k, c] : p_) {
    std::size_t idx = 0;
    for (int j = 0; j < dim(); ++j) {
      const long n = shape[j];
      idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(((k[j] % n) + n) % n);
    }
    buf[idx] += c;
  }
  fft::transform(buf, shape, fft::Direction::backward);
  for (std::size_t i = 0; i < flat.size(); ++i) out[i] = buf[flat[i]];
}

namespace {

long binomial_small(int n, int k) {
  if (k < 0 || k > n) return 0;
  long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Level vectors t in N_0^d with lo <= |t|_1 <= hi.
void levels_between(int d, int lo, int hi, std::vector<std::vector<int>>& out) {
  std::vector<int> t(d, 0);
  auto rec = [&](auto&& self, int j, int used) -> void {
    if (j == d) {
      if (used >= lo) out.push_back(t);
      return;
    }
    for (int v = 0; used + v <= hi; ++v) {
      t[j] = v;
      self(self, j + 1, used + v);
    }
    t[j] = 0;
  };
  rec(rec, 0, 0);
}

}  // namespace

TrigPolynomial smolyak_recover(Sampler& sampler, int n) {
  const int d = sampler.dim();
  if (n < 0) throw InvalidArgument("Smolyak level must be non-negative");
  const int fine_bits = n + 1;  // fine grid has 2^(n+1) points per axis
  if (fine_bits * d > 64 || n > 28) throw ResourceError("Smolyak level too large for this dimension");

  // Combination technique: T_n = sum_{n-d < |t| <= n} (-1)^(n-|t|) binom(d-1, n-|t|) I_t.
  std::vector<std::vector<int>> levels;
  levels_between(d, std::max(0, n - d + 1), n, levels);

  std::unordered_map<std::uint64_t, Complex> cache;
  TrigPolynomial::Builder builder(d);
  for (const auto& t : levels) {
    int norm = 0;
    for (int v : t) norm += v;
    const double weight =
        ((n - norm) % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(binomial_small(d - 1, n - norm));

    std::vector<int> shape(d);
    std::size_t total = 1;
    for (int j = 0; j < d; ++j) {
      shape[j] = 1 << (t[j] + 1);
      total *= static_cast<std::size_t>(shape[j]);
    }
    // Fine-grid key of every point of this component grid.
    std::vector<std::uint64_t> keys(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rest = flat;
      std::uint64_t key = 0;
      std::vector<std::uint64_t> fine(d);
      for (int j = d - 1; j >= 0; --j) {
        const auto i = rest % static_cast<std::size_t>(shape[j]);
        rest /= static_cast<std::size_t>(shape[j]);
        fine[j] = static_cast<std::uint64_t>(i) << (fine_bits - t[j] - 1);
      }
      for (int j = 0; j < d; ++j) key = (key << fine_bits) | fine[j];
      keys[flat] = key;
    }
    std::vector<std::size_t> missing;
    for (std::size_t flat = 0; flat < total; ++flat)
      if (!cache.contains(keys[flat])) missing.push_back(flat);
    if (!missing.empty()) {
      std::vector<Complex> fresh(missing.size());
      sampler.sample_grid(shape, missing, fresh);
      for (std::size_t i = 0; i < missing.size(); ++i) cache.emplace(keys[missing[i]], fresh[i]);
    }

    std::vector<Complex> buf(total);
    for (std::size_t flat = 0; flat < total; ++flat) buf[flat] = cache.at(keys[flat]);
    fft::transform(buf, shape, fft::Direction::forward);
    const double scale = weight / static_cast<double>(total);

    // Unfold into frequencies; the Nyquist coefficient is shared by +-N/2.
    for (std::size_t flat = 0; flat < total; ++flat) {
      if (buf[flat] == Complex{}) continue;
      std::array<std::array<std::pair<int, double>, 2>, kMaxDim> choices{};
      std::array<int, kMaxDim> count{};
      std::size_t rest = flat;
      for (int j = d - 1; j >= 0; --j) {
        const int nj = shape[j];
        const int i = static_cast<int>(rest % static_cast<std::size_t>(nj));
        rest /= static_cast<std::size_t>(nj);
        if (2 * i == nj) {
          choices[j] = {{{nj / 2, 0.5}, {-nj / 2, 0.5}}};
          count[j] = 2;
        } else {
          choices[j][0] = {2 * i < nj ? i : i - nj, 1.0};
          count[j] = 1;
        }
      }
      std::array<int, kMaxDim> pos{};
      FreqIndex k(d);
      while (true) {
        double w = scale;
        for (int j = 0; j < d; ++j) {
          k[j] = choices[j][pos[j]].first;
          w *= choices[j][pos[j]].second;
        }
        builder.add(k, w * buf[flat]);
        int j = d - 1;
        while (j >= 0 && ++pos[j] == count[j]) pos[j--] = 0;
        if (j < 0) break;
      }
    }
  }
  return std::move(builder).build();
}

std::uint64_t sparse_grid_size(int n, int d) {
  check_dimension(d);
  if (n < 0) throw InvalidArgument("Smolyak level must be non-negative");
  // Points first appearing at univariate level t: 2 for t = 0, 2^t after.
  std::vector<std::vector<int>> levels;
  levels_between(d, 0, n, levels);
  std::uint64_t total = 0;
  for (const auto& t : levels) {
    std::uint64_t c = 1;
    for (int v : t) c *= v == 0 ? 2u : (std::uint64_t{1} << v);
    total += c;
  }
  return total;
}

std::vector<RecoveryRow> recovery_error_sweep(
    const std::function<std::unique_ptr<Sampler>()>& factory, const TrigPolynomial& exact,
    std::span<const int> levels, double p, const ErrorOptions& options) {
  std::vector<RecoveryRow> rows;
  for (int n : levels) {
    auto sampler = factory();
    if (!sampler || sampler->dim() != exact.dim()) throw InvalidArgument("sampler factory mismatch");
    const TrigPolynomial approx = smolyak_recover(*sampler, n);
    RecoveryRow row;
    row.level = n;
    row.samples = sampler->call_count();
    row.error_l2 = (exact - approx).l2_norm();
    row.error = p == 2.0 ? row.error_l2 : measure_error(exact, approx, p, options);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hcross
