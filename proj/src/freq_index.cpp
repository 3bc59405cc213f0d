#include "hcross/freq_index.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

#include "hcross/errors.hpp"

namespace hcross {

namespace {

using u64 = std::uint64_t;

u64 checked_mul(u64 a, u64 b) {
  if (a != 0 && b > std::numeric_limits<u64>::max() / a)
    throw OverflowError("frequency count exceeds 64-bit range");
  return a * b;
}

u64 checked_add(u64 a, u64 b) {
  if (b > std::numeric_limits<u64>::max() - a)
    throw OverflowError("frequency count exceeds 64-bit range");
  return a + b;
}

u64 binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u64 result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const u64 num = static_cast<u64>(n - k + i);
    const u64 g = std::gcd(result, static_cast<u64>(i));
    result = checked_mul(result / g, num / (static_cast<u64>(i) / g));
  }
  return result;
}

// Per-axis frequencies of rho(s_j), ascending.
std::vector<int> axis_block(int s) {
  if (s == 0) return {0};
  if (s > 30) throw OverflowError("dyadic scale too large for 32-bit frequencies");
  const int lo = 1 << (s - 1);
  const int hi = (1 << s) - 1;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(2 * (hi - lo + 1)));
  for (int k = -hi; k <= -lo; ++k) out.push_back(k);
  for (int k = lo; k <= hi; ++k) out.push_back(k);
  return out;
}

void compositions(int n, int d, int j, std::array<int, kMaxDim>& cur,
                  std::vector<BlockIndex>& out) {
  if (j == d - 1) {
    cur[j] = n;
    out.emplace_back(std::span<const int>(cur.data(), static_cast<std::size_t>(d)));
    return;
  }
  for (int v = 0; v <= n; ++v) {
    cur[j] = v;
    compositions(n - v, d, j + 1, cur, out);
  }
}

void append_block(const BlockIndex& s, std::vector<FreqIndex>& out) {
  const int d = s.dim();
  std::array<std::vector<int>, kMaxDim> axes;
  for (int j = 0; j < d; ++j) axes[j] = axis_block(s[j]);
  std::array<std::size_t, kMaxDim> idx{};
  FreqIndex k(d);
  while (true) {
    for (int j = 0; j < d; ++j) k[j] = axes[j][idx[j]];
    out.push_back(k);
    int j = d - 1;
    while (j >= 0 && ++idx[j] == axes[j].size()) idx[j--] = 0;
    if (j < 0) break;
  }
}

}  // namespace

void check_dimension(int d) {
  if (d < 1 || d > kMaxDim)
    throw InvalidArgument("dimension must lie in [1, " + std::to_string(kMaxDim) +
                          "], got " + std::to_string(d));
}

BlockIndex::BlockIndex(std::initializer_list<int> values)
    : BlockIndex(std::span<const int>(values.begin(), values.size())) {}

BlockIndex::BlockIndex(std::span<const int> values) : Base(values) {
  for (int v : values)
    if (v < 0) throw InvalidArgument("block index entries must be non-negative");
}

FreqSet::FreqSet(int d, std::vector<FreqIndex> elements) : dim_(d), elems_(std::move(elements)) {
  for (const auto& k : elems_)
    if (k.dim() != d) throw InvalidArgument("frequency dimension mismatch in FreqSet");
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool FreqSet::contains(const FreqIndex& k) const {
  return std::binary_search(elems_.begin(), elems_.end(), k);
}

int dyadic_level(long k) {
  const auto a = static_cast<unsigned long>(k < 0 ? -k : k);
  return static_cast<int>(std::bit_width(a));
}

BlockIndex block_of(const FreqIndex& k) {
  BlockIndex s(k.dim());
  for (int j = 0; j < k.dim(); ++j) s[j] = dyadic_level(k[j]);
  return s;
}

std::vector<BlockIndex> blocks_on_layer(int n, int d) {
  check_dimension(d);
  if (n < 0) return {};
  std::vector<BlockIndex> out;
  std::array<int, kMaxDim> cur{};
  compositions(n, d, 0, cur, out);
  return out;
}

std::vector<BlockIndex> blocks_in_cross(int n, int d) {
  std::vector<BlockIndex> out;
  for (int l = 0; l <= n; ++l) {
    auto layer = blocks_on_layer(l, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

FreqSet block_indices(const BlockIndex& s) {
  check_dimension(s.dim());
  std::vector<FreqIndex> out;
  out.reserve(std::size_t{1} << std::min<long>(s.l1(), 40));
  append_block(s, out);
  return FreqSet(s.dim(), std::move(out));
}

std::uint64_t layer_rank(int n, int d) {
  check_dimension(d);
  if (n < 0) throw InvalidArgument("layer level must be non-negative");
  if (n >= 64) throw OverflowError("layer rank exceeds 64-bit range");
  return checked_mul(u64{1} << n, binomial(n + d - 1, d - 1));
}

std::uint64_t cross_size(int n, int d) {
  u64 total = 0;
  for (int l = 0; l <= n; ++l) total = checked_add(total, layer_rank(l, d));
  return total;
}

FreqSet cross_indices(int n, int d, std::uint64_t cap) {
  check_dimension(d);
  if (n < 0) throw InvalidArgument("cross level must be non-negative");
  const u64 count = cross_size(n, d);
  if (count > cap)
    throw ResourceError("|Q_" + std::to_string(n) + "| = " + std::to_string(count) +
                        " exceeds the frequency cap " + std::to_string(cap));
  std::vector<FreqIndex> out;
  out.reserve(count);
  for (const auto& s : blocks_in_cross(n, d)) append_block(s, out);
  return FreqSet(d, std::move(out));
}

FreqSet layer_indices(int n, int d, std::uint64_t cap) {
  check_dimension(d);
  if (n < 0) throw InvalidArgument("layer level must be non-negative");
  const u64 count = layer_rank(n, d);
  if (count > cap)
    throw ResourceError("layer " + std::to_string(n) + " size " + std::to_string(count) +
                        " exceeds the frequency cap " + std::to_string(cap));
  std::vector<FreqIndex> out;
  out.reserve(count);
  for (const auto& s : blocks_on_layer(n, d)) append_block(s, out);
  return FreqSet(d, std::move(out));
}

}  // namespace hcross
