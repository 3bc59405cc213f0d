#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

namespace hcross {

// Dimensions above this are not supported anywhere in the library.
inline constexpr int kMaxDim = 4;

// Default cap on materialized frequency sets.
inline constexpr std::uint64_t kDefaultFrequencyCap = std::uint64_t{1} << 26;

void check_dimension(int d);

namespace detail {

// Fixed-capacity integer vector of runtime length d <= kMaxDim. Unused
// trailing slots stay zero, so the defaulted comparison is lexicographic
// for vectors of equal length.
template <class Tag>
class SmallIntVector {
 public:
  SmallIntVector() = default;
  explicit SmallIntVector(int d) : dim_(d) { check_dimension(d); }
  SmallIntVector(std::initializer_list<int> values)
      : SmallIntVector(std::span<const int>(values.begin(), values.size())) {}
  explicit SmallIntVector(std::span<const int> values)
      : dim_(static_cast<int>(values.size())) {
    check_dimension(dim_);
    for (int j = 0; j < dim_; ++j) v_[j] = values[j];
  }

  int dim() const { return dim_; }
  int operator[](int j) const { return v_[j]; }
  int& operator[](int j) { return v_[j]; }
  std::span<const int> values() const { return {v_.data(), static_cast<std::size_t>(dim_)}; }

  // Sum of absolute values.
  long l1() const {
    long s = 0;
    for (int j = 0; j < dim_; ++j) s += v_[j] < 0 ? -long{v_[j]} : long{v_[j]};
    return s;
  }
  int linf() const {
    int m = 0;
    for (int j = 0; j < dim_; ++j) m = std::max(m, v_[j] < 0 ? -v_[j] : v_[j]);
    return m;
  }

  auto operator<=>(const SmallIntVector&) const = default;
  bool operator==(const SmallIntVector&) const = default;

 private:
  std::array<int, kMaxDim> v_{};
  int dim_ = 0;
};

template <class Tag>
std::ostream& operator<<(std::ostream& os, const SmallIntVector<Tag>& v) {
  os << '(';
  for (int j = 0; j < v.dim(); ++j) os << (j ? "," : "") << v[j];
  return os << ')';
}

struct FreqTag {};
struct BlockTag {};

}  // namespace detail

// Integer frequency vector k in Z^d.
using FreqIndex = detail::SmallIntVector<detail::FreqTag>;

// Dyadic scale vector s in N_0^d.
class BlockIndex : public detail::SmallIntVector<detail::BlockTag> {
 public:
  using Base = detail::SmallIntVector<detail::BlockTag>;
  BlockIndex() = default;
  explicit BlockIndex(int d) : Base(d) {}
  BlockIndex(std::initializer_list<int> values);
  explicit BlockIndex(std::span<const int> values);
};

// Sorted, duplicate-free set of frequencies of one dimension.
class FreqSet {
 public:
  FreqSet() = default;
  explicit FreqSet(int d) : dim_(d) {}
  // Sorts and removes duplicates; every element must have dimension d.
  FreqSet(int d, std::vector<FreqIndex> elements);

  int dim() const { return dim_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  bool contains(const FreqIndex& k) const;
  const FreqIndex& operator[](std::size_t i) const { return elems_[i]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  const std::vector<FreqIndex>& elements() const { return elems_; }

  bool operator==(const FreqSet&) const = default;

 private:
  int dim_ = 0;
  std::vector<FreqIndex> elems_;
};

// Dyadic level of a single coordinate: 0 for k = 0, else the bit width of
// |k|, so that floor(2^(level-1)) <= |k| < 2^level.
int dyadic_level(long k);

// The block s with k in rho(s).
BlockIndex block_of(const FreqIndex& k);

// All s in N_0^d with |s|_1 == n, lexicographically ascending.
std::vector<BlockIndex> blocks_on_layer(int n, int d);

// All s in N_0^d with |s|_1 <= n, lexicographically ascending.
std::vector<BlockIndex> blocks_in_cross(int n, int d);

// rho(s) = { k : floor(2^(s_j-1)) <= |k_j| < 2^(s_j) }.
FreqSet block_indices(const BlockIndex& s);

// Step hyperbolic cross Q_n; throws ResourceError above the cap.
FreqSet cross_indices(int n, int d, std::uint64_t cap = kDefaultFrequencyCap);

// Q_n \ Q_(n-1), or Q_0 for n == 0.
FreqSet layer_indices(int n, int d, std::uint64_t cap = kDefaultFrequencyCap);

// |layer_indices(n, d)| = 2^n * binom(n+d-1, d-1); throws OverflowError.
std::uint64_t layer_rank(int n, int d);

// |Q_n| without materializing the set; throws OverflowError.
std::uint64_t cross_size(int n, int d);

}  // namespace hcross
