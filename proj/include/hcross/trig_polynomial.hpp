#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "hcross/freq_index.hpp"

namespace hcross {

using Complex = std::complex<double>;

// Sparse trigonometric polynomial sum_k c_k e^{i k.x} on T^d.
//
// Terms are kept sorted by frequency (lexicographic), without duplicates
// and without exact zeros. All mutation goes through factory functions or
// the Builder so the invariant cannot be broken from outside.
class TrigPolynomial {
 public:
  using Term = std::pair<FreqIndex, Complex>;

  TrigPolynomial() = default;
  explicit TrigPolynomial(int d);

  // Accumulates terms in any order; duplicates are summed on build().
  class Builder {
   public:
    explicit Builder(int d);
    void add(const FreqIndex& k, Complex c);
    void reserve(std::size_t n) { terms_.reserve(n); }
    TrigPolynomial build() &&;

   private:
    int dim_;
    std::vector<Term> terms_;
  };

  // Takes terms that are already sorted and unique; zeros are dropped.
  static TrigPolynomial from_sorted(int d, std::vector<Term> terms);

  int dim() const { return dim_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  // Coefficient at k, zero when absent.
  Complex coeff(const FreqIndex& k) const;
  FreqSet support() const;

  // Per-axis max |k_j| over the support (zeros for the empty polynomial).
  std::vector<int> max_abs_frequency() const;

  // Largest |s(k)|_1 over the support, -1 when empty.
  int max_layer() const;

  // Pointwise evaluation by direct summation.
  Complex evaluate(std::span<const double> x) const;

  // sum |c_k|^2 accumulated in frequency order.
  double squared_l2() const;
  double l2_norm() const;
  double max_abs_coeff() const;

  // Keeps terms whose frequency satisfies pred.
  TrigPolynomial filter(const std::function<bool(const FreqIndex&)>& pred) const;

  // c_k -> weight(k) * c_k, evaluating the weight once per term.
  TrigPolynomial multiply(const std::function<double(const FreqIndex&)>& weight) const;

  TrigPolynomial scaled(Complex a) const;

  friend TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b);
  friend TrigPolynomial operator-(const TrigPolynomial& a, const TrigPolynomial& b);

  bool operator==(const TrigPolynomial&) const = default;

 private:
  int dim_ = 0;
  std::vector<Term> terms_;
};

// Max over the union of supports of |a_k - b_k|.
double max_coeff_distance(const TrigPolynomial& a, const TrigPolynomial& b);

}  // namespace hcross
