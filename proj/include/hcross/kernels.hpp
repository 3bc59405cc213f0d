#pragma once

#include <vector>

#include "hcross/freq_index.hpp"
#include "hcross/trig_polynomial.hpp"

namespace hcross {

// Dirichlet kernel D_k(t) = sum_{|j|<=k} e^{ijt}.
double dirichlet_eval(int order, double t);

// de la Vallee Poussin kernel V_m(t) = (1/m) sum_{k=m}^{2m-1} D_k(t), closed form.
double vp_eval(int m, double t);

// Fourier multiplier of V_m at frequency k: 1 up to m, linear ramp to 0 at 2m.
double vp_weight(int m, long k);

// Univariate multiplier of the block kernel A_s: V_1 for s = 0,
// V_{2^s} - V_{2^(s-1)} otherwise. Values are dyadic rationals in [0, 1].
double block_weight(int s, long k);

// Finite univariate multiplier table over |k| <= reach.
class UnivariateMultiplier {
 public:
  UnivariateMultiplier() = default;
  // weights[i] is the value at k = i - reach.
  UnivariateMultiplier(int reach, std::vector<double> weights);

  int reach() const { return reach_; }
  double operator()(long k) const;
  // Frequencies with non-zero weight, ascending.
  std::vector<int> support() const;

 private:
  int reach_ = 0;
  std::vector<double> weights_{1.0};
};

// Tensor-product multiplier table: weight(k) = prod_j axis_j(k_j).
class MultiplierTable {
 public:
  explicit MultiplierTable(std::vector<UnivariateMultiplier> axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  const UnivariateMultiplier& axis(int j) const { return axes_[j]; }
  double weight(const FreqIndex& k) const;
  FreqSet support() const;
  // (k, weight) for every k in the support, lexicographic.
  std::vector<std::pair<FreqIndex, double>> entries() const;

 private:
  std::vector<UnivariateMultiplier> axes_;
};

MultiplierTable vp_multiplier(int m);
MultiplierTable block_multiplier(const BlockIndex& s);

struct BernoulliSpec {
  double r = 1.0;
  std::vector<double> alpha{0.0};  // one phase per axis; its length is d
  int truncation = 64;             // K: per-axis frequencies |k| <= K

  void validate() const;
};

// Truncated tensor Bernoulli kernel prod_j F_{r,alpha_j}(x_j) with
// c(0) = 1, c(+-k) = k^{-r} e^{-+ i alpha pi / 2} per axis.
TrigPolynomial bernoulli_poly(const BernoulliSpec& spec);

}  // namespace hcross
