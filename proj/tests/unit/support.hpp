#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hcross/freq_index.hpp"
#include "hcross/trig_polynomial.hpp"

namespace hcross::testing {

// Gaussian complex coefficients on the given set.
inline TrigPolynomial random_on(const FreqSet& set, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<TrigPolynomial::Term> terms;
  terms.reserve(set.size());
  for (const auto& k : set) terms.emplace_back(k, Complex(g(rng), g(rng)));
  return TrigPolynomial::from_sorted(set.dim(), std::move(terms));
}

inline TrigPolynomial random_on_cross(int n, int d, std::uint64_t seed) {
  return random_on(cross_indices(n, d), seed);
}

// Random coefficients on a box |k_j| <= reach, each kept with probability keep.
inline TrigPolynomial random_box(int d, int reach, double keep, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  TrigPolynomial::Builder b(d);
  FreqIndex k(d);
  for (int j = 0; j < d; ++j) k[j] = -reach;
  while (true) {
    if (u(rng) < keep) b.add(k, Complex(g(rng), g(rng)));
    int j = d - 1;
    while (j >= 0 && k[j] == reach) k[j--] = -reach;
    if (j < 0) break;
    ++k[j];
  }
  return std::move(b).build();
}

}  // namespace hcross::testing
