#include "hcross/registry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hcross/errors.hpp"
#include "hcross/kernels.hpp"

namespace hcross {

namespace {

TrigPolynomial tensor_decay(const RegistryParams& params, int d) {
  if (params.box < 0) throw InvalidArgument("tensor_decay box must be non-negative");
  const int reach = params.box;
  std::vector<double> axis(static_cast<std::size_t>(reach) + 1);
  for (int k = 0; k <= reach; ++k) axis[k] = std::pow(std::max(1, k), -params.beta);
  std::vector<TrigPolynomial::Term> terms;
  FreqIndex k(d);
  for (int j = 0; j < d; ++j) k[j] = -reach;
  while (true) {
    double c = 1.0;
    for (int j = 0; j < d; ++j) c *= axis[static_cast<std::size_t>(std::abs(k[j]))];
    terms.emplace_back(k, c);
    int j = d - 1;
    while (j >= 0 && k[j] == reach) k[j--] = -reach;
    if (j < 0) break;
    ++k[j];
  }
  return TrigPolynomial::from_sorted(d, std::move(terms));
}

// Seeded Gaussian blocks on Q_level with ||delta_s f||_p = 2^{-r|s|}, then one
// global factor so that the class norm equals 1.
TrigPolynomial random_ball(Family family, const RegistryParams& params, int d) {
  SmoothnessSpec spec{family, params.r, params.p, 2.0, {}};
  spec.validate();
  if (params.level < 0) throw InvalidArgument("ball level must be non-negative");
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> gauss;
  std::vector<TrigPolynomial::Term> terms;
  for (const auto& s : blocks_in_cross(params.level, d)) {
    std::vector<TrigPolynomial::Term> block;
    for (const auto& k : block_indices(s)) block.emplace_back(k, Complex(gauss(rng), gauss(rng)));
    auto piece = TrigPolynomial::from_sorted(d, std::move(block));
    const double size = params.p == 2.0
                            ? piece.l2_norm()
                            : norm_lp(piece, params.p, alias_free_resolution(piece, params.oversample));
    const double scale = std::exp2(-params.r * static_cast<double>(s.l1())) / size;
    for (const auto& [k, c] : piece) terms.emplace_back(k, c * scale);
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  auto f = TrigPolynomial::from_sorted(d, std::move(terms));
  NormOptions options;
  options.oversample = params.oversample;
  return f.scaled(1.0 / norm_smoothness(f, spec, options));
}

}  // namespace

std::vector<std::string> registry_names() {
  return {"bernoulli", "tensor_decay", "random_H_ball", "random_W_ball"};
}

TrigPolynomial registry_function(const std::string& name, const RegistryParams& params, int d) {
  check_dimension(d);
  if (name == "bernoulli") {
    BernoulliSpec spec;
    spec.r = params.r;
    spec.alpha = params.alpha.empty() ? std::vector<double>(static_cast<std::size_t>(d), 0.0) : params.alpha;
    if (static_cast<int>(spec.alpha.size()) != d) throw InvalidArgument("bernoulli needs one phase per axis");
    spec.truncation = params.truncation;
    return bernoulli_poly(spec);
  }
  if (name == "tensor_decay") return tensor_decay(params, d);
  if (name == "random_H_ball") return random_ball(Family::H, params, d);
  if (name == "random_W_ball") return random_ball(Family::W, params, d);
  throw InvalidArgument("unknown registry function '" + name + "'");
}

}  // namespace hcross
