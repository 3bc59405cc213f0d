#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hcross/kernels.hpp"
#include "hcross/spectral.hpp"

using namespace hcross;

namespace {

double dirichlet_direct(int k, double t) {
  double s = 1.0;
  for (int j = 1; j <= k; ++j) s += 2.0 * std::cos(j * t);
  return s;
}

double vp_average(int m, double t) {
  double s = 0.0;
  for (int k = m; k < 2 * m; ++k) s += dirichlet_direct(k, t);
  return s / m;
}

}  // namespace

TEST_CASE("Dirichlet kernel") {
  CHECK(dirichlet_eval(0, 0.7) == doctest::Approx(1.0));
  CHECK(dirichlet_eval(1, 0.0) == doctest::Approx(3.0));
  CHECK(std::abs(dirichlet_eval(5, 1.0) - dirichlet_direct(5, 1.0)) < 1e-12);
  CHECK(std::abs(dirichlet_eval(7, 1e-9) - 15.0) < 1e-9);
}

TEST_CASE("de la Vallee Poussin kernel") {
  for (double t : {0.0, 0.3, 1.7, 3.1, 5.9}) CHECK(std::abs(vp_eval(1, t) - (1 + 2 * std::cos(t))) < 1e-12);
  CHECK(vp_eval(8, 0.0) == doctest::Approx(24.0));
  CHECK(std::abs(vp_average(8, 0.0) - 24.0) < 1e-12);
  CHECK(std::abs(vp_eval(16, 0.37) - vp_average(16, 0.37)) < 1e-10);
}

TEST_CASE("multiplier tables") {
  const auto v1 = vp_multiplier(1);
  CHECK(v1.weight(FreqIndex{0}) == 1.0);
  CHECK(v1.weight(FreqIndex{1}) == 1.0);
  CHECK(v1.weight(FreqIndex{-1}) == 1.0);
  CHECK(v1.support().size() == 3);
  CHECK(vp_multiplier(4).weight(FreqIndex{6}) == 0.5);
  for (int m : {1, 3, 17}) CHECK(vp_multiplier(m).weight(FreqIndex{0}) == 1.0);

  CHECK(block_multiplier(BlockIndex{0}).entries() == vp_multiplier(1).entries());
  const auto a2 = block_multiplier(BlockIndex{2});
  CHECK(a2.weight(FreqIndex{4}) == 1.0);
  CHECK(a2.weight(FreqIndex{2}) == 0.0);
  CHECK(block_multiplier(BlockIndex{1, 1}).weight(FreqIndex{2, 2}) == 1.0);
  for (const auto& [k, w] : block_multiplier(BlockIndex{3, 2}).entries()) {
    CHECK(w >= -1.0);
    CHECK(w <= 1.0);
    CHECK(w != 0.0);
    CHECK(std::abs(k[0]) < 16);
    CHECK(std::abs(k[0]) > 4);
    CHECK(std::abs(k[1]) < 8);
    CHECK(std::abs(k[1]) > 2);
  }
}

TEST_CASE("block weights partition unity") {
  for (long k = -4096; k <= 4096; ++k) {
    double sum = 0.0;
    for (int s = 0; s <= 14; ++s) sum += block_weight(s, k);
    REQUIRE(sum == 1.0);
  }
}

TEST_CASE("vp multiplier synthesis matches the closed form") {
  for (int m = 1; m <= 1024; m *= 2) {
    TrigPolynomial::Builder b(1);
    for (const auto& [k, w] : vp_multiplier(m).entries()) b.add(k, w);
    const auto poly = std::move(b).build();
    const int points = 4 * m;
    const std::vector<int> res{points};
    const auto grid = synthesize(poly, res);
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
      // Same points, placed in (-pi, pi] where rounding of t is smallest.
      const double t = 2.0 * std::numbers::pi * (2 * i < points ? i : i - points) / points;
      worst = std::max(worst, std::abs(grid[i] - vp_eval(m, t)));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("Bernoulli polynomial") {
  BernoulliSpec spec;
  spec.r = 2.0;
  spec.alpha = {0.0};
  spec.truncation = 8;
  const auto f = bernoulli_poly(spec);
  CHECK(f.coeff(FreqIndex{0}) == Complex(1.0, 0.0));
  CHECK(std::abs(f.coeff(FreqIndex{3}) - Complex(1.0 / 9.0, 0.0)) < 1e-15);
  CHECK(f.coeff(FreqIndex{3}).imag() == 0.0);
  CHECK(f.size() == 17);

  spec.alpha = {1.0};
  const auto g = bernoulli_poly(spec);
  CHECK(std::abs(g.coeff(FreqIndex{1}) - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(g.coeff(FreqIndex{-1}) - Complex(0.0, 1.0)) < 1e-15);

  // Hermitian symmetry: the kernel is real valued.
  spec.alpha = {0.3};
  spec.r = 0.7;
  for (const auto& [k, c] : bernoulli_poly(spec)) {
    FreqIndex neg{-k[0]};
    CHECK(std::abs(bernoulli_poly(spec).coeff(neg) - std::conj(c)) < 1e-15);
  }
}

TEST_CASE("Bernoulli tensor structure") {
  BernoulliSpec a{0.6, {0.2}, 10}, b{0.6, {1.3}, 10}, ab{0.6, {0.2, 1.3}, 10};
  const auto fa = bernoulli_poly(a), fb = bernoulli_poly(b), fab = bernoulli_poly(ab);
  CHECK(fab.size() == fa.size() * fb.size());
  for (const auto& [k, c] : fab) CHECK(c == fa.coeff(FreqIndex{k[0]}) * fb.coeff(FreqIndex{k[1]}));
}

TEST_CASE("Bernoulli validation") {
  CHECK_THROWS(bernoulli_poly(BernoulliSpec{0.0, {0.0}, 4}));
  CHECK_THROWS(bernoulli_poly(BernoulliSpec{1.0, {0.0}, 0}));
}
