#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "hcross/errors.hpp"
#include "hcross/smolyak.hpp"
#include "support.hpp"

using namespace hcross;
using hcross::testing::random_box;
using hcross::testing::random_on_cross;

namespace {

double recover_distance(const TrigPolynomial& f, int n) {
  PolynomialSampler sampler(f);
  return max_coeff_distance(smolyak_recover(sampler, n), f);
}

// Union of all component grids with |t|_1 <= n, on the fine grid.
std::size_t brute_grid_size(int n, int d) {
  std::set<std::vector<long>> points;
  std::vector<int> t(d, 0);
  auto rec = [&](auto&& self, int j, int used) -> void {
    if (j == d) {
      std::vector<long> idx(d, 0);
      while (true) {
        std::vector<long> fine(d);
        for (int q = 0; q < d; ++q) fine[q] = idx[q] << (n - t[q]);
        points.insert(fine);
        int q = d - 1;
        while (q >= 0 && ++idx[q] == (1L << (t[q] + 1))) idx[q--] = 0;
        if (q < 0) break;
      }
      return;
    }
    for (int v = 0; used + v <= n; ++v) {
      t[j] = v;
      self(self, j + 1, used + v);
    }
  };
  rec(rec, 0, 0);
  return points.size();
}

}  // namespace

TEST_CASE("constants and univariate exactness") {
  for (int d = 1; d <= 3; ++d) {
    FreqIndex zero(d);
    const auto c = TrigPolynomial::from_sorted(d, {{zero, Complex(2.0, -1.0)}});
    for (int n = 0; n <= 4; ++n) CHECK(recover_distance(c, n) < 1e-14);
  }
  for (int n = 0; n <= 10; ++n) {
    const int k = (1 << n) - 1;
    const auto tone = TrigPolynomial::from_sorted(1, {{FreqIndex{k}, 1.0}});
    CHECK(recover_distance(tone, n) < 1e-12);
  }
}

TEST_CASE("reproduction offset") {
  // Q_(n - offset) is reproduced and Q_(n - offset + 1) is not.
  for (int d = 1; d <= 2; ++d)
    for (int n = 0; n <= 7; ++n) {
      const int level = n - kSmolyakReproductionOffset;
      if (level >= 0) CHECK(recover_distance(random_on_cross(level, d, 10 * n + d), n) < 1e-10);
      CHECK(recover_distance(random_on_cross(level + 1, d, 10 * n + d + 5), n) > 1e-3);
    }
  CHECK(recover_distance(random_on_cross(5, 2, 99), 5) < 1e-10);
}

TEST_CASE("each sparse-grid point is sampled once") {
  for (int d = 1; d <= 3; ++d)
    for (int n = 0; n <= (d == 3 ? 5 : 8); ++n) {
      PolynomialSampler sampler(random_on_cross(2, d, 3));
      smolyak_recover(sampler, n);
      CHECK(sampler.call_count() == sparse_grid_size(n, d));
      CHECK(sampler.call_count() == brute_grid_size(n, d));
    }
}

TEST_CASE("point sampler and grid sampler agree") {
  const auto f = random_box(2, 12, 0.5, 4);
  PolynomialSampler grid(f);
  FunctionSampler point(2, [&](std::span<const double> x) { return f.evaluate(x); });
  const auto a = smolyak_recover(grid, 4);
  const auto b = smolyak_recover(point, 4);
  CHECK(max_coeff_distance(a, b) < 1e-11);
  CHECK(grid.call_count() == point.call_count());
}

TEST_CASE("linearity and idempotence") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = random_box(2, 40, 0.3, 20 + seed);
    const auto g = random_box(2, 40, 0.3, 40 + seed);
    const Complex a(0.7, -1.2);
    PolynomialSampler sf(f), sg(g), sh(f + g.scaled(a));
    const auto tf = smolyak_recover(sf, 5);
    const auto tg = smolyak_recover(sg, 5);
    const auto th = smolyak_recover(sh, 5);
    CHECK(max_coeff_distance(th, tf + tg.scaled(a)) < 1e-10);
    PolynomialSampler again(tf);
    CHECK(max_coeff_distance(smolyak_recover(again, 5), tf) < 1e-10);
  }
}

TEST_CASE("recovery sweep") {
  const auto exact = random_on_cross(4, 2, 9);
  const std::vector<int> levels{1, 2, 3, 4};
  const auto rows = recovery_error_sweep([&] { return std::make_unique<PolynomialSampler>(exact); },
                                         exact, levels, std::numeric_limits<double>::infinity());
  REQUIRE(rows.size() == 4);
  CHECK(rows.back().error_l2 < 1e-12);
  CHECK(rows.back().error < 1e-10);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].samples == sparse_grid_size(levels[i], 2));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].error_l2 < rows[i - 1].error_l2);
}

TEST_CASE("univariate decay against the folding oracle") {
  // I_n folds every frequency onto |k| <= 2^n modulo N = 2^(n+1) and
  // shares the Nyquist bin between +-N/2.
  const double beta = 1.5;
  std::vector<TrigPolynomial::Term> terms;
  const int reach = 1 << 14;
  for (int k = -reach; k <= reach; ++k)
    terms.emplace_back(FreqIndex{k}, std::pow(std::max(1, std::abs(k)), -beta));
  const auto f = TrigPolynomial::from_sorted(1, std::move(terms));
  std::vector<double> errors;
  for (int n = 3; n <= 10; ++n) {
    const long big_n = 2L << n;
    std::vector<double> folded(static_cast<std::size_t>(big_n), 0.0);
    for (const auto& [k, c] : f) folded[static_cast<std::size_t>(((k[0] % big_n) + big_n) % big_n)] += c.real();
    TrigPolynomial::Builder expected(1);
    for (long i = 0; i < big_n; ++i) {
      const double v = folded[static_cast<std::size_t>(i)];
      if (2 * i == big_n) {
        expected.add(FreqIndex{static_cast<int>(big_n / 2)}, 0.5 * v);
        expected.add(FreqIndex{static_cast<int>(-big_n / 2)}, 0.5 * v);
      } else {
        expected.add(FreqIndex{static_cast<int>(2 * i < big_n ? i : i - big_n)}, v);
      }
    }
    PolynomialSampler s(f);
    const auto got = smolyak_recover(s, n);
    CHECK(max_coeff_distance(got, std::move(expected).build()) < 1e-12);
    errors.push_back((got - f).l2_norm());
  }
  // l2 error ~ 2^{-n (beta - 1/2)}.
  for (std::size_t i = 1; i < errors.size(); ++i)
    CHECK(std::log2(errors[i] / errors[i - 1]) == doctest::Approx(-(beta - 0.5)).epsilon(0.1));
}

TEST_CASE("level guards") {
  PolynomialSampler s(random_on_cross(1, 4, 1));
  CHECK_THROWS_AS(smolyak_recover(s, 16), ResourceError);
  CHECK_THROWS_AS(smolyak_recover(s, -1), InvalidArgument);
}
