#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hcross/spectral.hpp"
#include "hcross/trig_polynomial.hpp"

namespace hcross {

struct MTermResult {
  TrigPolynomial approximant;
  std::size_t terms_used = 0;
  double error_linf = 0.0;  // grid maximum, NaN when not computed
  double error_l2 = 0.0;    // exact, by Parseval
  double oversample = kDefaultOversample;
};

struct ErrorOptions {
  double oversample = kDefaultOversample;
  bool compute_linf = true;
  std::uint64_t grid_cap = kDefaultGridCap;
  std::size_t slab_points = kDefaultSlabPoints;
};

// ||f - g||_p on an oversampled alias-free grid (oversample >= 2).
// p = 2 is still measured on the grid; use (f - g).l2_norm() for the exact value.
double measure_error(const TrigPolynomial& f, const TrigPolynomial& g, double p,
                     const ErrorOptions& options = {});

// The m terms of largest modulus; equal moduli are resolved in favour of
// the lexicographically smaller frequency.
TrigPolynomial greedy_select(const TrigPolynomial& f, std::size_t m);

MTermResult greedy_mterm(const TrigPolynomial& f, std::size_t m, const ErrorOptions& options = {});

struct BudgetPlan {
  int d = 1;
  std::vector<std::pair<int, std::uint64_t>> budgets;  // (layer n, m_n), ascending n
  int n0 = 0;
  int n1 = 0;
  double kappa = 0.0;
  double zeta = 0.0;
  std::uint64_t m_total = 0;

  std::uint64_t budget(int n) const;
  std::uint64_t total_budget() const;
};

// Measured bound on total_budget() / m_total under default kappa and zeta
// for d <= 4, r in [0.3, 0.45], p in {4, inf}, m in 2^4 .. 2^16 (largest
// observed ratio 21.2). Near r = 1/2 the ratio grows like log m.
inline constexpr double kPlanConstant = 24.0;

// Tail budgets stop here even if the geometric formula is still positive.
inline constexpr int kMaxPlanLayer = 60;

// Budgets for W^r_p in L_inf: 2 < p < inf, 1/p < r <= 1/2.
// Defaults: kappa = (2r + 1)/2 (1 at r = 1/2), zeta = p (r - 1/p) / 2.
BudgetPlan plan_budget_W(std::uint64_t m, double r, double p, int d,
                         std::optional<double> kappa = {}, std::optional<double> zeta = {});

// Budgets for H^r_p in L_inf; p = inf is admitted and then zeta is bounded
// as if p were 2/r.
BudgetPlan plan_budget_H(std::uint64_t m, double r, double p, int d,
                         std::optional<double> kappa = {}, std::optional<double> zeta = {});

// Per layer: the m_n largest coefficients of the layer piece; then the
// union is cut to plan.m_total terms by dropping the smallest.
MTermResult layered_mterm(const TrigPolynomial& f, const BudgetPlan& plan, LayerKind kind,
                          const ErrorOptions& options = {});

}  // namespace hcross
