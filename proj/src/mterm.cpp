#include "hcross/mterm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hcross/errors.hpp"
#include "hcross/freq_index.hpp"

namespace hcross {

double measure_error(const TrigPolynomial& f, const TrigPolynomial& g, double p,
                     const ErrorOptions& options) {
  if (!(options.oversample >= 2.0)) throw InvalidArgument("error oversample must be >= 2");
  if (f.dim() != g.dim()) throw InvalidArgument("dimension mismatch");
  const TrigPolynomial diff = f - g;
  if (diff.empty()) return 0.0;
  const auto res = alias_free_resolution(diff, options.oversample);
  std::uint64_t points = 1;
  for (int n : res) points *= static_cast<std::uint64_t>(n);
  if (points > options.grid_cap)
    throw ResourceError("error grid of " + std::to_string(points) + " points exceeds the cap");
  return norm_lp(diff, p, res, options.slab_points);
}

TrigPolynomial greedy_select(const TrigPolynomial& f, std::size_t m) {
  if (m >= f.size()) return f;
  const auto& terms = f.terms();
  std::vector<double> modulus(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) modulus[i] = std::abs(terms[i].second);
  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Indices follow frequency order, so the index breaks ties lexicographically.
  auto larger = [&](std::size_t a, std::size_t b) {
    return modulus[a] != modulus[b] ? modulus[a] > modulus[b] : a < b;
  };
  std::nth_element(order.begin(), order.begin() + static_cast<long>(m), order.end(), larger);
  order.resize(m);
  std::sort(order.begin(), order.end());
  std::vector<TrigPolynomial::Term> kept;
  kept.reserve(m);
  for (std::size_t i : order) kept.push_back(terms[i]);
  return TrigPolynomial::from_sorted(f.dim(), std::move(kept));
}

namespace {

MTermResult finish(const TrigPolynomial& f, TrigPolynomial approx, const ErrorOptions& options) {
  MTermResult out;
  out.terms_used = approx.size();
  out.error_l2 = (f - approx).l2_norm();
  out.oversample = options.oversample;
  out.error_linf = options.compute_linf ? measure_error(f, approx, std::numeric_limits<double>::infinity(), options)
                                        : std::numeric_limits<double>::quiet_NaN();
  out.approximant = std::move(approx);
  return out;
}

}  // namespace

MTermResult greedy_mterm(const TrigPolynomial& f, std::size_t m, const ErrorOptions& options) {
  return finish(f, greedy_select(f, m), options);
}

std::uint64_t BudgetPlan::budget(int n) const {
  for (const auto& [layer, b] : budgets)
    if (layer == n) return b;
  return 0;
}

std::uint64_t BudgetPlan::total_budget() const {
  std::uint64_t total = 0;
  for (const auto& entry : budgets) total += entry.second;
  return total;
}

namespace {

enum class PlanClass { W, H };

void check_plan_parameters(PlanClass cls, std::uint64_t m, double r, double p, int d, double kappa,
                           double zeta, double zeta_bound) {
  check_dimension(d);
  if (m < 1) throw InvalidArgument("term count m must be >= 1");
  const bool p_ok = cls == PlanClass::W ? (p > 2.0 && std::isfinite(p)) : p > 2.0;
  if (!p_ok) throw InvalidArgument("plan requires 2 < p < inf (p = inf allowed for H)");
  if (!(r > 1.0 / p && r <= 0.5)) throw InvalidArgument("plan requires 1/p < r <= 1/2");
  if (r == 0.5) {
    if (kappa != 1.0) throw InvalidArgument("at r = 1/2 the plan requires kappa = 1");
  } else if (!(kappa > 2.0 * r && kappa < 1.0)) {
    throw InvalidArgument("plan requires 2r < kappa < 1");
  }
  if (!(zeta > 0.0 && zeta < zeta_bound)) throw InvalidArgument("plan requires 0 < zeta < p (r - 1/p)");
}

double default_kappa(double r) { return r == 0.5 ? 1.0 : (2.0 * r + 1.0) / 2.0; }

// floor of a positive real, saturating at the layer rank.
std::uint64_t capped_floor(double value, std::uint64_t rank) {
  if (!(value >= 0.0)) return 0;
  if (value >= static_cast<double>(rank)) return rank;
  return static_cast<std::uint64_t>(std::floor(value));
}

std::uint64_t safe_rank(int n, int d) {
  try {
    return layer_rank(n, d);
  } catch (const OverflowError&) {
    return std::numeric_limits<std::uint64_t>::max();
  }
}

BudgetPlan make_plan(PlanClass cls, std::uint64_t m, double r, double p, int d,
                     std::optional<double> kappa_opt, std::optional<double> zeta_opt) {
  const double p_eff = std::isinf(p) ? 2.0 / r : p;
  const double zeta_bound = p_eff * (r - 1.0 / p_eff);
  const double kappa = kappa_opt.value_or(default_kappa(r));
  const double zeta = zeta_opt.value_or(zeta_bound / 2.0);
  check_plan_parameters(cls, m, r, p, d, kappa, zeta, zeta_bound);

  BudgetPlan plan;
  plan.d = d;
  plan.kappa = kappa;
  plan.zeta = zeta;
  plan.m_total = m;

  // n0: largest level whose whole cross fits into m terms.
  plan.n0 = 0;
  while (plan.n0 < 60 && cross_size(plan.n0 + 1, d) <= m) ++plan.n0;

  // n1: levels are scanned upward until the pivot inequality first fails.
  const double md = static_cast<double>(m);
  auto pivot = [&](int nu) {
    if (cls == PlanClass::W) return std::exp2(nu) / std::pow(std::max(nu, 1), d - 2);
    return std::exp2(nu) * nu;
  };
  int nu = cls == PlanClass::W ? 0 : 1;
  plan.n1 = nu;
  while (nu < 62 && pivot(nu) <= md) plan.n1 = nu++;

  const double n1d = plan.n1;
  for (int n = 0; n <= plan.n0; ++n) plan.budgets.emplace_back(n, layer_rank(n, d));
  for (int n = plan.n0 + 1; n <= plan.n1; ++n) {
    const double scale = cls == PlanClass::W ? std::pow(n1d, -(d - 2.0)) : n1d;
    const double value = std::exp2(n) * std::exp2((plan.n1 - n) * kappa) * scale;
    plan.budgets.emplace_back(n, capped_floor(value, safe_rank(n, d)));
  }
  for (int n = std::max(plan.n0, plan.n1) + 1; n <= kMaxPlanLayer; ++n) {
    const double value = std::floor(md * std::exp2((plan.n1 - n) * zeta));
    if (value < 1.0) break;
    plan.budgets.emplace_back(n, capped_floor(value, safe_rank(n, d)));
  }
  return plan;
}

}  // namespace

BudgetPlan plan_budget_W(std::uint64_t m, double r, double p, int d, std::optional<double> kappa,
                         std::optional<double> zeta) {
  return make_plan(PlanClass::W, m, r, p, d, kappa, zeta);
}

BudgetPlan plan_budget_H(std::uint64_t m, double r, double p, int d, std::optional<double> kappa,
                         std::optional<double> zeta) {
  return make_plan(PlanClass::H, m, r, p, d, kappa, zeta);
}

MTermResult layered_mterm(const TrigPolynomial& f, const BudgetPlan& plan, LayerKind kind,
                          const ErrorOptions& options) {
  if (plan.d != f.dim()) throw InvalidArgument("plan dimension does not match the function");
  TrigPolynomial::Builder merged(f.dim());
  for (const auto& [n, piece] : layer_decomposition(f, kind)) {
    // Layers up to n0 are taken whole; a vp piece is wider than its sharp
    // rank, so its budget would otherwise truncate it.
    if (n <= plan.n0) {
      for (const auto& [k, c] : piece) merged.add(k, c);
      continue;
    }
    const std::uint64_t mn = plan.budget(n);
    if (mn == 0) continue;
    for (const auto& [k, c] : greedy_select(piece, mn)) merged.add(k, c);
  }
  TrigPolynomial approx = greedy_select(std::move(merged).build(), plan.m_total);
  return finish(f, std::move(approx), options);
}

}  // namespace hcross
