#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "hcross/errors.hpp"
#include "hcross/experiment.hpp"
#include "hcross/kernels.hpp"
#include "hcross/rate_fit.hpp"
#include "hcross/registry.hpp"
#include "support.hpp"

using namespace hcross;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<RatePoint> synthetic(double a, double b, int lo, int hi) {
  std::vector<RatePoint> pts;
  for (int j = lo; j <= hi; ++j) {
    const double m = std::exp2(j);
    pts.push_back({m, std::pow(m, -a) * std::pow(std::log(m), b)});
  }
  return pts;
}

ExperimentConfig small_config(Method method) {
  ExperimentConfig cfg;
  cfg.method = method;
  cfg.d = 2;
  cfg.smoothness = {Family::H, 0.4, kInf, 2.0, {}};
  cfg.function = "random_H_ball";
  cfg.function_params.r = 0.4;
  cfg.function_params.p = kInf;
  cfg.function_params.level = 5;
  cfg.schedule = {16, 256, 2.0, {}};
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("registry: tensor_decay coefficients") {
  RegistryParams params;
  params.beta = 2.0;
  params.box = 4;
  const auto f = registry_function("tensor_decay", params, 1);
  REQUIRE(f.size() == 9);
  const double expect[] = {1.0 / 16, 1.0 / 9, 1.0 / 4, 1.0, 1.0, 1.0, 1.0 / 4, 1.0 / 9, 1.0 / 16};
  for (int k = -4; k <= 4; ++k) CHECK(f.coeff(FreqIndex{k}) == Complex(expect[k + 4], 0.0));

  const auto g = registry_function("tensor_decay", params, 2);
  CHECK(g.size() == 81);
  CHECK(g.coeff(FreqIndex{2, -3}) == Complex(1.0 / 36, 0.0));
}

TEST_CASE("registry: random balls have unit norm") {
  for (int d : {1, 2}) {
    RegistryParams params;
    params.r = 0.4;
    params.p = kInf;
    params.level = 5;
    params.seed = 11;
    const auto h = registry_function("random_H_ball", params, d);
    CHECK(h.max_layer() <= 5);
    CHECK(std::abs(norm_smoothness(h, {Family::H, 0.4, kInf, 2.0, {}}) - 1.0) < 1e-8);

    params.p = 4.0;
    const auto w = registry_function("random_W_ball", params, d);
    CHECK(std::abs(norm_smoothness(w, {Family::W, 0.4, 4.0, 2.0, {}}) - 1.0) < 1e-8);
  }
  RegistryParams params;
  params.p = 2.0;
  params.r = 0.7;
  const auto w2 = registry_function("random_W_ball", params, 2);
  CHECK(std::abs(norm_smoothness(w2, {Family::W, 0.7, 2.0, 2.0, {}}) - 1.0) < 1e-8);
}

TEST_CASE("registry: seeds") {
  RegistryParams params;
  params.level = 4;
  const auto a = registry_function("random_H_ball", params, 2);
  const auto b = registry_function("random_H_ball", params, 2);
  CHECK(a == b);
  params.seed = 2;
  CHECK_FALSE(a == registry_function("random_H_ball", params, 2));
}

TEST_CASE("registry: bernoulli delegates to the kernel module") {
  RegistryParams params;
  params.r = 2.0;
  params.truncation = 16;
  BernoulliSpec spec;
  spec.r = 2.0;
  spec.alpha = {0.0, 0.0};
  spec.truncation = 16;
  CHECK(registry_function("bernoulli", params, 2) == bernoulli_poly(spec));
}

TEST_CASE("registry: unknown name") {
  CHECK_THROWS_AS(registry_function("gaussian", {}, 1), InvalidArgument);
  CHECK(registry_names().size() == 4);
}

TEST_CASE("fit: pure power law is exact") {
  const auto pts = synthetic(0.5, 0.0, 4, 14);
  const auto fit = fit_rate(pts);
  CHECK(fit.main_rate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(fit.log_power) < 1e-9);
  CHECK(fit.residual < 1e-12);
  CHECK(fit.m_min == 16.0);
  CHECK(fit.m_max == 16384.0);

  const auto pure = fit_power_law(pts);
  CHECK(pure.main_rate == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pure.residual < 1e-12);
  CHECK(pure.log_power == 0.0);
}

TEST_CASE("fit: power times log") {
  const auto fit = fit_rate(synthetic(0.4, 1.4, 6, 16));
  CHECK(std::abs(fit.main_rate - 0.4) <= 0.04);
  CHECK(std::abs(fit.log_power - 1.4) <= 0.14);
}

TEST_CASE("fit: constant errors") {
  std::vector<RatePoint> pts;
  for (int j = 4; j <= 12; ++j) pts.push_back({std::exp2(j), 0.3});
  const auto fit = fit_rate(pts);
  CHECK(std::abs(fit.main_rate) < 1e-9);
  CHECK(std::abs(fit.log_power) < 1e-9);
  CHECK(std::abs(fit_power_law(pts).main_rate) < 1e-12);
}

TEST_CASE("fit: idempotent on its own model") {
  const auto first = fit_rate(synthetic(0.45, 0.8, 4, 14));
  std::vector<RatePoint> regenerated;
  for (int j = 4; j <= 14; ++j) {
    const double m = std::exp2(j);
    regenerated.push_back(
        {m, std::exp(first.constant - first.main_rate * std::log(m) + first.log_power * std::log(std::log(m)))});
  }
  const auto second = fit_rate(regenerated);
  CHECK(std::abs(second.main_rate - first.main_rate) < 1e-10);
  CHECK(std::abs(second.log_power - first.log_power) < 1e-10);
  const auto again = fit_rate(synthetic(0.45, 0.8, 4, 14));
  CHECK(again.main_rate == first.main_rate);
  CHECK(again.log_power == first.log_power);

  std::vector<RatePoint> with_ll;
  for (int j = 4; j <= 16; ++j) {
    const double m = std::exp2(j);
    const double L = std::log(m);
    with_ll.push_back({m, 2.0 * std::pow(m, -0.5) * std::pow(L, 1.0) * std::pow(std::log(L), 1.5)});
  }
  const auto ll = fit_rate(with_ll, true);
  REQUIRE(ll.loglog_power.has_value());
  CHECK(std::abs(ll.main_rate - 0.5) < 1e-8);
  CHECK(std::abs(ll.log_power - 1.0) < 1e-6);
  CHECK(std::abs(*ll.loglog_power - 1.5) < 1e-6);
}

TEST_CASE("fit: preconditions") {
  CHECK_THROWS_AS(fit_rate(synthetic(0.5, 0.0, 4, 6)), InvalidArgument);
  auto pts = synthetic(0.5, 0.0, 4, 10);
  pts[2].error = 0.0;
  CHECK_THROWS_AS(fit_rate(pts), InvalidArgument);
  std::vector<RatePoint> small = synthetic(0.5, 0.0, 2, 8);
  CHECK_THROWS_AS(fit_rate(small), InvalidArgument);
  std::vector<RatePoint> same(5, RatePoint{64.0, 0.1});
  CHECK_THROWS_AS(fit_rate(same), DegenerateFit);
}

TEST_CASE("schedule") {
  Schedule s;
  const auto v = s.values();
  REQUIRE(v.size() == 11);
  CHECK(v.front() == 16);
  CHECK(v.back() == 16384);
  Schedule fine{10, 20, 1.05, {}};
  const auto w = fine.values();
  for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] > w[i - 1]);
  CHECK_THROWS_AS((Schedule{10, 5, 2.0, {}}.values()), InvalidArgument);
  CHECK_THROWS_AS((Schedule{1, 5, 1.0, {}}.values()), InvalidArgument);
  CHECK_THROWS_AS((Schedule{1, 5, 2.0, {4, 4}}.values()), InvalidArgument);
}

TEST_CASE("config parsing") {
  std::istringstream ini(
      "[experiment]\nmethod = layered_H\ndim = 2\nseed = 5\nkappa = 0.95\n"
      "[class]\nfamily = H\nr = 0.4\np = inf\n"
      "[schedule]\nfirst = 64\nlast = 1024\nratio = 4\n"
      "[function]\nname = random_H_ball\nlevel = 6\n");
  const auto cfg = parse_config(ini);
  CHECK(cfg.method == Method::layered_H);
  CHECK(cfg.seed == 5);
  CHECK(cfg.kappa.value() == 0.95);
  CHECK(std::isinf(cfg.smoothness.p));
  CHECK(cfg.schedule.values() == std::vector<std::uint64_t>{64, 256, 1024});
  CHECK(cfg.function_params.level == 6);
  CHECK(cfg.function_params.r == 0.4);
  CHECK(cfg.registry_params().seed == 5);

  std::istringstream typo("[experiment]\nmethd = greedy\n");
  CHECK_THROWS_AS(parse_config(typo), InvalidArgument);
  std::istringstream bad_method("[experiment]\nmethod = magic\n");
  CHECK_THROWS_AS(parse_config(bad_method), InvalidArgument);
  std::istringstream bad_number("[class]\nr = 0.4x\n");
  CHECK_THROWS_AS(parse_config(bad_number), InvalidArgument);
}

TEST_CASE("report round trip") {
  auto cfg = small_config(Method::greedy);
  std::ostringstream out;
  const auto rows = run_experiment(cfg, &out);
  const std::string text = out.str();
  CHECK(text.rfind(std::string(kReportVersion) + "\n# error_linf: maximum over a grid oversampled 4x beyond Nyquist\n" +
                       kReportHeader + "\n",
                   0) == 0);
  CHECK(text.find("upper bounds") != std::string::npos);
  std::istringstream in(text);
  const auto back = read_report(in);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].m == rows[i].m);
    CHECK(back[i].units_used == rows[i].units_used);
    CHECK(back[i].error_l2 == doctest::Approx(rows[i].error_l2).epsilon(1e-9));
    CHECK(back[i].method == "greedy");
    CHECK(back[i].cls == "H");
    CHECK(std::isinf(back[i].p));
    CHECK(back[i].seconds == 0.0);
  }
  std::istringstream wrong("# x\nmethod,d,class\n");
  CHECK_THROWS_AS(read_report(wrong), InvalidArgument);
}

TEST_CASE("run: byte identical reruns") {
  for (Method method : {Method::greedy, Method::layered_H, Method::projection, Method::smolyak}) {
    const auto cfg = small_config(method);
    std::ostringstream a, b;
    run_experiment(cfg, &a);
    run_experiment(cfg, &b);
    CHECK(a.str() == b.str());
  }
}

TEST_CASE("run: greedy and projection errors do not increase") {
  for (Method method : {Method::greedy, Method::projection}) {
    const auto rows = run_experiment(small_config(method));
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].error_l2 <= rows[i - 1].error_l2);
  }
}

TEST_CASE("run: projection reaching the support is exact") {
  const auto f = hcross::testing::random_on_cross(4, 2, 3);
  auto cfg = small_config(Method::projection);
  cfg.schedule = {8, cross_size(4, 2), 2.0, {8, 32, cross_size(4, 2)}};
  const auto rows = run_experiment(cfg, f);
  CHECK(rows.back().error_l2 == 0.0);
  CHECK(rows.back().error_linf == 0.0);
  CHECK(rows.back().units_used == cross_size(4, 2));
  CHECK(rows.front().error_l2 > 0.0);
}

TEST_CASE("run: greedy on tensor decay, beta = 3/2") {
  // Nonnegative coefficients: the sup of the tail sits at x = 0 and equals
  // the sum of dropped coefficients.
  ExperimentConfig cfg;
  cfg.method = Method::greedy;
  cfg.d = 1;
  cfg.smoothness = {Family::W, 1.0, 2.0, 2.0, {}};
  cfg.function = "tensor_decay";
  cfg.function_params.beta = 1.5;
  cfg.function_params.box = 1 << 15;
  cfg.schedule = {16, 1024, 2.0, {}};
  const auto f = registry_function(cfg.function, cfg.registry_params(), 1);
  const auto rows = run_experiment(cfg, f);
  for (const auto& row : rows) {
    // m odd-ish budgets keep |k| <= (m-1)/2 plus one side of the next pair.
    double tail = 0.0;
    const auto kept = greedy_select(f, row.m);
    for (const auto& [k, c] : f)
      if (kept.coeff(k) == Complex(0.0, 0.0)) tail += c.real();
    CHECK(row.error_linf == doctest::Approx(tail).epsilon(1e-9));
  }
  const auto fit = fit_power_law(rate_points(rows, ErrorColumn::linf));
  CHECK(std::abs(fit.main_rate - 0.5) <= 0.05);
}

TEST_CASE("run: layered H errors on a ball instance") {
  auto cfg = small_config(Method::layered_H);
  cfg.schedule = {32, 512, 2.0, {}};
  const auto rows = run_experiment(cfg);
  for (const auto& row : rows) CHECK(row.units_used <= row.m);
  CHECK(rows.back().error_linf < rows.front().error_linf);
}

TEST_CASE("run: failures flush what was written") {
  auto cfg = small_config(Method::layered_W);
  cfg.smoothness = {Family::W, 0.4, kInf, 2.0, {}};  // the W plan needs finite p
  std::ostringstream out;
  CHECK_THROWS_AS(run_experiment(cfg, &out), InvalidArgument);
  CHECK(out.str().find(kReportHeader) != std::string::npos);
  CHECK(out.str().find("# aborted:") != std::string::npos);
}

TEST_CASE("compare table") {
  auto a = run_experiment(small_config(Method::smolyak));
  auto b = run_experiment(small_config(Method::layered_H));
  const auto md = compare_reports({{"smolyak.csv", a}, {"layered.csv", b}});
  CHECK(md == compare_reports({{"smolyak.csv", a}, {"layered.csv", b}}));
  CHECK(md.find("smolyak L_2") != std::string::npos);
  CHECK(md.find("layered_H L_inf") != std::string::npos);
  CHECK(md.find("| 256 |") != std::string::npos);
  CHECK(md.find("Reference exponents") != std::string::npos);
  CHECK(md.find("| 0.4 | 1.4 |") != std::string::npos);
  CHECK_THROWS_AS(compare_reports({}), InvalidArgument);
}
