#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hcross/errors.hpp"
#include "hcross/experiment.hpp"
#include "hcross/freq_index.hpp"
#include "hcross/kernels.hpp"
#include "hcross/mterm.hpp"
#include "hcross/rate_fit.hpp"
#include "hcross/smolyak.hpp"

using namespace hcross;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// "-" or empty means stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw InvalidArgument("cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct FunctionArgs {
  std::string name = "random_H_ball";
  RegistryParams params;
};

void add_function_options(CLI::App* cmd, FunctionArgs& fn) {
  cmd->add_option("--fn", fn.name, "registry function")
      ->check(CLI::IsMember({"bernoulli", "tensor_decay", "random_H_ball", "random_W_ball"}));
  cmd->add_option("--fn-level", fn.params.level, "random balls live on Q_level");
  cmd->add_option("--beta", fn.params.beta, "tensor_decay exponent");
  cmd->add_option("--box", fn.params.box, "tensor_decay box |k_j| <= box");
  cmd->add_option("--truncation", fn.params.truncation, "bernoulli truncation");
  cmd->add_option("--seed", fn.params.seed, "seed for random balls");
}

int bench(const std::string& config_path, const std::string& out_override) {
  const auto cfg = load_config(config_path);
  Output out(out_override.empty() ? cfg.output : out_override);
  run_experiment(cfg, &out.stream());
  return 0;
}

void print_fit(const std::string& label, const std::vector<RatePoint>& pts, bool loglog) {
  if (pts.size() < 4) {
    std::printf("%s: fewer than 4 usable rows\n", label.c_str());
    return;
  }
  const auto fit = fit_rate(pts, loglog);
  std::printf("%s: main_rate %.6g  log_power %.6g", label.c_str(), fit.main_rate, fit.log_power);
  if (fit.loglog_power) std::printf("  loglog_power %.6g", *fit.loglog_power);
  std::printf("  residual %.3g  window [%.0f, %.0f]\n", fit.residual, fit.m_min, fit.m_max);
  const auto pure = fit_power_law(pts);
  std::printf("%s: pure power law main_rate %.6g  residual %.3g\n", label.c_str(), pure.main_rate,
              pure.residual);
}

int fit(const std::string& path, bool loglog) {
  const auto rows = load_report(path);
  print_fit("L_inf", rate_points(rows, ErrorColumn::linf), loglog);
  print_fit("L_2", rate_points(rows, ErrorColumn::l2), loglog);
  return 0;
}

int compare(const std::vector<std::string>& inputs, const std::string& out_path) {
  std::vector<std::pair<std::string, std::vector<ReportRow>>> reports;
  for (const auto& path : inputs) reports.emplace_back(path, load_report(path));
  Output out(out_path);
  out.stream() << compare_reports(reports);
  return 0;
}

int cross(int n, int d, bool layer_only, const std::string& out_path) {
  const FreqSet set = layer_only ? layer_indices(n, d) : cross_indices(n, d);
  Output out(out_path);
  for (const auto& k : set.elements()) {
    for (int j = 0; j < d; ++j) out.stream() << (j ? "," : "") << k[j];
    out.stream() << '\n';
  }
  return 0;
}

int kernel(const std::string& type, int order, int points, const std::vector<double>& alpha, double r,
           int truncation, const std::string& out_path) {
  Output out(out_path);
  auto& os = out.stream();
  char buf[96];
  if (type == "dirichlet" || type == "vp") {
    if (points < 1) throw InvalidArgument("--points must be >= 1");
    os << "t,value\n";
    for (int i = 0; i < points; ++i) {
      const double t = 2.0 * std::numbers::pi * i / points;
      const double v = type == "vp" ? vp_eval(order, t) : dirichlet_eval(order, t);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, v);
      os << buf;
    }
  } else if (type == "block") {
    if (order < 0) throw InvalidArgument("block level must be >= 0");
    os << "k,weight\n";
    const long reach = 1L << (order + 1);
    for (long k = -reach; k <= reach; ++k) {
      const double w = block_weight(order, k);
      if (w == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%ld,%.17g\n", k, w);
      os << buf;
    }
  } else {
    BernoulliSpec spec;
    spec.r = r;
    spec.alpha = alpha.empty() ? std::vector<double>{0.0} : alpha;
    spec.truncation = truncation;
    write_coefficients(os, bernoulli_poly(spec));
  }
  return 0;
}

int project(int n, const std::string& kind, const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) throw InvalidArgument("cannot open '" + in_path + "'");
  const auto f = read_coefficients(in);
  Output out(out_path);
  write_coefficients(out.stream(), kind == "vp" ? vp_cross(f, n) : project_cross(f, n));
  return 0;
}

struct MTermArgs {
  std::string family = "H";
  double r = 0.4;
  double p = kInf;
  std::uint64_t m = 1024;
  std::optional<double> kappa, zeta;
  std::string method = "greedy";
  int d = 2;
  double oversample = kDefaultOversample;
  std::string out;
};

int mterm(const MTermArgs& a, const FunctionArgs& fn) {
  ExperimentConfig cfg;
  cfg.d = a.d;
  cfg.smoothness = {parse_family(a.family), a.r, a.p, 2.0, {}};
  cfg.method = a.method == "greedy" ? Method::greedy : (a.family == "W" ? Method::layered_W : Method::layered_H);
  cfg.kappa = a.kappa;
  cfg.zeta = a.zeta;
  cfg.schedule.explicit_values = {a.m};
  cfg.function = fn.name;
  cfg.function_params = fn.params;
  cfg.seed = fn.params.seed;
  cfg.oversample = a.oversample;
  Output out(a.out);
  run_experiment(cfg, &out.stream());
  return 0;
}

int smolyak(int d, int level, double oversample, const FunctionArgs& fn, const std::string& out_path) {
  if (level < 0) throw InvalidArgument("--level must be >= 0");
  ExperimentConfig cfg;
  cfg.d = d;
  cfg.method = Method::smolyak;
  cfg.smoothness = {fn.name == "random_W_ball" ? Family::W : Family::H, fn.params.r, fn.params.p, 2.0, {}};
  cfg.schedule.explicit_values = {sparse_grid_size(level, d)};
  cfg.function = fn.name;
  cfg.function_params = fn.params;
  cfg.seed = fn.params.seed;
  cfg.oversample = oversample;
  Output out(out_path);
  run_experiment(cfg, &out.stream());
  return 0;
}

int plan(const std::string& family, std::uint64_t m, double r, double p, int d, std::optional<double> kappa,
         std::optional<double> zeta) {
  const auto b = family == "W" ? plan_budget_W(m, r, p, d, kappa, zeta) : plan_budget_H(m, r, p, d, kappa, zeta);
  std::printf("# n0 %d n1 %d kappa %.6g zeta %.6g total %llu (%.3g m)\n", b.n0, b.n1, b.kappa, b.zeta,
              static_cast<unsigned long long>(b.total_budget()),
              static_cast<double>(b.total_budget()) / static_cast<double>(m));
  std::printf("n,m_n\n");
  for (const auto& [n, mn] : b.budgets) std::printf("%d,%llu\n", n, static_cast<unsigned long long>(mn));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic cross approximation lab"};
  app.require_subcommand(1);

  std::string config_path, bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "run an experiment config and write a CSV report");
  bench_cmd->add_option("--config", config_path, "INI experiment file")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--out", bench_out, "override the configured output path ('-' for stdout)");

  std::string fit_in;
  bool loglog = false;
  auto* fit_cmd = app.add_subcommand("fit", "fit error rates from a CSV report");
  fit_cmd->add_option("--in", fit_in, "CSV report")->required()->check(CLI::ExistingFile);
  fit_cmd->add_flag("--loglog", loglog, "add a log log m regressor");

  std::vector<std::string> compare_in;
  std::string compare_out;
  auto* compare_cmd = app.add_subcommand("compare", "side-by-side markdown table of reports");
  compare_cmd->add_option("--in", compare_in, "CSV report (repeatable)")->required()->check(CLI::ExistingFile);
  compare_cmd->add_option("--out", compare_out, "markdown output ('-' for stdout)");

  int cross_n = 4, cross_d = 2;
  bool cross_layer = false;
  std::string cross_out;
  auto* cross_cmd = app.add_subcommand("cross", "frequencies of Q_n (or of its top layer), one per line");
  cross_cmd->add_option("--level", cross_n, "level n")->check(CLI::NonNegativeNumber);
  cross_cmd->add_option("--dim", cross_d, "dimension")->check(CLI::Range(1, kMaxDim));
  cross_cmd->add_flag("--layer", cross_layer, "only the layer Q_n \\ Q_{n-1}");
  cross_cmd->add_option("--out", cross_out, "output file ('-' for stdout)");

  std::string kernel_type = "vp", kernel_out;
  int kernel_order = 4, kernel_points = 64, kernel_truncation = 64;
  double kernel_r = 1.0;
  std::vector<double> kernel_alpha;
  auto* kernel_cmd = app.add_subcommand("kernel", "kernel samples or multiplier/coefficient tables");
  kernel_cmd->add_option("--type", kernel_type, "kernel family")
      ->check(CLI::IsMember({"dirichlet", "vp", "block", "bernoulli"}));
  kernel_cmd->add_option("--order", kernel_order, "Dirichlet order, vp m, or block level s");
  kernel_cmd->add_option("--points", kernel_points, "uniform samples on [0, 2pi)");
  kernel_cmd->add_option("--r", kernel_r, "bernoulli smoothness");
  kernel_cmd->add_option("--alpha", kernel_alpha, "bernoulli phase per axis");
  kernel_cmd->add_option("--truncation", kernel_truncation, "bernoulli truncation K");
  kernel_cmd->add_option("--out", kernel_out, "output file ('-' for stdout)");

  int project_n = 4;
  std::string project_kind = "sharp", project_in, project_out;
  auto* project_cmd = app.add_subcommand("project", "hyperbolic cross projection of a coefficient CSV");
  project_cmd->add_option("--level", project_n, "level n")->check(CLI::NonNegativeNumber);
  project_cmd->add_option("--kind", project_kind, "sharp or vp")->check(CLI::IsMember({"sharp", "vp"}));
  project_cmd->add_option("--in", project_in, "coefficients k1,...,kd,re,im")->required()->check(CLI::ExistingFile);
  project_cmd->add_option("--out", project_out, "output file ('-' for stdout)");

  MTermArgs mt;
  FunctionArgs mt_fn;
  auto* mterm_cmd = app.add_subcommand("mterm", "one m-term approximation, written as a report row");
  mterm_cmd->add_option("--class", mt.family, "W or H")->check(CLI::IsMember({"W", "H"}));
  mterm_cmd->add_option("--r", mt.r, "smoothness");
  mterm_cmd->add_option("--p", mt.p, "integrability (inf allowed)");
  mterm_cmd->add_option("--m", mt.m, "term budget")->check(CLI::PositiveNumber);
  mterm_cmd->add_option("--kappa", mt.kappa, "middle-range exponent");
  mterm_cmd->add_option("--zeta", mt.zeta, "tail decay exponent");
  mterm_cmd->add_option("--method", mt.method, "greedy or layered")->check(CLI::IsMember({"greedy", "layered"}));
  mterm_cmd->add_option("--dim", mt.d, "dimension")->check(CLI::Range(1, kMaxDim));
  mterm_cmd->add_option("--oversample", mt.oversample, "L_inf grid factor");
  mterm_cmd->add_option("--out", mt.out, "report file ('-' for stdout)");
  add_function_options(mterm_cmd, mt_fn);

  int sm_d = 2, sm_level = 4;
  double sm_oversample = kDefaultOversample;
  std::string sm_out;
  FunctionArgs sm_fn;
  auto* smolyak_cmd = app.add_subcommand("smolyak", "sparse-grid recovery at one level, written as a report row");
  smolyak_cmd->add_option("--dim", sm_d, "dimension")->check(CLI::Range(1, kMaxDim));
  smolyak_cmd->add_option("--level", sm_level, "sparse grid level n");
  smolyak_cmd->add_option("--oversample", sm_oversample, "L_inf grid factor");
  smolyak_cmd->add_option("--out", sm_out, "report file ('-' for stdout)");
  smolyak_cmd->add_option("--r", sm_fn.params.r, "class smoothness (ball functions)");
  smolyak_cmd->add_option("--p", sm_fn.params.p, "class integrability (ball functions)");
  add_function_options(smolyak_cmd, sm_fn);

  std::string plan_family = "H";
  std::uint64_t plan_m = 1024;
  double plan_r = 0.4, plan_p = kInf;
  int plan_d = 2;
  std::optional<double> plan_kappa, plan_zeta;
  auto* plan_cmd = app.add_subcommand("plan", "layer budgets of the constructive m-term scheme");
  plan_cmd->add_option("--class", plan_family, "W or H")->check(CLI::IsMember({"W", "H"}));
  plan_cmd->add_option("--m", plan_m, "term count");
  plan_cmd->add_option("--r", plan_r, "smoothness");
  plan_cmd->add_option("--p", plan_p, "integrability (inf allowed for H)");
  plan_cmd->add_option("--dim", plan_d, "dimension");
  plan_cmd->add_option("--kappa", plan_kappa, "middle-range exponent");
  plan_cmd->add_option("--zeta", plan_zeta, "tail decay exponent");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench_cmd) return bench(config_path, bench_out);
    if (*fit_cmd) return fit(fit_in, loglog);
    if (*compare_cmd) return compare(compare_in, compare_out);
    if (*cross_cmd) return cross(cross_n, cross_d, cross_layer, cross_out);
    if (*kernel_cmd)
      return kernel(kernel_type, kernel_order, kernel_points, kernel_alpha, kernel_r, kernel_truncation, kernel_out);
    if (*project_cmd) return project(project_n, project_kind, project_in, project_out);
    if (*mterm_cmd) {
      mt_fn.params.r = mt.r;
      mt_fn.params.p = mt.p;
      return mterm(mt, mt_fn);
    }
    if (*smolyak_cmd) return smolyak(sm_d, sm_level, sm_oversample, sm_fn, sm_out);
    if (*plan_cmd) return plan(plan_family, plan_m, plan_r, plan_p, plan_d, plan_kappa, plan_zeta);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
