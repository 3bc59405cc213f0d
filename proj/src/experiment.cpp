#include "hcross/experiment.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "hcross/errors.hpp"
#include "hcross/smolyak.hpp"

namespace hcross {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "Inf" || t == "infinity") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("config key '" + key + "': not a number: '" + t + "'");
  }
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e18)
    throw InvalidArgument("config key '" + key + "': expected a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw InvalidArgument("config key '" + key + "': expected a boolean");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::greedy: return "greedy";
    case Method::layered_W: return "layered_W";
    case Method::layered_H: return "layered_H";
    case Method::projection: return "projection";
    case Method::smolyak: return "smolyak";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::greedy, Method::layered_W, Method::layered_H, Method::projection, Method::smolyak})
    if (to_string(m) == name) return m;
  throw InvalidArgument("unknown method '" + name + "'");
}

std::string to_string(Family family) {
  switch (family) {
    case Family::W: return "W";
    case Family::H: return "H";
    case Family::B: return "B";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "W") return Family::W;
  if (name == "H") return Family::H;
  if (name == "B") return Family::B;
  throw InvalidArgument("unknown class family '" + name + "'");
}

std::vector<std::uint64_t> Schedule::values() const {
  std::vector<std::uint64_t> out;
  if (!explicit_values.empty()) {
    for (std::size_t i = 1; i < explicit_values.size(); ++i)
      if (explicit_values[i] <= explicit_values[i - 1])
        throw InvalidArgument("explicit m schedule must be strictly increasing");
    return explicit_values;
  }
  if (first < 1 || last < first) throw InvalidArgument("schedule needs 1 <= first <= last");
  if (!(ratio > 1.0)) throw InvalidArgument("schedule ratio must exceed 1");
  for (int i = 0;; ++i) {
    const double v = std::round(static_cast<double>(first) * std::pow(ratio, i));
    if (v > static_cast<double>(last) * (1.0 + 1e-12)) break;
    const auto m = static_cast<std::uint64_t>(v);
    if (out.empty() || m > out.back()) out.push_back(m);
  }
  return out;
}

void ExperimentConfig::validate() const {
  check_dimension(d);
  smoothness.validate();
  (void)schedule.values();
  if (!(oversample >= 2.0)) throw InvalidArgument("oversample must be >= 2");
  bool known = false;
  for (const auto& n : registry_names()) known = known || n == function;
  if (!known) throw InvalidArgument("unknown registry function '" + function + "'");
}

RegistryParams ExperimentConfig::registry_params() const {
  RegistryParams p = function_params;
  p.seed = seed;
  return p;
}

ExperimentConfig parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  static const std::map<std::string, std::set<std::string>> known = {
      {"experiment", {"method", "dim", "seed", "oversample", "output", "timing", "linf", "layer_kind", "kappa", "zeta"}},
      {"class", {"family", "r", "p", "q", "alpha"}},
      {"schedule", {"first", "last", "ratio", "values"}},
      {"function", {"name", "r", "p", "alpha", "truncation", "beta", "box", "level", "oversample"}},
  };
  for (const auto& [section, body] : tree) {
    auto it = known.find(section);
    if (it == known.end()) throw InvalidArgument("config: unknown section [" + section + "]");
    for (const auto& [key, value] : body)
      if (!it->second.contains(key)) throw InvalidArgument("config: unknown key " + section + "." + key);
  }
  auto get = [&](const std::string& path) { return tree.get_optional<std::string>(path); };

  ExperimentConfig cfg;
  if (auto v = get("experiment.method")) cfg.method = parse_method(trim(*v));
  if (auto v = get("experiment.dim")) cfg.d = static_cast<int>(parse_count("dim", *v));
  if (auto v = get("experiment.seed")) cfg.seed = parse_count("seed", *v);
  if (auto v = get("experiment.oversample")) cfg.oversample = parse_double("oversample", *v);
  if (auto v = get("experiment.output")) cfg.output = trim(*v);
  if (auto v = get("experiment.timing")) cfg.timing = parse_bool("timing", *v);
  if (auto v = get("experiment.linf")) cfg.linf = parse_bool("linf", *v);
  if (auto v = get("experiment.layer_kind")) {
    const auto t = trim(*v);
    if (t == "sharp") cfg.layer_kind = LayerKind::sharp;
    else if (t == "vp") cfg.layer_kind = LayerKind::vp;
    else throw InvalidArgument("layer_kind must be sharp or vp");
  }
  if (auto v = get("experiment.kappa")) cfg.kappa = parse_double("kappa", *v);
  if (auto v = get("experiment.zeta")) cfg.zeta = parse_double("zeta", *v);

  if (auto v = get("class.family")) cfg.smoothness.family = parse_family(trim(*v));
  if (auto v = get("class.r")) cfg.smoothness.r = parse_double("r", *v);
  if (auto v = get("class.p")) cfg.smoothness.p = parse_double("p", *v);
  if (auto v = get("class.q")) cfg.smoothness.q = parse_double("q", *v);
  if (auto v = get("class.alpha"))
    for (const auto& a : split(*v, ',')) cfg.smoothness.alpha.push_back(parse_double("alpha", a));

  if (auto v = get("schedule.first")) cfg.schedule.first = parse_count("first", *v);
  if (auto v = get("schedule.last")) cfg.schedule.last = parse_count("last", *v);
  if (auto v = get("schedule.ratio")) cfg.schedule.ratio = parse_double("ratio", *v);
  if (auto v = get("schedule.values"))
    for (const auto& m : split(*v, ',')) cfg.schedule.explicit_values.push_back(parse_count("values", m));

  // Function parameters default to the class parameters.
  auto& fp = cfg.function_params;
  fp.r = cfg.smoothness.r;
  fp.p = cfg.smoothness.p;
  fp.alpha = cfg.smoothness.alpha;
  if (auto v = get("function.name")) cfg.function = trim(*v);
  if (auto v = get("function.r")) fp.r = parse_double("function.r", *v);
  if (auto v = get("function.p")) fp.p = parse_double("function.p", *v);
  if (auto v = get("function.alpha")) {
    fp.alpha.clear();
    for (const auto& a : split(*v, ',')) fp.alpha.push_back(parse_double("function.alpha", a));
  }
  if (auto v = get("function.truncation")) fp.truncation = static_cast<int>(parse_count("truncation", *v));
  if (auto v = get("function.beta")) fp.beta = parse_double("beta", *v);
  if (auto v = get("function.box")) fp.box = static_cast<int>(parse_count("box", *v));
  if (auto v = get("function.level")) fp.level = static_cast<int>(parse_count("level", *v));
  if (auto v = get("function.oversample")) fp.oversample = parse_double("function.oversample", *v);

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config '" + path + "'");
  return parse_config(in);
}

void write_report_header(std::ostream& out, std::optional<double> linf_oversample) {
  out << kReportVersion << '\n';
  if (linf_oversample)
    out << "# error_linf: maximum over a grid oversampled " << format_number(*linf_oversample) << "x beyond Nyquist\n";
  out << kReportHeader << '\n';
}

void write_report_row(std::ostream& out, const ReportRow& row) {
  out << row.method << ',' << row.d << ',' << row.cls << ',' << format_number(row.r) << ','
      << format_number(row.p) << ',' << row.m << ',' << format_number(row.error_linf) << ','
      << format_number(row.error_l2) << ',' << row.units_used << ',' << format_number(row.seconds) << '\n';
}

void write_report_footer(std::ostream& out, bool endpoint) {
  out << "# errors are upper bounds for best m-term and sampling widths: each row is one constructive\n"
         "# approximant of one test function, not an infimum over methods or a supremum over the class\n"
         "# rates fitted from these rows are typical-instance observations; they can falsify but not certify\n"
         "# worst-case class rates\n";
  if (endpoint)
    out << "# r = 1/2: the bound carries an extra (log log m)^(3/2) factor, which cannot be resolved at\n"
           "# these m; no exponent is claimed for this regime\n";
}

std::vector<ReportRow> read_report(std::istream& in) {
  std::vector<ReportRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kReportHeader) throw InvalidArgument("report header mismatch: '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 10) throw InvalidArgument("report row has " + std::to_string(f.size()) + " fields");
    ReportRow row;
    row.method = f[0];
    row.d = static_cast<int>(parse_count("d", f[1]));
    row.cls = f[2];
    row.r = parse_double("r", f[3]);
    row.p = parse_double("p", f[4]);
    row.m = parse_count("m", f[5]);
    row.error_linf = f[6] == "nan" ? std::numeric_limits<double>::quiet_NaN() : parse_double("error_linf", f[6]);
    row.error_l2 = parse_double("error_l2", f[7]);
    row.units_used = parse_count("units_used", f[8]);
    row.seconds = parse_double("seconds", f[9]);
    rows.push_back(row);
  }
  if (!header_seen) throw InvalidArgument("report has no header line");
  return rows;
}

std::vector<ReportRow> load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open report '" + path + "'");
  return read_report(in);
}

void write_coefficients(std::ostream& out, const TrigPolynomial& f) {
  char buf[64];
  for (const auto& [k, c] : f) {
    for (int j = 0; j < k.dim(); ++j) out << k[j] << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", c.real(), c.imag());
    out << buf << '\n';
  }
}

TrigPolynomial read_coefficients(std::istream& in) {
  std::string line;
  int d = 0;
  std::optional<TrigPolynomial::Builder> builder;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line, ',');
    if (d == 0) {
      d = static_cast<int>(f.size()) - 2;
      check_dimension(d);
      builder.emplace(d);
    }
    if (static_cast<int>(f.size()) != d + 2) throw InvalidArgument("coefficient line has the wrong arity: " + line);
    FreqIndex k(d);
    for (int j = 0; j < d; ++j) {
      const double v = parse_double("k", f[j]);
      if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidArgument("frequency is not an integer: " + f[j]);
      k[j] = static_cast<int>(v);
    }
    builder->add(k, Complex(parse_double("re", f[d]), parse_double("im", f[d + 1])));
  }
  if (!builder) throw InvalidArgument("coefficient file has no data lines");
  return std::move(*builder).build();
}

namespace {

int largest_cross_level(std::uint64_t m, int d) {
  int n = 0;
  while (n < 60 && cross_size(n + 1, d) <= m) ++n;
  return n;
}

int largest_grid_level(std::uint64_t m, int d) {
  int n = 0;
  while (n < 60 && (n + 2) * d <= 64 && sparse_grid_size(n + 1, d) <= m) ++n;
  return n;
}

ReportRow run_one(const ExperimentConfig& cfg, const TrigPolynomial& f, std::uint64_t m) {
  const auto start = std::chrono::steady_clock::now();
  ErrorOptions opt;
  opt.oversample = cfg.oversample;
  opt.compute_linf = cfg.linf;
  const double r = cfg.smoothness.r, p = cfg.smoothness.p;

  MTermResult res;
  std::uint64_t units = 0;
  switch (cfg.method) {
    case Method::greedy:
      res = greedy_mterm(f, m, opt);
      units = res.terms_used;
      break;
    case Method::layered_W: {
      const auto plan = plan_budget_W(m, r, p, cfg.d, cfg.kappa, cfg.zeta);
      res = layered_mterm(f, plan, cfg.layer_kind.value_or(LayerKind::sharp), opt);
      units = res.terms_used;
      break;
    }
    case Method::layered_H: {
      const auto plan = plan_budget_H(m, r, p, cfg.d, cfg.kappa, cfg.zeta);
      res = layered_mterm(f, plan, cfg.layer_kind.value_or(LayerKind::vp), opt);
      units = res.terms_used;
      break;
    }
    case Method::projection: {
      auto approx = project_cross(f, largest_cross_level(m, cfg.d));
      res.error_l2 = (f - approx).l2_norm();
      res.error_linf = cfg.linf ? measure_error(f, approx, std::numeric_limits<double>::infinity(), opt)
                                : std::numeric_limits<double>::quiet_NaN();
      units = approx.size();
      break;
    }
    case Method::smolyak: {
      PolynomialSampler sampler(f);
      auto approx = smolyak_recover(sampler, largest_grid_level(m, cfg.d));
      res.error_l2 = (f - approx).l2_norm();
      res.error_linf = cfg.linf ? measure_error(f, approx, std::numeric_limits<double>::infinity(), opt)
                                : std::numeric_limits<double>::quiet_NaN();
      units = sampler.call_count();
      break;
    }
  }
  ReportRow row;
  row.method = to_string(cfg.method);
  row.d = cfg.d;
  row.cls = to_string(cfg.smoothness.family);
  row.r = r;
  row.p = p;
  row.m = m;
  row.error_linf = res.error_linf;
  row.error_l2 = res.error_l2;
  row.units_used = units;
  row.seconds = cfg.timing
                    ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
                    : 0.0;
  return row;
}

}  // namespace

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg, const TrigPolynomial& f,
                                      std::ostream* sink) {
  cfg.validate();
  if (f.dim() != cfg.d) throw InvalidArgument("function dimension does not match the config");
  std::vector<ReportRow> rows;
  if (sink) write_report_header(*sink, cfg.linf ? std::optional<double>(cfg.oversample) : std::nullopt);
  try {
    for (std::uint64_t m : cfg.schedule.values()) {
      rows.push_back(run_one(cfg, f, m));
      if (sink) {
        write_report_row(*sink, rows.back());
        sink->flush();
      }
    }
  } catch (const std::exception& e) {
    if (sink) {
      *sink << "# aborted: " << e.what() << '\n';
      sink->flush();
    }
    throw;
  }
  if (sink) write_report_footer(*sink, cfg.smoothness.r == 0.5);
  return rows;
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg, std::ostream* sink) {
  cfg.validate();
  return run_experiment(cfg, registry_function(cfg.function, cfg.registry_params(), cfg.d), sink);
}

std::vector<RatePoint> rate_points(const std::vector<ReportRow>& rows, ErrorColumn column) {
  std::vector<RatePoint> pts;
  for (const auto& row : rows) {
    const double e = column == ErrorColumn::linf ? row.error_linf : row.error_l2;
    if (row.m >= 16 && e > 0.0 && std::isfinite(e)) pts.push_back({static_cast<double>(row.m), e});
  }
  return pts;
}

std::string compare_reports(const std::vector<std::pair<std::string, std::vector<ReportRow>>>& reports) {
  if (reports.empty()) throw InvalidArgument("compare needs at least one report");
  std::ostringstream md;
  md << "# Error curves\n\n| m |";
  for (const auto& [name, rows] : reports) {
    const std::string label = rows.empty() ? name : rows.front().method;
    md << ' ' << label << " L_inf | " << label << " L_2 | " << label << " units |";
  }
  md << "\n|---|";
  for (std::size_t i = 0; i < reports.size(); ++i) md << "---|---|---|";
  md << '\n';
  std::set<std::uint64_t> ms;
  for (const auto& entry : reports)
    for (const auto& row : entry.second) ms.insert(row.m);
  for (std::uint64_t m : ms) {
    md << "| " << m << " |";
    for (const auto& entry : reports) {
      const ReportRow* hit = nullptr;
      for (const auto& row : entry.second)
        if (row.m == m) hit = &row;
      if (hit)
        md << ' ' << format_number(hit->error_linf) << " | " << format_number(hit->error_l2) << " | "
           << hit->units_used << " |";
      else
        md << " | | |";
    }
    md << '\n';
  }

  md << "\n# Fitted rates (log e = c - a log m + b log log m)\n\n"
        "| report | column | a | b | residual | window |\n|---|---|---|---|---|---|\n";
  for (const auto& [name, rows] : reports) {
    for (ErrorColumn col : {ErrorColumn::linf, ErrorColumn::l2}) {
      md << "| " << name << " | " << (col == ErrorColumn::linf ? "L_inf" : "L_2") << " | ";
      try {
        const auto pts = rate_points(rows, col);
        const auto fit = fit_rate(pts);
        md << format_number(fit.main_rate) << " | " << format_number(fit.log_power) << " | "
           << format_number(fit.residual) << " | " << format_number(fit.m_min) << ".."
           << format_number(fit.m_max) << " |\n";
      } catch (const std::exception&) {
        md << "n/a | n/a | n/a | n/a |\n";
      }
    }
  }

  const auto& first = reports.front().second;
  if (!first.empty()) {
    const double r = first.front().r;
    const int d = first.front().d;
    const std::string cls = first.front().cls;
    md << "\n# Reference exponents (class " << cls << ", d = " << d << ", r = " << format_number(r)
       << "; error <~ m^-a (log m)^b)\n\n| bound | a | b |\n|---|---|---|\n";
    if (cls == "W") {
      md << "| best m-term / sampling via Kolmogorov widths, L_2 | " << format_number(r) << " | "
         << format_number((d - 1) * (1 - r) + r) << " |\n";
      md << "| sparse-grid sampling, L_2 | " << format_number(r) << " | " << format_number(d - 1.0)
         << " + eps |\n";
    } else {
      md << "| best m-term / sampling via Kolmogorov widths, L_2 | " << format_number(r) << " | "
         << format_number(d - 1 + r) << " |\n";
      md << "| sparse-grid sampling, L_2 | " << format_number(r) << " | "
         << format_number((d - 1) * (1 + r)) << " |\n";
    }
  }
  md << "\nAll curves are single-instance upper bounds. The reference rows are worst-case class\n"
        "bounds with unknown constants; the table does not decide which method is asymptotically better.\n";
  return md.str();
}

}  // namespace hcross
