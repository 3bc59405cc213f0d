#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcross/mterm.hpp"
#include "hcross/rate_fit.hpp"
#include "hcross/registry.hpp"
#include "hcross/spectral.hpp"

namespace hcross {

enum class Method { greedy, layered_W, layered_H, projection, smolyak };

std::string to_string(Method method);
Method parse_method(const std::string& name);
std::string to_string(Family family);
Family parse_family(const std::string& name);

// Geometric m schedule; an explicit list wins when non-empty.
struct Schedule {
  std::uint64_t first = 16;
  std::uint64_t last = 16384;
  double ratio = 2.0;
  std::vector<std::uint64_t> explicit_values;

  // Strictly increasing; rounding duplicates are skipped.
  std::vector<std::uint64_t> values() const;
};

struct ExperimentConfig {
  Method method = Method::greedy;
  SmoothnessSpec smoothness{Family::H, 0.4, 2.0, 2.0, {}};
  int d = 2;
  Schedule schedule;
  std::string function = "random_H_ball";
  RegistryParams function_params;
  double oversample = kDefaultOversample;  // L_inf error grids
  std::string output;
  std::uint64_t seed = 1;
  bool timing = false;  // false writes 0 seconds so reruns are byte identical
  bool linf = true;
  std::optional<LayerKind> layer_kind;  // default: sharp for W, vp for H
  std::optional<double> kappa;
  std::optional<double> zeta;

  void validate() const;
  // The registry parameters with the config seed applied.
  RegistryParams registry_params() const;
};

// Sections [experiment], [class], [schedule], [function]; see configs/.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct ReportRow {
  std::string method;
  int d = 0;
  std::string cls;
  double r = 0.0;
  double p = 0.0;
  std::uint64_t m = 0;
  double error_linf = 0.0;
  double error_l2 = 0.0;
  std::uint64_t units_used = 0;
  double seconds = 0.0;
};

inline constexpr const char* kReportVersion = "# hcross report v1";
inline constexpr const char* kReportHeader =
    "method,d,class,r,p,m,error_linf,error_l2,units_used,seconds";

// The version line, an optional note on the L_inf grid, then the column header.
void write_report_header(std::ostream& out, std::optional<double> linf_oversample = {});
void write_report_row(std::ostream& out, const ReportRow& row);
// `endpoint` adds the r = 1/2 caveat on the extra log log factor.
void write_report_footer(std::ostream& out, bool endpoint = false);
std::vector<ReportRow> read_report(std::istream& in);
std::vector<ReportRow> load_report(const std::string& path);

// Runs the schedule on the registry function named in cfg. Rows are
// streamed to `sink` as they finish; on failure a comment line is written
// and the exception propagates.
std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg, std::ostream* sink = nullptr);

// Same with the target supplied by the caller.
std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg, const TrigPolynomial& f,
                                      std::ostream* sink = nullptr);

// Coefficient CSV: one line per frequency, k1,...,kd,re,im. Lines starting
// with '#' are ignored; d is taken from the first data line.
void write_coefficients(std::ostream& out, const TrigPolynomial& f);
TrigPolynomial read_coefficients(std::istream& in);

enum class ErrorColumn { linf, l2 };

std::vector<RatePoint> rate_points(const std::vector<ReportRow>& rows, ErrorColumn column);

// Markdown table: error curves side by side by m, fitted rates per report
// and the reference exponents of the class.
std::string compare_reports(const std::vector<std::pair<std::string, std::vector<ReportRow>>>& reports);

}  // namespace hcross
