#pragma once

#include <optional>
#include <span>
#include <vector>

namespace hcross {

struct RatePoint {
  double m = 0.0;
  double error = 0.0;
};

// log e = c - main_rate log m + log_power log log m [+ loglog_power log log log m].
struct RateFit {
  double main_rate = 0.0;
  double log_power = 0.0;
  std::optional<double> loglog_power;
  double constant = 0.0;
  double residual = 0.0;  // RMS of the log-space residuals
  double m_min = 0.0;
  double m_max = 0.0;
};

// Needs >= 4 points with m >= 16 and positive errors (InvalidArgument);
// a rank-deficient design raises DegenerateFit.
RateFit fit_rate(std::span<const RatePoint> points, bool with_loglog = false);

// Two-regressor fit log e = c - main_rate log m; log_power stays 0.
RateFit fit_power_law(std::span<const RatePoint> points);

}  // namespace hcross
