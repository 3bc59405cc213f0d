#include "hcross/rate_fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "hcross/errors.hpp"

namespace hcross {

namespace {

RateFit least_squares(std::span<const RatePoint> points, int columns) {
  if (points.size() < 4) throw InvalidArgument("rate fit needs at least 4 points");
  const auto rows = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd design(rows, columns);
  Eigen::VectorXd target(rows);
  RateFit fit;
  fit.m_min = points.front().m;
  fit.m_max = points.front().m;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& pt = points[static_cast<std::size_t>(i)];
    if (!(pt.m >= 16.0)) throw InvalidArgument("rate fit needs m >= 16");
    if (!(pt.error > 0.0) || !std::isfinite(pt.error)) throw InvalidArgument("rate fit needs positive finite errors");
    const double lm = std::log(pt.m);
    design(i, 0) = 1.0;
    design(i, 1) = lm;
    if (columns > 2) design(i, 2) = std::log(lm);
    if (columns > 3) design(i, 3) = std::log(std::log(lm));
    target(i) = std::log(pt.error);
    fit.m_min = std::min(fit.m_min, pt.m);
    fit.m_max = std::max(fit.m_max, pt.m);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < columns) throw DegenerateFit("rate-fit design matrix is rank deficient on this window");
  const Eigen::VectorXd coef = qr.solve(target);
  fit.constant = coef(0);
  fit.main_rate = -coef(1);
  if (columns > 2) fit.log_power = coef(2);
  if (columns > 3) fit.loglog_power = coef(3);
  fit.residual = std::sqrt((design * coef - target).squaredNorm() / static_cast<double>(rows));
  return fit;
}

}  // namespace

RateFit fit_rate(std::span<const RatePoint> points, bool with_loglog) {
  return least_squares(points, with_loglog ? 4 : 3);
}

RateFit fit_power_law(std::span<const RatePoint> points) { return least_squares(points, 2); }

}  // namespace hcross
