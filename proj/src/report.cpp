#include "annulus/report.hpp"

#include <cmath>

#include "annulus/errors.hpp"

namespace annulus {

void fit_scaling(ScalingReport& report) {
  if (report.rows.size() < 3)
    throw config_error("fit_scaling: need at least 3 rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(report.rows.size());
  for (const ScalingRow& r : report.rows) {
    if (!(r.param > 0.0) || !(r.value > 0.0))
      throw config_error("fit_scaling: rows must be positive for log2 fit");
    double x = std::log2(r.param), y = std::log2(r.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12)
    throw config_error("fit_scaling: degenerate parameter set");
  report.slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - report.slope * sx) / n;
  report.residual = 0.0;
  for (const ScalingRow& r : report.rows) {
    double pred = intercept + report.slope * std::log2(r.param);
    report.residual =
        std::max(report.residual, std::abs(std::log2(r.value) - pred));
  }
  report.margin = report.slope - report.theory_exponent;
}

}  // namespace annulus
