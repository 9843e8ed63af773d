#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace annulus {

struct ScalingRow {
  double param = 0.0;
  double value = 0.0;
};

// Log-log sweep summary: least-squares slope of log2(value) against
// log2(param), the worst-case deviation from the fit line, and the
// theoretical exponent the slope is compared against.
struct ScalingReport {
  std::string sweep_name;
  std::vector<ScalingRow> rows;
  double slope = 0.0;
  double residual = 0.0;          // max |log2 deviation| from the fit
  double theory_exponent = 0.0;
  double margin = 0.0;            // slope - theory_exponent
  std::string label;              // e.g. "empirical lower bound"
  std::uint64_t seed = 0;
  std::string notes;
};

// Fill slope/residual/margin from rows (requires >= 3 rows with positive
// param and value).
void fit_scaling(ScalingReport& report);

}  // namespace annulus
