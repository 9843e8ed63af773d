#include "annulus/bilinear.hpp"

#include <cmath>

#include "annulus/multipliers.hpp"

namespace annulus {

namespace {
const RadialProfile& chi_circ_profile() {
  static const RadialProfile p = bump_profile("chi_circ", {});
  return p;
}
const RadialProfile& chi_one_profile() {
  static const RadialProfile p = bump_profile("chi_one", {});
  return p;
}

Field product(const Field& F1, const Field& F2) {
  if (!(F1.grid == F2.grid))
    throw config_error("bilinear form: fields live on different grids");
  Field p(F1.grid);
  for (std::size_t i = 0; i < p.values.size(); ++i)
    p.values[i] = F1.values[i] * F2.values[i];
  return p;
}
}  // namespace

Field bilinear_center_form(const Field& F1, const Field& F2, int j0) {
  const RadialProfile& chi0 = chi_circ_profile();
  return apply_symbol(product(F1, F2),
                      [&chi0, j0](const std::array<double, 3>& nu) {
                        double r = std::sqrt(nu[0] * nu[0] + nu[1] * nu[1] +
                                             nu[2] * nu[2]);
                        return cd(chi0(std::ldexp(r, j0)), 0.0);
                      });
}

Field bilinear_band_form(const Field& F1, const Field& F2, int j) {
  const RadialProfile& chi1 = chi_one_profile();
  return apply_symbol(product(F1, F2),
                      [&chi1, j](const std::array<double, 3>& nu) {
                        double r = std::sqrt(nu[0] * nu[0] + nu[1] * nu[1] +
                                             nu[2] * nu[2]);
                        return cd(chi1(std::ldexp(r, j)), 0.0);
                      });
}

int bilinear_center_scale(double delta, double eps2) {
  if (!(delta > 0.0) || !(eps2 > 0.0))
    throw config_error("bilinear_center_scale: delta, eps2 must be positive");
  double s = std::sqrt(delta / eps2);
  int j0 = static_cast<int>(std::floor(-std::log2(s)));
  while (std::ldexp(1.0, -j0) < s) --j0;
  while (std::ldexp(1.0, -j0) >= 2.0 * s) ++j0;
  return j0;
}

int bilinear_min_scale(const GridSpec& g) {
  // Product spectra wrap on the torus; the largest representable difference
  // frequency per axis is bounded by the Nyquist radius, so chi_circ(2^j .)
  // is identically 1 once 2^j * sqrt(d) * Nyquist <= 2^5.
  double rmax = g.nyquist() * std::sqrt(static_cast<double>(g.d));
  int j = 5;
  while (std::ldexp(rmax, j) > 32.0) --j;
  return j;
}

}  // namespace annulus
