#include "annulus/sectors.hpp"

#include <cmath>

#include "annulus/multipliers.hpp"

namespace annulus {

namespace {

const RadialProfile& zeta_profile() {
  static const RadialProfile z = bump_profile("zeta_sector", {});
  return z;
}
const RadialProfile& zeta_wide_profile() {
  static const RadialProfile z = bump_profile("zeta_wide", {});
  return z;
}
const RadialProfile& phi_partition_profile() {
  static const RadialProfile p = bump_profile("phi_partition", {});
  return p;
}

void check_index(const DirectionSet& set, int theta_index) {
  if (theta_index < 0 ||
      theta_index >= static_cast<int>(set.directions.size()))
    throw config_error("sector op: theta index not in the direction set");
}

double zeta_at(const DirectionSet& set, int theta_index,
               const std::array<double, 3>& xi) {
  double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  if (r == 0.0) return 0.0;
  const auto& th = set.directions[theta_index].theta;
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    double v = xi[i] / r - th[i];
    s += v * v;
  }
  return zeta_profile()(std::ldexp(std::sqrt(s), set.j));
}

}  // namespace

double sector_symbol(const DirectionSet& set, int theta_index,
                     const std::array<double, 3>& xi) {
  return zeta_at(set, theta_index, xi);
}

double sector_partition_weight(const DirectionSet& set, int theta_index,
                               const std::array<double, 3>& xi) {
  double num = zeta_at(set, theta_index, xi);
  if (num == 0.0) return 0.0;
  double den = 0.0;
  const int count = static_cast<int>(set.directions.size());
  if (set.d == 2) {
    // Uniform angular layout: only a handful of neighbors can contribute.
    double ang = std::atan2(xi[1], xi[0]);
    double spacing = 2.0 * 3.14159265358979323846 / count;
    int i0 = static_cast<int>(std::floor(ang / spacing));
    for (int o = -2; o <= 3; ++o) {
      int t = ((i0 + o) % count + count) % count;
      double z = zeta_at(set, t, xi);
      den += z * z;
    }
  } else {
    for (int t = 0; t < count; ++t) {
      double z = zeta_at(set, t, xi);
      den += z * z;
    }
  }
  return num / den;  // den >= num^2 > 0 here
}

Field sector_cutoff(const Field& f, const DirectionSet& set, int theta_index) {
  check_index(set, theta_index);
  return apply_symbol(f, [&set, theta_index](const std::array<double, 3>& xi) {
    return cd(sector_symbol(set, theta_index, xi), 0.0);
  });
}

Field sector_radial_block(const Field& f, const DirectionSet& set,
                          int theta_index, int n) {
  check_index(set, theta_index);
  const RadialProfile& phi = phi_partition_profile();
  return apply_symbol(f, [&set, &phi, theta_index,
                          n](const std::array<double, 3>& xi) {
    double w = sector_partition_weight(set, theta_index, xi);
    if (w == 0.0) return cd(0.0, 0.0);
    double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    return cd(w * phi(std::ldexp(r, set.j) - n), 0.0);
  });
}

Field sector_plate_block(const Field& f, const DirectionSet& set,
                         int theta_index, int l) {
  check_index(set, theta_index);
  const RadialProfile& zw = zeta_wide_profile();
  const RadialProfile& phi = phi_partition_profile();
  return apply_symbol(f, [&set, &zw, &phi, theta_index,
                          l](const std::array<double, 3>& xi) {
    double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    if (r == 0.0) return cd(0.0, 0.0);
    const auto& th = set.directions[theta_index].theta;
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      double v = xi[i] / r - th[i];
      s += v * v;
    }
    double ang = zw(std::ldexp(std::sqrt(s), set.j));
    if (ang == 0.0) return cd(0.0, 0.0);
    return cd(ang * phi(std::ldexp(r, 2 * set.j) - l), 0.0);
  });
}

}  // namespace annulus
