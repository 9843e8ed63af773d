#include "annulus/directions.hpp"

#include <cmath>

namespace annulus {

namespace {
constexpr double kPi = 3.14159265358979323846;

double dist(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}
}  // namespace

DirectionSet direction_set(int j, int d) {
  if (j < 0) throw config_error("direction_set: j must be >= 0");
  if (d != 2 && d != 3) throw config_error("direction_set: d must be 2 or 3");
  DirectionSet set;
  set.j = j;
  set.d = d;
  const double sep = std::ldexp(1.0, -j - d);

  if (d == 2) {
    int count = static_cast<int>(std::floor(2.0 * kPi / sep));
    set.directions.reserve(count);
    for (int i = 0; i < count; ++i) {
      double ang = 2.0 * kPi * i / count;
      set.directions.push_back({{std::cos(ang), std::sin(ang), 0.0}, i});
    }
  } else {
    // Fibonacci sphere candidates, greedily thinned to a maximal
    // sep-separated family in fixed order.
    const long long cand = 4LL << (2 * (j + d));
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (long long i = 0; i < cand; ++i) {
      double z = 1.0 - 2.0 * (i + 0.5) / cand;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double ang = golden * i;
      std::array<double, 3> v{r * std::cos(ang), r * std::sin(ang), z};
      bool ok = true;
      for (const Direction& q : set.directions) {
        if (dist(v, q.theta) < sep) {
          ok = false;
          break;
        }
      }
      if (ok)
        set.directions.push_back(
            {v, static_cast<int>(set.directions.size())});
    }
  }

  set.separation = 4.0;
  for (std::size_t a = 0; a < set.directions.size(); ++a)
    for (std::size_t b = a + 1; b < set.directions.size(); ++b)
      set.separation = std::min(
          set.separation, dist(set.directions[a].theta, set.directions[b].theta));
  return set;
}

}  // namespace annulus
