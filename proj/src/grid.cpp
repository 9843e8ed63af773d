#include "annulus/grid.hpp"

namespace annulus {

static bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

GridSpec make_grid(int d, int n, double L) {
  if (d < 1 || d > 3) throw config_error("make_grid: d must be 1, 2 or 3");
  if (!power_of_two(n) || n < 8)
    throw config_error("make_grid: n must be a power of two >= 8");
  if (!(L > 0.0)) throw config_error("make_grid: L must be positive");
  return GridSpec{d, n, L};
}

}  // namespace annulus
