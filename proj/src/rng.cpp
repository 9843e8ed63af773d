#include "annulus/rng.hpp"

#include <cmath>

namespace annulus {

namespace {
// splitmix64 finalizer.
inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t CounterRng::value_at(std::uint64_t counter) const {
  return mix(mix(seed_ ^ mix(stream_ + 0x632be59bd9b4e019ULL)) + counter);
}

double CounterRng::next_normal() {
  // Box-Muller; u clamped away from 0.
  double u = next_double();
  double v = next_double();
  if (u < 1e-300) u = 1e-300;
  return std::sqrt(-2.0 * std::log(u)) *
         std::cos(2.0 * 3.14159265358979323846 * v);
}

}  // namespace annulus
