#pragma once
#include <cstdint>

namespace annulus {

// Counter-based deterministic stream: every draw is a pure function of
// (seed, stream, counter), so ensemble members can be generated on any
// thread in any order with identical results.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() { return value_at(counter_++); }
  // Uniform in [0,1).
  double next_double() {
    return (next_u64() >> 11) * (1.0 / 9007199254740992.0);
  }
  // Standard normal via Box-Muller (consumes two uniforms).
  double next_normal();

private:
  std::uint64_t value_at(std::uint64_t counter) const;
  std::uint64_t seed_, stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace annulus
