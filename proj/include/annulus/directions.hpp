#pragma once
#include <array>
#include <vector>

#include "annulus/errors.hpp"

namespace annulus {

struct Direction {
  std::array<double, 3> theta{1.0, 0.0, 0.0};
  int index = 0;
};

// Maximal 2^{-j-d}-separated direction family on S^{d-1}.
struct DirectionSet {
  int j = 0;
  int d = 2;
  std::vector<Direction> directions;
  double separation = 0.0;  // realized minimum pairwise distance
};

// d=2: uniformly spaced angles, count floor(2 pi 2^{j+d}); d=3: greedy
// maximal selection from a Fibonacci sphere lattice of 4*2^{2(j+d)}
// candidates in fixed order.
DirectionSet direction_set(int j, int d);

}  // namespace annulus
