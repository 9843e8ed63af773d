#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "annulus/field.hpp"

namespace annulus {

// Deterministic test-field families.  Identical (spec, seed) reproduces
// bit-identical fields; members draw from per-index counter streams, so
// generation order and thread count never matter.
//
// kinds:
//   random_annulus  i.i.d. complex Gaussian coefficients on the dyadic band
//   knapp           smooth plate bump tangent to the sphere of radius 2^band
//                   (transverse extent ~2^{band-j}, radial ~2^{band-2j})
//   radial_focus    smoothed indicator of the width-delta annulus at radius
//                   2^band (members > 0 carry random coefficient phases)
//   gaussian        modulated spatial Gaussian with randomized center/phase
//   dictionary_mix  nonnegative combination of tube-dictionary envelopes
struct EnsembleSpec {
  std::string kind = "random_annulus";
  int band = 3;
  int j = 2;
  double delta = 0.125;
  double sigma = 0.0;  // gaussian width; 0 -> L/16
  int theta_index = 0;
  int count = 1;
  std::uint64_t seed = 0;
};

std::vector<Field> make_ensemble(const EnsembleSpec& spec,
                                 const GridSpec& grid);

}  // namespace annulus
