#pragma once
#include "annulus/field.hpp"

namespace annulus {

// Difference-frequency band forms acting on the pointwise product F1*F2
// (callers conjugate F2 first when the conjugated product is wanted):
//   center form: multiplier chi_circ(2^{j0} nu) on the product's spectrum,
//   dyadic form: multiplier chi_one(2^{j} nu).
Field bilinear_center_form(const Field& F1, const Field& F2, int j0);
Field bilinear_band_form(const Field& F1, const Field& F2, int j);

// Scale selection sqrt(delta/eps2) <= 2^{-j0} < 2 sqrt(delta/eps2).
int bilinear_center_scale(double delta, double eps2 = 1.0 / 256.0);

// Smallest dyadic index j for which chi_circ(2^j nu) == 1 on the whole
// lattice, so the decomposition  product = center + sum_{jmin <= j < j0} band
// closes exactly on the grid.
int bilinear_min_scale(const GridSpec& g);

}  // namespace annulus
