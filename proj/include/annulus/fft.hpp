#pragma once
#include "annulus/field.hpp"

namespace annulus {

// Discretization of f^(xi) = \int f(y) e^{-i<y,xi>} dy with the one-hot
// convention: coeff(xi_k) = n^{-d} sum_m f(x_m) e^{-i<x_m,xi_k>}, so that a
// single lattice mode has coefficient exactly 1.  FFTW-backed.
SpectralField forward_transform(const Field& f);
Field inverse_transform(const SpectralField& F);

// O(N^2) direct-summation oracle, same convention; guarded to n^d <= 2^16.
SpectralField dft_oracle(const Field& f);

// Parseval convention constant: ||f||_2 = c_grid(g) * ||coeffs||_{l2}.
// With the measure dx^d and the one-hot convention, c_grid = L^{d/2}.
double c_grid(const GridSpec& g);

}  // namespace annulus
