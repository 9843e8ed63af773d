#pragma once
#include <array>
#include <functional>

#include "annulus/field.hpp"
#include "annulus/profiles.hpp"

namespace annulus {

using SymbolFn = std::function<cd(const std::array<double, 3>&)>;

// Diagonal action on the frequency lattice: coeff(xi) *= symbol(xi).
Field apply_symbol(const Field& f, const SymbolFn& symbol);
SpectralField apply_symbol_spectral(const SpectralField& F,
                                    const SymbolFn& symbol);

// Aliasing guard: the symbol must either decay below 1e-8 on the outermost
// two index shells (support inside the lattice) or be bounded away from zero
// on all of them (support covering the lattice).  A support edge falling in
// the guard band throws.
void check_alias_guard(const GridSpec& g, const SymbolFn& symbol,
                       const char* op_name);

// F^{-1}[ m(|xi|/t) f^ ], guarded against aliasing.
Field apply_radial_multiplier(const Field& f, const RadialProfile& m, double t);

// (1 - |xi|^2/t^2)_+^alpha; alpha = 0 gives the sharp ball cutoff (allowed,
// not alias-guarded -- flagged non-smooth in the docs).
Field bochner_riesz(const Field& f, double alpha, double t);

// Symbol 2 alpha u^2 (1-u^2)_+^{alpha-1}, u = |xi|/t; evaluates to 0 where
// 1-u^2 <= eps_sing (1e-12) to sidestep the alpha<1 edge singularity.
Field stein_derivative_piece(const Field& f, double alpha, double t);
double stein_symbol(double u, double alpha);

// S^delta_t: phi(delta^{-1}(1 - |xi|^2/t^2)).
Field thin_annulus(const Field& f, const RadialProfile& phi, double delta,
                   double t);

// Generalized annulus with a nonvanishing modulation beta(xi, t); reduces to
// thin_annulus for beta == 1.  beta is window-checked on the occupied band.
Field generalized_annulus(
    const Field& f, const RadialProfile& phi,
    const std::function<double(const std::array<double, 3>&, double)>& beta,
    double delta, double t);

// Littlewood-Paley pieces: P_n with chi(2^{-n}|xi|) and the reproducing
// companion with chi_reproducing (==1 on supp chi, so P~_n P_n = P_n).
Field dyadic_cutoff(const Field& f, int n);
Field reproducing_cutoff(const Field& f, int n);
// Low-frequency block 1 - sum_{k>=1} chi(2^{-k}|xi|) of the inhomogeneous
// ladder (equals 1 at xi = 0).
Field low_pass_block(const Field& f);

// Largest n with band 2^n inside the Nyquist guard, and smallest n whose
// band is resolved by the frequency lattice.
int max_band(const GridSpec& g);
int min_band(const GridSpec& g);

}  // namespace annulus
