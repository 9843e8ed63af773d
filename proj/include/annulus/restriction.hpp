#pragma once
#include <array>
#include <functional>
#include <vector>

#include "annulus/directions.hpp"
#include "annulus/field.hpp"

namespace annulus {

// Perturbed-paraboloid phase gamma(omega, s) = |omega|^2/2 - s + h(omega, s)
// with h certified small in all derivatives up to order N0 over the window
// [-b,b]^{d-1} x [-1/2,1/2].
struct EllipticPhase {
  int d = 2;            // ambient dimension (omega lives in R^{d-1})
  double b = 1.0;       // omega half-width
  double eps = 1e-3;    // declared derivative bound
  int N0 = 20;          // certificate order (default 10d)
  std::function<double(const std::array<double, 2>&, double)> h;
  double certified_sup = 0.0;  // measured max |d^alpha h|, |alpha| <= N0
};

// Builds and certifies the phase by iterated finite differences on a
// superlattice; throws config_error if the measured bound exceeds eps.
EllipticPhase make_elliptic_phase(
    int d, double b,
    const std::function<double(const std::array<double, 2>&, double)>& h,
    double eps = 1e-3, int N0 = 0 /* 0 -> 10d */);

using SurfaceDensity = std::function<cd(const std::array<double, 2>&)>;

// E F(x) = sum over the omega lattice of
//   F(omega) exp(i(<x', omega> + x_d(|omega|^2/2 + h(omega, 0)))) dOmega,
// evaluated at the lattice points of `grid` (d = phase.d); midpoint rule
// with >= omega_per_unit points per unit length, phase-variation guarded.
Field extension_operator(const SurfaceDensity& F, const EllipticPhase& phase,
                         const GridSpec& grid, int omega_per_unit = 64);

// || E F1 . E F2 ||_{L^{p/2}(window)} / (||F1||_2 ||F2||_2) with measured
// support separation >= 1/2 and a <5% boundary-shell mass guard.
double bilinear_extension_ratio(const SurfaceDensity& F1,
                                const SurfaceDensity& F2,
                                const EllipticPhase& phase, double p,
                                const GridSpec& grid, int omega_per_unit = 64);

// Residual r_j of the annulus rescaling identity
//   1 - |e_d + A_{-j} eta|^2/(1+2^{-2j}s)^2
//     = 2^{1-2j}(s + eta_d - |eta'|^2/2) + 2^{-4j} r_j(eta, s),
// with A_{-j} eta = (2^{-j} eta', -2^{-2j} eta_d).  Returns the sup over the
// sampled window of |r_j| and its first/second finite differences in eta.
double rescaled_phase_residual(const Direction& theta1, const Direction& theta2,
                               int d, int j, double t0,
                               const std::vector<double>& s_samples,
                               double eta_window);
// The residual value itself (for exactness tests).
double rescaled_phase_residual_at(int j, const std::array<double, 3>& eta,
                                  double s, int d);

}  // namespace annulus
