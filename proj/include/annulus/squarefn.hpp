#pragma once
#include <array>
#include <vector>

#include "annulus/field.hpp"
#include "annulus/multipliers.hpp"
#include "annulus/profiles.hpp"

namespace annulus {

// Radii of the lowest/highest occupied frequency shells of f (coefficients
// above 1e-13 of the peak).  Throws on the zero field.
struct BandRange {
  double lo = 0.0;
  double hi = 0.0;
};
BandRange band_range(const Field& f);

// Square function (int |d/dt R^alpha_t f|^2 t dt)^{1/2} evaluated as
// (sum_i w_i |symbol-piece at t_i|^2)^{1/2} over a geometric dt/t quadrature
// on (lowband/8, highband*64); the neglected per-mode tail (relative to the
// full-line symbol integral alpha/(2 alpha - 1)) is written to *tail_bound.
Field stein_square_function(const Field& f, double alpha, int nodes = 0,
                            double* tail_bound = nullptr);

// (int_1^2 |S^delta_t f|^2 dt/t)^{1/2} with M geometric nodes (default
// ceil(8/delta)); rejects M < 2/delta as undersampled.
Field local_annulus_square(const Field& f, const RadialProfile& phi,
                           double delta, int M = 0);

// Pointwise max over the sampled t of |(1-|xi|^2/t^2)_+^lambda f|; a lower
// bound of the true sup, monotone in the sample set.
Field maximal_bochner_riesz(const Field& f, double lambda,
                            const std::vector<double>& t_samples);
// Geometric sample set covering [lo/2, hi*2] at ratio <= 1+1/64.
std::vector<double> riesz_sample_set(const Field& f);

// Normalized spherical mean of order beta: radial multiplier m_beta(t|xi|)
// with m_beta the transform of the unit-mass kernel (1-|y|^2)^{beta-1} on
// the ball, computed by 1-d Gauss-Legendre quadrature and cached per (beta,d).
Field spherical_mean(const Field& f, double beta, double t);
// The cached profile value m_beta(rho) itself (for oracles/tests).
double spherical_multiplier(double beta, int d, double rho);

// Companion square function: same aggregation as stein_square_function with
// the symbol rho m_beta'(rho), beta = alpha - (d-2)/2.
Field ks_square_function(const Field& f, double alpha, int nodes = 0);

struct CarlesonResult {
  Field lhs;
  Field rhs;
  double max_ratio = 0.0;
};

// Square-sum bound for disjointly supported symbols m_k precomposed with an
// invertible map A: lhs = (sum_k |F^{-1}[m_k(A^t .) f^]|^2)^{1/2},
// rhs = sup_k ||m_k||_{L^2_s} (int det(A^{-1}) (1+|A^{-1}y|^2)^{-s}
// |f(x-y)|^2 dy)^{1/2}; returns both and the max lattice ratio.
CarlesonResult carleson_bound_check(
    const std::vector<std::function<double(const std::array<double, 3>&)>>&
        m_list,
    const Field& f, const std::array<std::array<double, 3>, 3>& A, double s);

}  // namespace annulus
