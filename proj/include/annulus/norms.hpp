#pragma once
#include <functional>
#include <limits>

#include "annulus/field.hpp"

namespace annulus {

constexpr double kInfExponent = std::numeric_limits<double>::infinity();

// (sum |f|^p dx^d)^{1/p}; max |f| for p = infinity.
double lp_norm(const Field& f, double p);

// || (sum_i w_i |u_i(x)|^q)^{1/q} ||_{L^p}: inner t-quadrature, outer L^p.
double mixed_norm(const SpaceTimeField& u, double p, double q);

// ||g||_{L^2_alpha} of a 1-d profile sampled on [-half_width, half_width]:
// ((1/2pi) \int (1+tau^2)^alpha |g^(tau)|^2 dtau)^{1/2}, with a relative
// tail-mass guard on the top spectral bands.
double profile_l2_sobolev_1d(const std::function<double(double)>& g,
                             double alpha, double half_width, int nsamples);

// sup over the given dyadic t-set of ||phi * m(t .)||_{L^2_alpha}.
double windowed_profile_sobolev(const std::function<double(double)>& m,
                                const std::function<double(double)>& phi,
                                double alpha, const std::vector<double>& t_set,
                                double half_width, int nsamples);

// Inhomogeneous Besov norm (sum_k 2^{k s p} ||block_k f||_wp^p)^{1/p} over
// the ladder {low-pass, P_1, P_2, ...} truncated at the Nyquist band, with a
// high-band aliasing mass guard.
double besov_norm(const Field& f, double wp, double s, double p);

}  // namespace annulus
