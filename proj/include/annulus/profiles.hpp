#pragma once
#include <functional>
#include <string>

#include "annulus/errors.hpp"

namespace annulus {

// Smooth 1-d profile with declared support and derivative bound.  The
// derivative bound is checked numerically (dense sampling + centered finite
// differences) at 5% slack by verify_profile.
struct RadialProfile {
  std::function<double(double)> eval;
  double support_lo = 0.0;
  double support_hi = 0.0;
  int nu_max = 0;       // highest derivative order covered by `bound`
  double bound = 1.0;   // declared max_{nu<=nu_max} sup |profile^(nu)|
  std::string kind;

  double operator()(double s) const { return eval(s); }
};

struct BumpParams {
  int d = 2;  // ambient dimension (drives the phi_window derivative order)
};

// Profile kinds:
//   phi_window      support (1/2,2), |phi^(nu)| <= 1 for nu <= d+2
//   chi_dyadic      support (5/8,15/8), exact partition sum_k chi(2^{-k} t)=1
//   chi_reproducing support (1/2,2), == 1 on [5/8,15/8]  (so P~_n P_n = P_n)
//   zeta_sector     support |u| <= 1/8, == 1 on |u| <= 1/9
//   zeta_wide       support |u| <= 1/7, == 1 on |u| <= 1/8
//   eta_plate       support (-1,1), == 1 on (-1/2,1/2)
//   eta_ring        eta_plate(s) - eta_plate(2s)
//   chi_circ        support |w| <= 2^5+1, == 1 on |w| <= 2^5
//   chi_one         chi_circ(w) - chi_circ(2w)
//   phi_partition   support (-5/8,5/8), == 1 on [-3/8,3/8], sum_n phi(u-n)=1
RadialProfile bump_profile(const std::string& kind, const BumpParams& params);

// Canonical normalized bump exp(-1/(1-u^2)) on (-1,1), 0 outside.
double canonical_bump(double u);
// C^inf step: 0 for v <= 0, 1 for v >= 1, strictly increasing between.
double smooth_step(double v);

// Checks support and the declared derivative bound by finite differences;
// throws on violation beyond 5% slack.
void verify_profile(const RadialProfile& p);

}  // namespace annulus
