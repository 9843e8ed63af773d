#pragma once
#include <vector>

#include "annulus/field.hpp"
#include "annulus/report.hpp"

namespace annulus {

struct TimeInterval {
  double t0 = 0.0;
  double t1 = 1.0;
  double length() const { return t1 - t0; }
};

// Fractional propagator: diagonal phase e^{i t |xi|^a}.
Field evolve(const Field& f, double a, double t);

// Uniform midpoint time sampling of the evolution.
SpaceTimeField evolve_sampled(const Field& f, double a, TimeInterval I, int M);

// Pointwise (int_I |u(x,t)|^2 dt)^{1/2} for u = evolution of the given
// spectrum.  Computed exactly by difference-frequency synthesis when the
// occupied mode count permits, otherwise by guarded uniform sampling.
Field time_l2_field(const SpectralField& c, double a, TimeInterval I);
// Same with the inner exponent q (q=2 routes through the exact path);
// M=0 picks the bandwidth-driven default.
Field time_lq_field(const SpectralField& c, double a, TimeInterval I, double q,
                    int M = 0);

// lambda(p) = d(1/2-1/p) - 1/2 and the critical regularity
// s_crit = d(1/wp - 1/p) + a(d/2 - d/wp - 1/q).
double lambda_exponent(double p, int d);
double s_crit(double wp, double p, double q, double a, int d);

// || (int_I |U^a_t P_k f|^2 dt)^{1/2} ||_p / ||f||_p.
double freq_localized_ratio(const Field& f, double a, int k, double p,
                            TimeInterval I);

// Same left side over the full field, divided by the Bessel-Sobolev norm
// ||(1+|D|^2)^{s/2} f||_p with s = a(d(1/2-1/p)-1/2).
double sobolev_ratio_thm14(const Field& f, double a, double p, TimeInterval I);

struct AppendixARow {
  int k = 0;
  double value = 0.0;
};
struct AppendixATable {
  std::vector<AppendixARow> rows;
  double sup = 0.0;
};

// Normalization of the band-localized propagator T_k:
// 2^{k(a-1)d(1/wp0-1/p0)} 2^{-ka(d/2-1/q)} P_k U^a.
double tk_scale(double a, double wp0, double p0, double q, int k, int d);

// A-table: per band k, 2^{kad/p0} times the ensemble max of
// ||T_k f||_{L^{p0}(L^q(I))} / ||f||_{wp0}; a lower bound of the operator
// norm.  The running sup is the A constant estimate.
AppendixATable appendix_constant_A(double a, double wp0, double p0, double q,
                                   const std::vector<int>& k_range,
                                   const std::vector<Field>& ensemble,
                                   TimeInterval I, int M = 0);

// Tail mass of the synthesized band kernel h_k outside |x| >= C1 2^{k(a-1)},
// with the inner L^q(I) norm in t; returns 0 and sets *region_empty when the
// tail region misses the torus entirely.
double appendix_tail_B(double a, int k, double C1, double wp1, double q,
                       const GridSpec& grid, TimeInterval I, int M = 0,
                       bool* region_empty = nullptr);

// || (sum_k 2^{kadr/p} |R_k T_k f_k|_{L^q(I)}^r)^{1/r} ||_p divided by
// (sum_k ||f_k||_wp^p)^{1/p}; R_k mollifies at scale 2^{-k}.
double dyadic_combine_ratio(const std::vector<Field>& fields,
                            const std::vector<int>& k_list, double a, double p,
                            double wp, double q, double r, double wp0,
                            double p0, TimeInterval I, int M = 0);

// Sweep over dilation R of R^{s_crit} times the ensemble-max ratio
// ||U^a phi(R^{-1}|D|) f||_{L^p(L^q(I))} / ||f||_wp; slope target 0.
ScalingReport gamma_a_table(double wp, double p, double q, double a,
                            const std::vector<double>& R_list,
                            const std::vector<Field>& ensemble, TimeInterval I,
                            int M = 0);

// Norm of the time-band j block of the windowed evolution of the space-band
// k projection of g (d=1), divided by ||g||_wp; decays off the line j = ka.
double derivative_trading_check(const Field& g, double a, int k, int j,
                                double p, double q, double wp, double T,
                                int n_t);

}  // namespace annulus
