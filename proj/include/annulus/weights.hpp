#pragma once
#include <vector>

#include "annulus/directions.hpp"
#include "annulus/field.hpp"

namespace annulus {

// Hardy-Littlewood maximal function over centered cubes with dyadic
// half-widths {0, dx, 2dx, ..., L/2}; M w >= w pointwise.
WeightField hl_maximal(const WeightField& w);

// Nikodym maximal function: sup over sampled directions and scales of the
// average over the tube {|<y,theta>| <= t, |y_perp| <= t*ecc}; a lower bound
// of the true sup.  Defaults: theta from direction_set(j ~ log2(1/ecc)),
// t geometric with ratio 2^{1/4} over [4dx, L/4].
WeightField nikodym_maximal(const WeightField& w, double ecc,
                            const std::vector<double>& t_samples = {},
                            const DirectionSet* theta_set = nullptr);

// Anisotropic tube kernel 2^{-j} tau^d / (1 + |l_{theta,j}^{-1}(tau x)|)^{d+1}
// with l_{theta,j} stretching the theta axis by 2^j; sampled on the grid.
struct TubeKernel {
  Direction theta;
  int j = 0;
  double tau = 1.0;
  Field field;
};
TubeKernel tube_kernel_field(const Direction& theta, int j, double tau,
                             const GridSpec& grid,
                             double periodization_tol = 1e-8);
// Continuous convolution K * w approximated spectrally (exact for the
// periodized kernel).
Field kernel_convolve(const TubeKernel& K, const Field& w);

// Finite certified dictionary standing in for the Schwartz class of tubes of
// length 2^{j-n}, width 2^{-n}, direction theta.
struct DictionaryMember {
  std::string id;
  Field field;          // realized convolution kernel on the grid
  double seminorm = 0;  // measured seminorm of the normalized shape
  double slack = 0.05;
};
struct SchwartzDictionary {
  Direction theta;
  int j = 0, n = 0, order = 0;  // order = seminorm order (d+3 by default)
  std::vector<DictionaryMember> members;
};
SchwartzDictionary schwartz_dictionary(const Direction& theta, int j, int n,
                                       int K, const GridSpec& grid);
// max over members of |Psi * g|: a certified lower bound of the grand
// maximal function.
Field grand_maximal(const Field& g, const SchwartzDictionary& dict);

// Composite weight operators (q in (1,(d+2)/2), delta in (0,1/2), s in (1,q)):
//   w_layer  = (sup_theta K^{theta,j}_{2^{k+j} delta} *
//               |GrandMax^{theta,j}_{k-j} P_{k-j} w|^q)^{1/q}
//   w_sup    = sup over k in k_range of w_layer
//   frak_w   = sum_{1<=2^{2j}<1/delta} 2^{-2j(d/q-1)} (M|M w_sup^j|^s)^{1/s}
//              + delta^{d/q-1} (M|M Nikodym_{sqrt delta} w|^s)^{1/s}
//   theorem41_weight = same sum with plain M o w_layer(k=0) and
//              delta^{d/q-1} M o Nikodym_{sqrt delta}
Field w_layer(const WeightField& w, int j, double q, double delta, int k,
              int dict_K = 12);
// Batch variant sharing the per-direction dictionary and kernel work across
// many weights (used by the sweep experiments).
std::vector<Field> w_layer_batch(const std::vector<WeightField>& ws, int j,
                                 double q, double delta, int k,
                                 int dict_K = 12);
// Multi-exponent variant: the grand-maximal stage is q-independent, so a
// whole family of exponents reuses it.  Result is [qi][wi].
std::vector<std::vector<Field>> w_layer_batch(const std::vector<WeightField>& ws,
                                              int j,
                                              const std::vector<double>& qs,
                                              double delta, int k,
                                              int dict_K = 12);
Field w_sup(const WeightField& w, int j, double q, double delta,
            const std::vector<int>& k_range, int dict_K = 12);
Field frak_w(const WeightField& w, double q, double delta, double s = 0.0,
             int dict_K = 12);
Field theorem41_weight(const WeightField& w, double q, double delta,
                       int dict_K = 12);

}  // namespace annulus
