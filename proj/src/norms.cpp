#include "annulus/norms.hpp"

#include <algorithm>
#include <cmath>

#include "annulus/fft.hpp"
#include "annulus/multipliers.hpp"

namespace annulus {

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw config_error("lp_norm: p must be >= 1");
  if (p == kInfExponent) {
    double m = 0.0;
    for (const cd& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  double vol = f.grid.cell_volume();
  double acc = 0.0;
  for (const cd& v : f.values) acc += std::pow(std::abs(v), p);
  return std::pow(acc * vol, 1.0 / p);
}

double mixed_norm(const SpaceTimeField& u, double p, double q) {
  if (!(p >= 1.0) || !(q >= 1.0))
    throw config_error("mixed_norm: exponents must be >= 1");
  if (u.frames.empty()) throw config_error("mixed_norm: empty time set");
  const std::size_t N = u.grid.size();
  Field inner(u.grid);
  for (std::size_t x = 0; x < N; ++x) {
    double v;
    if (q == kInfExponent) {
      v = 0.0;
      for (const Field& fr : u.frames)
        v = std::max(v, std::abs(fr.values[x]));
    } else {
      double acc = 0.0;
      for (std::size_t i = 0; i < u.frames.size(); ++i)
        acc += u.weights[i] * std::pow(std::abs(u.frames[i].values[x]), q);
      v = std::pow(acc, 1.0 / q);
    }
    inner.values[x] = cd(v, 0.0);
  }
  return lp_norm(inner, p);
}

double profile_l2_sobolev_1d(const std::function<double(double)>& g,
                             double alpha, double half_width, int nsamples) {
  int n = 256;
  while (n < nsamples) n *= 2;
  GridSpec grid = make_grid(1, n, 2.0 * half_width);
  Field f(grid);
  for (int i = 0; i < n; ++i) f.values[i] = cd(g(grid.x(i)), 0.0);
  SpectralField F = forward_transform(f);

  // ||g||_{L^2_alpha}^2 = L * sum (1+xi^2)^alpha |c|^2 under the one-hot
  // convention (Parseval with c_grid = L^{1/2} in d=1).
  double total = 0.0, tail = 0.0;
  double xi_guard = grid.nyquist() * 0.75;  // top quarter of the band
  for (int i = 0; i < n; ++i) {
    double xi = grid.xi(i);
    double term = std::pow(1.0 + xi * xi, alpha) * std::norm(F.coeffs[i]);
    total += term;
    if (std::abs(xi) >= xi_guard) tail += term;
  }
  if (total > 0.0 && tail > 1e-8 * total)
    throw guard_error("tail-mass",
                      "profile_l2_sobolev: spectral tail not resolved");
  return std::sqrt(grid.L * total);
}

double windowed_profile_sobolev(const std::function<double(double)>& m,
                                const std::function<double(double)>& phi,
                                double alpha, const std::vector<double>& t_set,
                                double half_width, int nsamples) {
  double best = 0.0;
  for (double t : t_set) {
    auto g = [&m, &phi, t](double s) { return phi(s) * m(t * s); };
    best = std::max(best,
                    profile_l2_sobolev_1d(g, alpha, half_width, nsamples));
  }
  return best;
}

double besov_norm(const Field& f, double wp, double s, double p) {
  if (!(wp >= 1.0) || !(p >= 1.0))
    throw config_error("besov_norm: exponents must be >= 1");
  const GridSpec& g = f.grid;
  SpectralField F = forward_transform(f);

  // Aliasing guard: the two highest dyadic bands must be essentially empty.
  int K = max_band(g);
  double lo_edge = std::ldexp(0.625, K - 1);
  double total = 0.0, high = 0.0;
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
    double m = std::norm(F.coeffs[i]);
    total += m;
    auto xi = g.xi_vec(i);
    double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    if (r >= lo_edge) high += m;
  }
  if (total > 0.0 && high > 1e-6 * total)
    throw guard_error("besov-high-band",
                      "besov_norm: significant mass in the top dyadic bands");

  double acc = 0.0;
  double n0 = lp_norm(low_pass_block(f), wp);
  acc += std::pow(n0, p);  // k = 0 block, weight 2^{0 s p}
  for (int k = 1; k <= K; ++k) {
    double nk = lp_norm(dyadic_cutoff(f, k), wp);
    acc += std::pow(2.0, k * s * p) * std::pow(nk, p);
  }
  return std::pow(acc, 1.0 / p);
}

}  // namespace annulus
