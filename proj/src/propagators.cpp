#include "annulus/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "annulus/fft.hpp"
#include "annulus/multipliers.hpp"
#include "annulus/norms.hpp"
#include "annulus/parallel.hpp"
#include "annulus/profiles.hpp"

namespace annulus {

namespace {

constexpr std::size_t kExactPairModes = 4096;
constexpr int kMaxTimeSamples = 65536;

std::vector<double> radial_power(const GridSpec& g, double a) {
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto xi = g.xi_vec(i);
    double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    w[i] = std::pow(r2, 0.5 * a);
  }
  return w;
}

std::vector<std::size_t> occupied_modes(const SpectralField& c) {
  double peak = 0.0;
  for (const cd& v : c.coeffs) peak = std::max(peak, std::abs(v));
  std::vector<std::size_t> occ;
  if (peak == 0.0) return occ;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i)
    if (std::abs(c.coeffs[i]) > 1e-14 * peak) occ.push_back(i);
  return occ;
}

// int_{t0}^{t1} e^{i t omega} dt = length * sinc(omega*length/2)
// * e^{i omega (t0+t1)/2}.
cd phase_integral(double omega, TimeInterval I) {
  double l = I.length();
  double z = 0.5 * omega * l;
  double sinc = std::abs(z) < 1e-4 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
  double mid = 0.5 * (I.t0 + I.t1);
  return l * sinc * std::exp(cd(0.0, omega * mid));
}

Field exact_time_l2(const SpectralField& c, double a, TimeInterval I,
                    const std::vector<std::size_t>& occ) {
  const GridSpec& g = c.grid;
  std::vector<double> omega = radial_power(g, a);
  struct Mode {
    std::array<int, 3> idx;
    double w;
    cd coef;
  };
  std::vector<Mode> modes;
  modes.reserve(occ.size());
  for (std::size_t i : occ)
    modes.push_back({g.unravel(i), omega[i], c.coeffs[i]});

  SpectralField D(g);
  const int n = g.n;
  for (const Mode& m1 : modes)
    for (const Mode& m2 : modes) {
      std::array<int, 3> diff{0, 0, 0};
      for (int ax = 0; ax < g.d; ++ax)
        diff[ax] = ((m1.idx[ax] - m2.idx[ax]) % n + n) % n;
      D.coeffs[g.ravel(diff)] +=
          m1.coef * std::conj(m2.coef) * phase_integral(m1.w - m2.w, I);
    }
  Field sq = inverse_transform(D);
  Field out(g);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = cd(std::sqrt(std::max(0.0, sq.values[i].real())), 0.0);
  return out;
}

Field sampled_time_lq(const SpectralField& c, double a, TimeInterval I,
                      double q, int M) {
  const GridSpec& g = c.grid;
  std::vector<double> omega = radial_power(g, a);
  std::vector<std::size_t> occ = occupied_modes(c);
  double wmin = 0.0, wmax = 0.0;
  if (!occ.empty()) {
    wmin = wmax = omega[occ[0]];
    for (std::size_t i : occ) {
      wmin = std::min(wmin, omega[i]);
      wmax = std::max(wmax, omega[i]);
    }
  }
  int M_need = std::max(
      256, static_cast<int>(std::ceil(8.0 * (wmax - wmin) * I.length())));
  if (M == 0) M = M_need;
  if (M < M_need || M > kMaxTimeSamples)
    throw guard_error("time-sampling",
                      "time quadrature cannot resolve the phase bandwidth");
  const std::size_t N = g.size();
  std::vector<double> acc(N, 0.0);
  double dt = I.length() / M;
  const int block = 32;
  std::vector<std::vector<double>> slot(block);
  for (int base = 0; base < M; base += block) {
    int cnt = std::min(block, M - base);
    parallel_for(cnt, [&](std::size_t b) {
      double t = I.t0 + (base + b + 0.5) * dt;
      SpectralField ct(g);
      for (std::size_t i : occ)
        ct.coeffs[i] = c.coeffs[i] * std::exp(cd(0.0, t * omega[i]));
      Field u = inverse_transform(ct);
      std::vector<double> v(N);
      for (std::size_t i = 0; i < N; ++i)
        v[i] = std::pow(std::abs(u.values[i]), q);
      slot[b] = std::move(v);
    });
    for (int b = 0; b < cnt; ++b)
      for (std::size_t i = 0; i < N; ++i) acc[i] += dt * slot[b][i];
  }
  Field out(g);
  for (std::size_t i = 0; i < N; ++i)
    out.values[i] = cd(std::pow(acc[i], 1.0 / q), 0.0);
  return out;
}

const RadialProfile& ladder_window(int d) {
  static RadialProfile phi2 = bump_profile("phi_window", BumpParams{2});
  static RadialProfile phi1 = bump_profile("phi_window", BumpParams{1});
  static RadialProfile phi3 = bump_profile("phi_window", BumpParams{3});
  if (d == 1) return phi1;
  if (d == 3) return phi3;
  return phi2;
}

}  // namespace

Field evolve(const Field& f, double a, double t) {
  if (!(a > 0.0)) throw config_error("evolve: order a must be > 0");
  SpectralField F = forward_transform(f);
  std::vector<double> omega = radial_power(f.grid, a);
  for (std::size_t i = 0; i < F.coeffs.size(); ++i)
    F.coeffs[i] *= std::exp(cd(0.0, t * omega[i]));
  return inverse_transform(F);
}

SpaceTimeField evolve_sampled(const Field& f, double a, TimeInterval I,
                              int M) {
  if (M < 2) throw config_error("evolve_sampled: need M >= 2 time samples");
  SpaceTimeField u;
  u.grid = f.grid;
  double dt = I.length() / M;
  for (int i = 0; i < M; ++i) {
    double t = I.t0 + (i + 0.5) * dt;
    u.times.push_back(t);
    u.weights.push_back(dt);
    u.frames.push_back(evolve(f, a, t));
  }
  return u;
}

Field time_l2_field(const SpectralField& c, double a, TimeInterval I) {
  std::vector<std::size_t> occ = occupied_modes(c);
  if (occ.size() <= kExactPairModes) return exact_time_l2(c, a, I, occ);
  return sampled_time_lq(c, a, I, 2.0, 0);
}

Field time_lq_field(const SpectralField& c, double a, TimeInterval I, double q,
                    int M) {
  if (!(q >= 1.0)) throw config_error("time_lq_field: q must be >= 1");
  if (q == 2.0 && M == 0) return time_l2_field(c, a, I);
  return sampled_time_lq(c, a, I, q, M);
}

double lambda_exponent(double p, int d) {
  return d * (0.5 - 1.0 / p) - 0.5;
}

double s_crit(double wp, double p, double q, double a, int d) {
  return d * (1.0 / wp - 1.0 / p) + a * (0.5 * d - d / wp - 1.0 / q);
}

double freq_localized_ratio(const Field& f, double a, int k, double p,
                            TimeInterval I) {
  if (!(p >= 2.0)) throw config_error("freq_localized_ratio: p must be >= 2");
  double denom = lp_norm(f, p);
  if (denom == 0.0) throw config_error("freq_localized_ratio: zero field");
  Field pk = dyadic_cutoff(f, k);
  Field prof = time_l2_field(forward_transform(pk), a, I);
  return lp_norm(prof, p) / denom;
}

double sobolev_ratio_thm14(const Field& f, double a, double p,
                           TimeInterval I) {
  if (lp_norm(f, 2.0) == 0.0)
    throw config_error("sobolev_ratio_thm14: zero field");
  double s = a * lambda_exponent(p, f.grid.d);
  Field prof = time_l2_field(forward_transform(f), a, I);
  Field bessel = apply_symbol(f, [s](const std::array<double, 3>& xi) {
    double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    return cd(std::pow(1.0 + r2, 0.5 * s), 0.0);
  });
  return lp_norm(prof, p) / lp_norm(bessel, p);
}

double tk_scale(double a, double wp0, double p0, double q, int k, int d) {
  return std::pow(2.0, k * (a - 1.0) * d * (1.0 / wp0 - 1.0 / p0)) *
         std::pow(2.0, -k * a * (0.5 * d - 1.0 / q));
}

AppendixATable appendix_constant_A(double a, double wp0, double p0, double q,
                                   const std::vector<int>& k_range,
                                   const std::vector<Field>& ensemble,
                                   TimeInterval I, int M) {
  if (k_range.empty() || ensemble.empty())
    throw config_error("appendix_constant_A: empty sweep");
  AppendixATable table;
  for (int k : k_range) {
    double best = 0.0;
    for (const Field& f : ensemble) {
      double denom = lp_norm(f, wp0);
      if (denom == 0.0) continue;
      Field pk = dyadic_cutoff(f, k);
      SpectralField F = forward_transform(pk);
      double scale = tk_scale(a, wp0, p0, q, k, f.grid.d);
      for (cd& c : F.coeffs) c *= scale;
      Field prof = time_lq_field(F, a, I, q, M);
      best = std::max(best, lp_norm(prof, p0) / denom);
    }
    double value =
        std::pow(2.0, k * a * ensemble.front().grid.d / p0) * best;
    table.rows.push_back({k, value});
    table.sup = std::max(table.sup, value);
  }
  return table;
}

double appendix_tail_B(double a, int k, double C1, double wp1, double q,
                       const GridSpec& grid, TimeInterval I, int M,
                       bool* region_empty) {
  if (region_empty) *region_empty = false;
  if (std::ldexp(1.0, k + 1) >= grid.nyquist())
    throw guard_error("band-ladder",
                      "appendix_tail_B: band kernel exceeds the lattice");
  const RadialProfile& phi = ladder_window(grid.d);
  SpectralField c(grid);
  double amp = std::pow(grid.L, -grid.d);
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    auto xi = grid.xi_vec(i);
    double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    c.coeffs[i] = cd(amp * phi(std::ldexp(r, -k)), 0.0);
  }
  Field bq = time_lq_field(c, a, I, q, M);
  double X = C1 * std::pow(2.0, k * (a - 1.0));
  double corner = 0.5 * grid.L * std::sqrt(static_cast<double>(grid.d));
  if (X > corner) {
    if (region_empty) *region_empty = true;
    return 0.0;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < bq.values.size(); ++i) {
    auto x = grid.x_vec(i);
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r >= X) acc += std::pow(bq.values[i].real(), wp1);
  }
  return acc * grid.cell_volume();
}

double dyadic_combine_ratio(const std::vector<Field>& fields,
                            const std::vector<int>& k_list, double a, double p,
                            double wp, double q, double r, double wp0,
                            double p0, TimeInterval I, int M) {
  if (fields.empty() || fields.size() != k_list.size())
    throw config_error("dyadic_combine_ratio: band list mismatch");
  const GridSpec& g = fields[0].grid;
  const std::size_t N = g.size();
  std::vector<double> acc(N, 0.0);
  double denom_acc = 0.0;

  static double bump_grad = [] {
    double m = 0.0;
    for (double u = -0.999; u < 0.999; u += 1e-4) {
      double der = (canonical_bump(u + 5e-6) - canonical_bump(u - 5e-6)) / 1e-5;
      m = std::max(m, std::abs(der));
    }
    return m;
  }();
  double bump_max = canonical_bump(0.0);

  for (std::size_t bi = 0; bi < fields.size(); ++bi) {
    const Field& f = fields[bi];
    if (!(f.grid == g))
      throw config_error("dyadic_combine_ratio: grid mismatch");
    int k = k_list[bi];
    if (std::ldexp(1.0, -k) < 2.0 * g.dx())
      throw guard_error("mollifier-resolution",
                        "dyadic_combine_ratio: mollifier support below grid "
                        "resolution");
    denom_acc += std::pow(lp_norm(f, wp), p);
    Field pk = dyadic_cutoff(f, k);
    SpectralField F = forward_transform(pk);
    double scale = tk_scale(a, wp0, p0, q, k, g.d);
    for (cd& cc : F.coeffs) cc *= scale;

    // Mollifier at scale 2^{-k}, saturating |rho| + 2^{-k}|grad rho| <= 2^{kd}.
    Field rho(g);
    double ck =
        0.95 * std::pow(2.0, k * g.d) / (bump_max + bump_grad);
    for (std::size_t i = 0; i < N; ++i) {
      auto x = g.x_vec(i);
      double rr = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      rho.values[i] = cd(ck * canonical_bump(std::ldexp(rr, k)), 0.0);
    }
    SpectralField Rhat = forward_transform(rho);
    double Ld = std::pow(g.L, g.d);
    for (std::size_t i = 0; i < N; ++i) F.coeffs[i] *= Ld * Rhat.coeffs[i];

    Field prof = time_lq_field(F, a, I, q, M);
    double wgt = std::pow(2.0, k * a * g.d * r / p);
    for (std::size_t i = 0; i < N; ++i)
      acc[i] += wgt * std::pow(prof.values[i].real(), r);
  }
  Field lhs_field(g);
  for (std::size_t i = 0; i < N; ++i)
    lhs_field.values[i] = cd(std::pow(acc[i], 1.0 / r), 0.0);
  double rhs = std::pow(denom_acc, 1.0 / p);
  return rhs > 0.0 ? lp_norm(lhs_field, p) / rhs : 0.0;
}

ScalingReport gamma_a_table(double wp, double p, double q, double a,
                            const std::vector<double>& R_list,
                            const std::vector<Field>& ensemble, TimeInterval I,
                            int M) {
  if (R_list.empty() || ensemble.empty())
    throw config_error("gamma_a_table: empty sweep");
  int d = ensemble[0].grid.d;
  const RadialProfile& phi = ladder_window(d);
  double sc = s_crit(wp, p, q, a, d);
  ScalingReport report;
  report.sweep_name = "R";
  report.theory_exponent = 0.0;
  report.label = "empirical lower bound";
  for (double R : R_list) {
    double best = 0.0;
    for (const Field& f : ensemble) {
      double denom = lp_norm(f, wp);
      if (denom == 0.0) continue;
      Field g = apply_radial_multiplier(f, phi, R);
      Field prof = time_lq_field(forward_transform(g), a, I, q, M);
      best = std::max(best, lp_norm(prof, p) / denom);
    }
    report.rows.push_back({R, std::pow(R, sc) * best});
  }
  fit_scaling(report);
  return report;
}

double derivative_trading_check(const Field& g, double a, int k, int j,
                                double p, double q, double wp, double T,
                                int n_t) {
  if (g.grid.d != 1)
    throw config_error("derivative_trading_check: expects a 1-d field");
  double denom = lp_norm(g, wp);
  if (denom == 0.0) return 0.0;
  GridSpec tg = make_grid(1, n_t, T);
  Field pk = dyadic_cutoff(g, k);
  SpectralField F = forward_transform(pk);
  std::vector<double> omega = radial_power(g.grid, a);
  double wmax = std::pow(std::ldexp(1.0, k + 1), a);
  if (wmax > 0.5 * tg.nyquist())
    throw guard_error("time-sampling",
                      "derivative_trading_check: t-grid cannot resolve the "
                      "evolution bandwidth");
  const int nx = g.grid.n;
  // u(x, t_m) with the smooth window in t, then the dyadic t-band per x.
  std::vector<std::vector<cd>> rows(n_t);
  parallel_for(n_t, [&](std::size_t m) {
    double t = tg.x(static_cast<int>(m));
    double window = canonical_bump(4.0 * t / T);
    SpectralField ct(g.grid);
    if (window != 0.0)
      for (std::size_t i = 0; i < ct.coeffs.size(); ++i)
        ct.coeffs[i] = F.coeffs[i] * std::exp(cd(0.0, t * omega[i]));
    Field u = inverse_transform(ct);
    std::vector<cd> row(nx);
    for (int x = 0; x < nx; ++x) row[x] = window * u.values[x];
    rows[m] = std::move(row);
  });
  Field inner(g.grid);
  for (int x = 0; x < nx; ++x) {
    Field line(tg);
    for (int m = 0; m < n_t; ++m) line.values[m] = rows[m][x];
    Field cut = dyadic_cutoff(line, j);
    inner.values[x] = cd(lp_norm(cut, q), 0.0);
  }
  return lp_norm(inner, p) / denom;
}

}  // namespace annulus
