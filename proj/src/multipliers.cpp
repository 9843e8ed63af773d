#include "annulus/multipliers.hpp"

#include <cmath>

#include "annulus/fft.hpp"

namespace annulus {

namespace {

constexpr double kEpsSing = 1e-12;

double norm3(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

const RadialProfile& chi_profile() {
  static const RadialProfile chi = bump_profile("chi_dyadic", {});
  return chi;
}
const RadialProfile& chi_reproducing_profile() {
  static const RadialProfile chit = bump_profile("chi_reproducing", {});
  return chit;
}

}  // namespace

SpectralField apply_symbol_spectral(const SpectralField& F,
                                    const SymbolFn& symbol) {
  SpectralField out(F.grid);
  const std::size_t N = F.grid.size();
  for (std::size_t i = 0; i < N; ++i) {
    if (F.coeffs[i] == cd(0.0, 0.0)) continue;
    out.coeffs[i] = F.coeffs[i] * symbol(F.grid.xi_vec(i));
  }
  return out;
}

Field apply_symbol(const Field& f, const SymbolFn& symbol) {
  return inverse_transform(apply_symbol_spectral(forward_transform(f), symbol));
}

void check_alias_guard(const GridSpec& g, const SymbolFn& symbol,
                       const char* op_name) {
  // Outermost two frequency shells per axis.
  const int n = g.n;
  bool any_large = false, any_small = false;
  auto probe = [&](const std::array<int, 3>& idx) {
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    for (int ax = 0; ax < g.d; ++ax) xi[ax] = g.xi(idx[ax]);
    double a = std::abs(symbol(xi));
    (a > 1e-8 ? any_large : any_small) = true;
  };
  const int guard[5] = {n / 2 - 2, n / 2 - 1, n / 2, n / 2 + 1, n / 2 + 2};
  if (g.d == 1) {
    for (int gv : guard) probe({gv % n, 0, 0});
  } else if (g.d == 2) {
    for (int gv : guard)
      for (int m = 0; m < n; ++m) {
        probe({gv % n, m, 0});
        probe({m, gv % n, 0});
      }
  } else {
    for (int gv : guard)
      for (int m0 = 0; m0 < n; m0 += 3)
        for (int m1 = 0; m1 < n; m1 += 3) {
          probe({gv % n, m0, m1});
          probe({m0, gv % n, m1});
          probe({m0, m1, gv % n});
        }
  }
  if (any_large && any_small)
    throw guard_error("aliasing",
                      std::string(op_name) +
                          ": symbol support edge falls in the Nyquist guard band");
}

Field apply_radial_multiplier(const Field& f, const RadialProfile& m,
                              double t) {
  if (!(t > 0.0)) throw config_error("apply_radial_multiplier: t must be > 0");
  SymbolFn sym = [&m, t](const std::array<double, 3>& xi) {
    return cd(m(norm3(xi) / t), 0.0);
  };
  check_alias_guard(f.grid, sym, "apply_radial_multiplier");
  return apply_symbol(f, sym);
}

Field bochner_riesz(const Field& f, double alpha, double t) {
  if (!(t > 0.0)) throw config_error("bochner_riesz: t must be > 0");
  if (alpha < 0.0) throw config_error("bochner_riesz: alpha must be >= 0");
  return apply_symbol(f, [alpha, t](const std::array<double, 3>& xi) {
    double w = 1.0 - (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) / (t * t);
    if (w <= 0.0) return cd(0.0, 0.0);
    return cd(alpha == 0.0 ? 1.0 : std::pow(w, alpha), 0.0);
  });
}

double stein_symbol(double u, double alpha) {
  double w = 1.0 - u * u;
  if (w <= kEpsSing) return 0.0;
  return 2.0 * alpha * u * u * std::pow(w, alpha - 1.0);
}

Field stein_derivative_piece(const Field& f, double alpha, double t) {
  if (!(t > 0.0)) throw config_error("stein_derivative_piece: t must be > 0");
  if (!(alpha > 0.5))
    throw guard_error("stein-alpha",
                      "stein_derivative_piece requires alpha > 1/2");
  return apply_symbol(f, [alpha, t](const std::array<double, 3>& xi) {
    return cd(stein_symbol(norm3(xi) / t, alpha), 0.0);
  });
}

Field thin_annulus(const Field& f, const RadialProfile& phi, double delta,
                   double t) {
  if (!(delta > 0.0 && delta < 0.5))
    throw config_error("thin_annulus: delta must lie in (0,1/2)");
  if (!(t > 0.0)) throw config_error("thin_annulus: t must be > 0");
  if (phi.support_lo < 0.5 - 1e-9 || phi.support_hi > 2.0 + 1e-9)
    throw config_error("thin_annulus: phi must be supported in (1/2,2)");
  // Symbol support is inside |xi| < t; require the ball inside the guard band.
  if (t > f.grid.nyquist() - 2.0 * f.grid.dxi())
    throw guard_error("aliasing", "thin_annulus: shell radius too close to Nyquist");
  return apply_symbol(f, [&phi, delta, t](const std::array<double, 3>& xi) {
    double w = 1.0 - (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) / (t * t);
    return cd(phi(w / delta), 0.0);
  });
}

Field generalized_annulus(
    const Field& f, const RadialProfile& phi,
    const std::function<double(const std::array<double, 3>&, double)>& beta,
    double delta, double t) {
  if (!(delta > 0.0 && delta < 0.5))
    throw config_error("generalized_annulus: delta must lie in (0,1/2)");
  if (t > f.grid.nyquist() - 2.0 * f.grid.dxi())
    throw guard_error("aliasing",
                      "generalized_annulus: shell radius too close to Nyquist");
  const double eps2 = 1.0 / 256.0;  // default smallness constant 2^{-8}
  const GridSpec& g = f.grid;
  const std::size_t N = g.size();
  for (std::size_t i = 0; i < N; ++i) {
    auto xi = g.xi_vec(i);
    double w = 1.0 - (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) / (t * t);
    if (std::abs(w) < 1e-9 || w < -1.0) continue;
    double b = beta(xi, t);
    if (!(std::abs(b) >= 2.0 * eps2 && std::abs(b) <= 1.0 / (2.0 * eps2)))
      throw guard_error("beta-window",
                        "generalized_annulus: beta leaves the allowed window");
  }
  return apply_symbol(f, [&phi, &beta, delta, t](const std::array<double, 3>& xi) {
    double w = 1.0 - (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) / (t * t);
    if (w == 0.0) return cd(0.0, 0.0);  // phi(0) = 0 regardless of beta
    return cd(phi(w * beta(xi, t) / delta), 0.0);
  });
}

int max_band(const GridSpec& g) {
  return static_cast<int>(std::floor(std::log2(g.nyquist() / 4.0)));
}

int min_band(const GridSpec& g) {
  return static_cast<int>(std::ceil(std::log2(2.0 * g.dxi())));
}

Field dyadic_cutoff(const Field& f, int n) {
  // Band support 2^n (5/8, 15/8); keep it inside the guard band.
  if (std::ldexp(1.875, n) > f.grid.nyquist() - 2.0 * f.grid.dxi())
    throw guard_error("aliasing", "dyadic_cutoff: band exceeds Nyquist guard");
  const RadialProfile& chi = chi_profile();
  return apply_symbol(f, [&chi, n](const std::array<double, 3>& xi) {
    return cd(chi(std::ldexp(norm3(xi), -n)), 0.0);
  });
}

Field reproducing_cutoff(const Field& f, int n) {
  if (std::ldexp(2.0, n) > f.grid.nyquist() - 2.0 * f.grid.dxi())
    throw guard_error("aliasing",
                      "reproducing_cutoff: band exceeds Nyquist guard");
  const RadialProfile& chit = chi_reproducing_profile();
  return apply_symbol(f, [&chit, n](const std::array<double, 3>& xi) {
    return cd(chit(std::ldexp(norm3(xi), -n)), 0.0);
  });
}

Field low_pass_block(const Field& f) {
  const RadialProfile& chi = chi_profile();
  return apply_symbol(f, [&chi](const std::array<double, 3>& xi) {
    double r = norm3(xi);
    if (r == 0.0) return cd(1.0, 0.0);
    double s = 0.0;
    for (int k = 1; std::ldexp(0.625, k) < r * 2.0; ++k) {
      s += chi(std::ldexp(r, -k));
      if (k > 64) break;
    }
    return cd(1.0 - s, 0.0);
  });
}

}  // namespace annulus
