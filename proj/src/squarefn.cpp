#include "annulus/squarefn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "annulus/fft.hpp"
#include "annulus/parallel.hpp"

namespace annulus {

namespace {

constexpr double kPi = 3.14159265358979323846;

double rad(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

// Accumulates sum_i w_i |symbol_i f|^2 over quadrature nodes and returns the
// pointwise square root.  Transforms once; one inverse FFT per node.
template <typename SymbolAt>
Field quadrature_square(const Field& f, const QuadratureScheme& quad,
                        SymbolAt&& symbol_at) {
  SpectralField F = forward_transform(f);
  const std::size_t N = f.grid.size();
  std::vector<std::size_t> occupied;
  double peak = 0.0;
  for (std::size_t i = 0; i < N; ++i) peak = std::max(peak, std::abs(F.coeffs[i]));
  for (std::size_t i = 0; i < N; ++i)
    if (std::abs(F.coeffs[i]) > 1e-15 * peak) occupied.push_back(i);

  // Accumulate in fixed node order (block-parallel, serial merge) so the
  // floating-point sum is independent of the thread schedule.
  std::vector<double> acc(N, 0.0);
  const std::size_t block = 32;
  std::vector<std::vector<double>> slot(block);
  for (std::size_t base = 0; base < quad.nodes.size(); base += block) {
    std::size_t cnt = std::min(block, quad.nodes.size() - base);
    parallel_for(cnt, [&](std::size_t b) {
      double t = quad.nodes[base + b];
      SpectralField piece(f.grid);
      bool any = false;
      for (std::size_t i : occupied) {
        double sym = symbol_at(f.grid.xi_vec(i), t);
        if (sym != 0.0) {
          piece.coeffs[i] = F.coeffs[i] * sym;
          any = true;
        }
      }
      slot[b].clear();
      if (!any) return;
      Field frame = inverse_transform(piece);
      slot[b].resize(N);
      for (std::size_t x = 0; x < N; ++x)
        slot[b][x] = std::norm(frame.values[x]);
    });
    for (std::size_t b = 0; b < cnt; ++b) {
      if (slot[b].empty()) continue;
      double w = quad.weights[base + b];
      for (std::size_t x = 0; x < N; ++x) acc[x] += w * slot[b][x];
    }
  }
  Field out(f.grid);
  for (std::size_t x = 0; x < N; ++x) out.values[x] = cd(std::sqrt(acc[x]), 0.0);
  return out;
}

}  // namespace

BandRange band_range(const Field& f) {
  SpectralField F = forward_transform(f);
  double peak = 0.0;
  for (const cd& c : F.coeffs) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) throw config_error("band_range: zero field");
  BandRange b{1e300, 0.0};
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
    if (std::abs(F.coeffs[i]) > 1e-13 * peak) {
      double r = rad(f.grid.xi_vec(i));
      b.lo = std::min(b.lo, r);
      b.hi = std::max(b.hi, r);
    }
  }
  return b;
}

namespace {

// Antiderivative of |2 alpha u^2 (1-u^2)^{alpha-1}|^2 / u in s = u^2:
// M(u) = 2 alpha^2 [ (1-s)^{2 alpha} / (2 alpha) - (1-s)^{2 alpha - 1} /
// (2 alpha - 1) ]; M(1) - M(0) = alpha / (2 alpha - 1).
double stein_symbol_sq_primitive(double u, double alpha) {
  double s = std::min(1.0, u * u);
  double r = 1.0 - s;
  return 2.0 * alpha * alpha *
         (std::pow(r, 2.0 * alpha) / (2.0 * alpha) -
          std::pow(r, 2.0 * alpha - 1.0) / (2.0 * alpha - 1.0));
}

}  // namespace

Field stein_square_function(const Field& f, double alpha, int nodes,
                            double* tail_bound) {
  if (!(alpha > 0.5))
    throw guard_error("stein-alpha",
                      "stein_square_function requires alpha > 1/2");
  BandRange band = band_range(f);
  const GridSpec& g = f.grid;
  if (band.lo < 4.0 * g.dxi() - 1e-12 || band.hi > g.nyquist() / 4.0 + 1e-12)
    throw guard_error("stein-band",
                      "stein_square_function: input band outside "
                      "[4*2pi/L, Nyquist/4]");
  double t_min = band.lo / 8.0, t_max = band.hi * 64.0;
  if (nodes <= 0)
    nodes = std::max(384, 64 * static_cast<int>(
                              std::ceil(std::log2(t_max / t_min))));
  QuadratureScheme quad = QuadratureScheme::geometric(t_min, t_max, nodes);

  // Each node t_i represents the geometric cell [t_i/sqrt(rho), t_i
  // sqrt(rho)); the effective symbol is the cell root-mean-square of the
  // t-derivative symbol, from the closed-form primitive of its square, so
  // the per-mode dt/t integral is exact (the edge singularity of the symbol
  // square at |xi| = t for alpha < 1 is integrated, not sampled).  The top
  // cell absorbs the t > t_max tail; t < t_min covers u > 1 where the
  // symbol vanishes, so no mass is lost and the truncation tail is 0.
  double half_log = 0.5 * std::log(quad.nodes[1] / quad.nodes[0]);
  double sqrt_rho = std::exp(half_log);
  double top_node = quad.nodes.back();
  if (tail_bound) *tail_bound = 0.0;
  return quadrature_square(
      f, quad,
      [alpha, sqrt_rho, top_node, half_log](const std::array<double, 3>& xi,
                                            double t) {
        double r = rad(xi);
        if (r == 0.0) return 0.0;
        double u_lo = (t == top_node) ? 0.0 : r / (t * sqrt_rho);
        double u_hi = r / t * sqrt_rho;
        if (u_lo >= 1.0) return 0.0;
        double mass = stein_symbol_sq_primitive(u_hi, alpha) -
                      stein_symbol_sq_primitive(u_lo, alpha);
        double cell = 2.0 * half_log;  // the node's dt/t weight
        return std::sqrt(std::max(0.0, mass) / cell);
      });
}

Field local_annulus_square(const Field& f, const RadialProfile& phi,
                           double delta, int M) {
  if (!(delta > 0.0 && delta < 0.5))
    throw config_error("local_annulus_square: delta must lie in (0,1/2)");
  if (M <= 0) M = static_cast<int>(std::ceil(8.0 / delta));
  if (M < 2.0 / delta)
    throw guard_error("t-undersampled",
                      "local_annulus_square: need M >= 2/delta nodes");
  if (2.0 > f.grid.nyquist() - 2.0 * f.grid.dxi())
    throw guard_error("aliasing",
                      "local_annulus_square: shell radius 2 too close to Nyquist");
  QuadratureScheme quad = QuadratureScheme::geometric(1.0, 2.0, M);
  return quadrature_square(
      f, quad, [&phi, delta](const std::array<double, 3>& xi, double t) {
        double w = 1.0 - (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]) /
                             (t * t);
        return phi(w / delta);
      });
}

std::vector<double> riesz_sample_set(const Field& f) {
  BandRange band = band_range(f);
  double lo = band.lo / 2.0, hi = band.hi * 2.0;
  double ratio = 1.0 + 1.0 / 64.0;
  std::vector<double> t;
  for (double v = lo; v < hi * ratio; v *= ratio) t.push_back(v);
  return t;
}

Field maximal_bochner_riesz(const Field& f, double lambda,
                            const std::vector<double>& t_samples) {
  if (t_samples.empty())
    throw config_error("maximal_bochner_riesz: empty sample set");
  SpectralField F = forward_transform(f);
  const std::size_t N = f.grid.size();
  std::vector<double> best(N, 0.0);
  std::mutex best_mutex;
  parallel_for(t_samples.size(), [&](std::size_t ti) {
    double t = t_samples[ti];
    SpectralField piece(f.grid);
    for (std::size_t i = 0; i < N; ++i) {
      if (F.coeffs[i] == cd(0.0, 0.0)) continue;
      double w = 1.0 - std::pow(rad(f.grid.xi_vec(i)) / t, 2.0);
      if (w <= 0.0) continue;
      piece.coeffs[i] =
          F.coeffs[i] * (lambda == 0.0 ? 1.0 : std::pow(w, lambda));
    }
    Field frame = inverse_transform(piece);
    std::lock_guard<std::mutex> lock(best_mutex);
    for (std::size_t x = 0; x < N; ++x)
      best[x] = std::max(best[x], std::abs(frame.values[x]));
  });
  Field out(f.grid);
  for (std::size_t x = 0; x < N; ++x) out.values[x] = cd(best[x], 0.0);
  return out;
}

// ---- spherical means ------------------------------------------------------

namespace {

// Gauss-Legendre nodes/weights on [-1,1], cached.
struct GaussRule {
  std::vector<double> x, w;
};

const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n / 2 + 1; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return cache[n] = std::move(r);
}

// m_beta(rho) = int_0^pi (sin u)^{2 beta + d - 2} cos(rho cos u) du,
// normalized to m(0) = 1; equals the transform of the unit-mass kernel.
struct SphericalTable {
  double drho = 1.0 / 16.0;
  std::vector<double> values;  // values[i] = m(i * drho)
};

double spherical_raw(double beta, int d, double rho, const GaussRule& gr) {
  double expo = 2.0 * beta + d - 2.0;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < gr.x.size(); ++i) {
    double u = kPi * 0.5 * (gr.x[i] + 1.0);
    double wgt = gr.w[i] * std::pow(std::sin(u), expo);
    num += wgt * std::cos(rho * std::cos(u));
    den += wgt;
  }
  return num / den;
}

const SphericalTable& spherical_table(double beta, int d, double rho_needed) {
  static std::map<std::pair<double, int>, SphericalTable> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  SphericalTable& t = cache[{beta, d}];
  std::size_t need = static_cast<std::size_t>(rho_needed / t.drho) + 8;
  if (t.values.size() < need) {
    const GaussRule& gr = gauss_rule(4096);
    std::size_t old = t.values.size();
    t.values.resize(need);
    std::vector<double> fresh(need - old);
    parallel_for(fresh.size(), [&](std::size_t i) {
      fresh[i] = spherical_raw(beta, d, (old + i) * t.drho, gr);
    });
    for (std::size_t i = 0; i < fresh.size(); ++i) t.values[old + i] = fresh[i];
  }
  return t;
}

double catmull_rom(double p0, double p1, double p2, double p3, double f) {
  double f2 = f * f, f3 = f2 * f;
  return 0.5 * ((2.0 * p1) + (-p0 + p2) * f +
                (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * f2 +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * f3);
}

double table_interp(const SphericalTable& t, double rho) {
  double s = rho / t.drho;
  std::size_t i = static_cast<std::size_t>(s);
  if (i + 2 >= t.values.size()) i = t.values.size() - 3;
  double f = s - i;
  // Catmull-Rom; the left neighbor at i=0 uses even symmetry m(-rho)=m(rho).
  double left = (i == 0) ? t.values[1] : t.values[i - 1];
  return catmull_rom(left, t.values[i], t.values[i + 1], t.values[i + 2], f);
}

}  // namespace

double spherical_multiplier(double beta, int d, double rho) {
  if (!(beta > 0.0)) throw config_error("spherical_multiplier: beta must be > 0");
  const SphericalTable& t = spherical_table(beta, d, std::abs(rho));
  return table_interp(t, std::abs(rho));
}

Field spherical_mean(const Field& f, double beta, double t) {
  if (!(beta > 0.0)) throw config_error("spherical_mean: beta must be > 0");
  if (!(t > 0.0)) throw config_error("spherical_mean: t must be > 0");
  const GridSpec& g = f.grid;
  double rho_max = t * g.nyquist() * std::sqrt(static_cast<double>(g.d)) + 1.0;
  spherical_table(beta, g.d, rho_max);  // fill cache once, outside the loop
  int d = g.d;
  return apply_symbol(f, [beta, d, t](const std::array<double, 3>& xi) {
    return cd(spherical_multiplier(beta, d, t * rad(xi)), 0.0);
  });
}

Field ks_square_function(const Field& f, double alpha, int nodes) {
  const GridSpec& g = f.grid;
  double beta = alpha - (g.d - 2.0) / 2.0;
  if (!(beta > 0.0))
    throw config_error("ks_square_function: alpha - (d-2)/2 must be > 0");
  BandRange band = band_range(f);
  if (band.lo < 4.0 * g.dxi() - 1e-12 || band.hi > g.nyquist() / 4.0 + 1e-12)
    throw guard_error("stein-band",
                      "ks_square_function: input band outside "
                      "[4*2pi/L, Nyquist/4]");
  double t_min = 1.0 / (band.hi * 64.0), t_max = 64.0 / band.lo;
  if (nodes <= 0)
    nodes = std::max(384, 64 * static_cast<int>(
                              std::ceil(std::log2(t_max / t_min))));
  QuadratureScheme quad = QuadratureScheme::geometric(t_min, t_max, nodes);
  double rho_max = t_max * band.hi + 2.0;
  const SphericalTable& tab = spherical_table(beta, g.d, rho_max);
  int d = g.d;
  double h = tab.drho;
  // Symbol of t d/dt A^beta_t on one mode: rho m'(rho) at rho = t |xi|.
  return quadrature_square(
      f, quad, [beta, d, h](const std::array<double, 3>& xi, double t) {
        double rho = t * rad(xi);
        if (rho < h) return 0.0;
        double mp = (spherical_multiplier(beta, d, rho + h) -
                     spherical_multiplier(beta, d, rho - h)) /
                    (2.0 * h);
        return rho * mp;
      });
}

// ---- Carleson-type square-sum check --------------------------------------

namespace {

std::array<std::array<double, 3>, 3> invert3(
    const std::array<std::array<double, 3>, 3>& A, int d, double* det_out) {
  // Pad the unused block with the identity.
  double M[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      M[i][j] = (i < d && j < d) ? A[i][j] : (i == j ? 1.0 : 0.0);
  double det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
               M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
               M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  if (std::abs(det) < 1e-14)
    throw config_error("carleson_bound_check: map A is singular");
  std::array<std::array<double, 3>, 3> inv{};
  inv[0][0] = (M[1][1] * M[2][2] - M[1][2] * M[2][1]) / det;
  inv[0][1] = (M[0][2] * M[2][1] - M[0][1] * M[2][2]) / det;
  inv[0][2] = (M[0][1] * M[1][2] - M[0][2] * M[1][1]) / det;
  inv[1][0] = (M[1][2] * M[2][0] - M[1][0] * M[2][2]) / det;
  inv[1][1] = (M[0][0] * M[2][2] - M[0][2] * M[2][0]) / det;
  inv[1][2] = (M[0][2] * M[1][0] - M[0][0] * M[1][2]) / det;
  inv[2][0] = (M[1][0] * M[2][1] - M[1][1] * M[2][0]) / det;
  inv[2][1] = (M[0][1] * M[2][0] - M[0][0] * M[2][1]) / det;
  inv[2][2] = (M[0][0] * M[1][1] - M[0][1] * M[1][0]) / det;
  *det_out = det;
  return inv;
}

}  // namespace

CarlesonResult carleson_bound_check(
    const std::vector<std::function<double(const std::array<double, 3>&)>>&
        m_list,
    const Field& f, const std::array<std::array<double, 3>, 3>& A, double s) {
  const GridSpec& g = f.grid;
  if (m_list.empty()) throw config_error("carleson_bound_check: empty symbol list");
  if (!(s >= (g.d + 1.0) / 2.0))
    throw config_error("carleson_bound_check: need s >= (d+1)/2");
  double det = 1.0;
  auto Ainv = invert3(A, g.d, &det);
  const std::size_t N = g.size();

  // Disjoint-support check on the lattice (in the precomposed variable).
  std::vector<int> owner(N, -1);
  std::vector<std::vector<double>> sym(m_list.size(),
                                       std::vector<double>(N, 0.0));
  for (std::size_t i = 0; i < N; ++i) {
    auto xi = g.xi_vec(i);
    std::array<double, 3> Atxi{0.0, 0.0, 0.0};
    for (int r = 0; r < g.d; ++r)
      for (int c = 0; c < g.d; ++c) Atxi[r] += A[c][r] * xi[c];
    for (std::size_t k = 0; k < m_list.size(); ++k) {
      double v = m_list[k](Atxi);
      sym[k][i] = v;
      if (v != 0.0) {
        if (owner[i] >= 0)
          throw guard_error("disjoint-supports",
                            "carleson_bound_check: symbol supports overlap");
        owner[i] = static_cast<int>(k);
      }
    }
  }

  SpectralField F = forward_transform(f);
  std::vector<double> acc(N, 0.0);
  for (std::size_t k = 0; k < m_list.size(); ++k) {
    SpectralField piece(g);
    bool any = false;
    for (std::size_t i = 0; i < N; ++i)
      if (sym[k][i] != 0.0 && F.coeffs[i] != cd(0.0, 0.0)) {
        piece.coeffs[i] = F.coeffs[i] * sym[k][i];
        any = true;
      }
    if (!any) continue;
    Field part = inverse_transform(piece);
    for (std::size_t x = 0; x < N; ++x) acc[x] += std::norm(part.values[x]);
  }
  CarlesonResult res;
  res.lhs = Field(g);
  for (std::size_t x = 0; x < N; ++x)
    res.lhs.values[x] = cd(std::sqrt(acc[x]), 0.0);

  // sup_k ||m_k||_{L^2_s}: sample each symbol on the frequency lattice and
  // measure its Sobolev norm on the dual grid of period 2*Nyquist.
  GridSpec sg = make_grid(g.d, g.n, 2.0 * g.nyquist());
  double sup_norm = 0.0;
  for (std::size_t k = 0; k < m_list.size(); ++k) {
    Field symbol_field(sg);
    for (std::size_t i = 0; i < N; ++i) {
      auto idx = g.unravel(i);
      std::array<int, 3> sidx{0, 0, 0};
      std::array<double, 3> xi{0.0, 0.0, 0.0};
      for (int ax = 0; ax < g.d; ++ax) {
        // identify lattice point xi with spatial sample of the dual grid
        sidx[ax] = (idx[ax] + g.n / 2) % g.n;
        xi[ax] = g.xi(idx[ax]);
      }
      std::array<double, 3> Atxi{0.0, 0.0, 0.0};
      for (int r = 0; r < g.d; ++r)
        for (int c = 0; c < g.d; ++c) Atxi[r] += A[c][r] * xi[c];
      symbol_field.values[sg.ravel(sidx)] = cd(m_list[k](Atxi), 0.0);
    }
    SpectralField S = forward_transform(symbol_field);
    double nrm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      auto x = sg.xi_vec(i);
      double x2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
      nrm += std::pow(1.0 + x2, s) * std::norm(S.coeffs[i]);
    }
    sup_norm = std::max(sup_norm, std::sqrt(nrm * std::pow(sg.L, sg.d)));
  }

  // Kernel-weighted L^2 average of f.
  double adet = std::abs(det);
  Field kernel(g);
  for (std::size_t i = 0; i < N; ++i) {
    auto y = g.x_vec(i);
    std::array<double, 3> Ay{0.0, 0.0, 0.0};
    for (int r = 0; r < g.d; ++r)
      for (int c = 0; c < g.d; ++c) Ay[r] += Ainv[r][c] * y[c];
    double q = Ay[0] * Ay[0] + Ay[1] * Ay[1] + Ay[2] * Ay[2];
    kernel.values[i] = cd(std::pow(1.0 + q, -s) / adet, 0.0);
  }
  Field f2(g);
  for (std::size_t i = 0; i < N; ++i)
    f2.values[i] = cd(std::norm(f.values[i]), 0.0);
  SpectralField K = forward_transform(kernel), G2 = forward_transform(f2);
  SpectralField conv(g);
  double Ld = std::pow(g.L, g.d);
  for (std::size_t i = 0; i < N; ++i)
    conv.coeffs[i] = Ld * K.coeffs[i] * G2.coeffs[i];
  Field convf = inverse_transform(conv);
  res.rhs = Field(g);
  double max_ratio = 0.0;
  for (std::size_t x = 0; x < N; ++x) {
    double v = sup_norm * std::sqrt(std::max(0.0, convf.values[x].real()));
    res.rhs.values[x] = cd(v, 0.0);
    double lhs = res.lhs.values[x].real();
    if (v > 0.0 && lhs > 0.0) max_ratio = std::max(max_ratio, lhs / v);
  }
  res.max_ratio = max_ratio;
  return res;
}

}  // namespace annulus
