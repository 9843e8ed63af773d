#include "annulus/restriction.hpp"

#include <algorithm>
#include <cmath>

#include "annulus/norms.hpp"
#include "annulus/parallel.hpp"

namespace annulus {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Iterated-difference certificate over a uniform superlattice.  Orders above
// 8 are outside what double-precision finite differences can resolve, so the
// certificate samples min(N0, 8) and records that as its effective order.
struct CertLattice {
  std::vector<double> values;
  std::array<int, 3> dims{1, 1, 1};
  std::array<double, 3> step{1.0, 1.0, 1.0};
  int nv = 1;
};

std::vector<double> diff_axis(const std::vector<double>& v,
                              std::array<int, 3>& dims, int axis) {
  std::array<int, 3> nd = dims;
  nd[axis] -= 1;
  std::vector<double> out(static_cast<std::size_t>(nd[0]) * nd[1] * nd[2]);
  auto at = [](const std::array<int, 3>& d, int i, int j, int k) {
    return (static_cast<std::size_t>(i) * d[1] + j) * d[2] + k;
  };
  for (int i = 0; i < nd[0]; ++i)
    for (int j = 0; j < nd[1]; ++j)
      for (int k = 0; k < nd[2]; ++k) {
        int i2 = i + (axis == 0), j2 = j + (axis == 1), k2 = k + (axis == 2);
        out[at(nd, i, j, k)] = v[at(dims, i2, j2, k2)] - v[at(dims, i, j, k)];
      }
  dims = nd;
  return out;
}

void cert_walk(const CertLattice& lat, const std::vector<double>& v,
               std::array<int, 3> dims, int axis, int left, double denom,
               double* sup) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (axis == lat.nv) {
    *sup = std::max(*sup, peak / denom);
    return;
  }
  cert_walk(lat, v, dims, axis + 1, left, denom, sup);
  std::vector<double> cur = v;
  std::array<int, 3> cd = dims;
  for (int m = 1; m <= left && cd[axis] > 1; ++m) {
    cur = diff_axis(cur, cd, axis);
    cert_walk(lat, cur, cd, axis + 1, left - m,
              denom * std::pow(lat.step[axis], m), sup);
  }
}

}  // namespace

EllipticPhase make_elliptic_phase(
    int d, double b,
    const std::function<double(const std::array<double, 2>&, double)>& h,
    double eps, int N0) {
  if (d != 2 && d != 3) throw config_error("make_elliptic_phase: d in {2,3}");
  if (!(b > 0.0) || !(eps > 0.0))
    throw config_error("make_elliptic_phase: b, eps must be > 0");
  EllipticPhase ph;
  ph.d = d;
  ph.b = b;
  ph.eps = eps;
  ph.N0 = N0 > 0 ? N0 : 10 * d;
  ph.h = h ? h : [](const std::array<double, 2>&, double) { return 0.0; };

  int order = std::min(ph.N0, 8);
  CertLattice lat;
  lat.nv = d;  // (d-1) omega variables plus s
  const int pts = 17;
  for (int ax = 0; ax < lat.nv; ++ax) {
    lat.dims[ax] = pts;
    double width = (ax < d - 1) ? 2.0 * b : 1.0;
    lat.step[ax] = width / (pts - 1);
  }
  lat.values.resize(static_cast<std::size_t>(lat.dims[0]) * lat.dims[1] *
                    lat.dims[2]);
  for (int i = 0; i < lat.dims[0]; ++i)
    for (int j = 0; j < lat.dims[1]; ++j)
      for (int k = 0; k < lat.dims[2]; ++k) {
        std::array<double, 3> v{-0.5 * 2.0 * b + i * lat.step[0],
                                d == 3 ? -b + j * lat.step[1] : 0.0, 0.0};
        double s;
        if (d == 2) {
          s = -0.5 + j * lat.step[1];
        } else {
          s = -0.5 + k * lat.step[2];
        }
        std::array<double, 2> omega{v[0], d == 3 ? v[1] : 0.0};
        lat.values[(static_cast<std::size_t>(i) * lat.dims[1] + j) *
                       lat.dims[2] +
                   k] = ph.h(omega, s);
      }
  double sup = 0.0;
  cert_walk(lat, lat.values, lat.dims, 0, order, 1.0, &sup);
  ph.certified_sup = sup;
  if (sup > eps)
    throw config_error(
        "make_elliptic_phase: sampled derivative bound exceeds eps");
  return ph;
}

namespace {

struct OmegaLattice {
  std::vector<std::array<double, 2>> points;
  double cell = 0.0;  // (d-1)-dim cell measure
  double dw = 0.0;    // spacing per axis
};

OmegaLattice omega_lattice(const EllipticPhase& ph, int per_unit) {
  OmegaLattice lat;
  int M = static_cast<int>(std::ceil(2.0 * ph.b * per_unit));
  lat.dw = 2.0 * ph.b / M;
  if (ph.d == 2) {
    lat.cell = lat.dw;
    for (int i = 0; i < M; ++i)
      lat.points.push_back({-ph.b + (i + 0.5) * lat.dw, 0.0});
  } else {
    lat.cell = lat.dw * lat.dw;
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j)
        lat.points.push_back(
            {-ph.b + (i + 0.5) * lat.dw, -ph.b + (j + 0.5) * lat.dw});
  }
  return lat;
}

void check_phase_resolution(const EllipticPhase& ph, const GridSpec& grid,
                            double dw) {
  double xprime = 0.5 * grid.L * std::sqrt(ph.d - 1.0);
  double xd = 0.5 * grid.L;
  double grad = ph.b * std::sqrt(ph.d - 1.0) + ph.eps;
  double variation = dw * std::sqrt(ph.d - 1.0) * (xprime + xd * grad);
  if (variation > kPi / 4.0)
    throw guard_error("omega-resolution",
                      "extension_operator: phase varies more than pi/4 per "
                      "omega cell over the x window");
}

}  // namespace

Field extension_operator(const SurfaceDensity& F, const EllipticPhase& phase,
                         const GridSpec& grid, int omega_per_unit) {
  if (grid.d != phase.d)
    throw config_error("extension_operator: grid dimension mismatch");
  if (omega_per_unit < 64)
    throw config_error("extension_operator: need >= 64 omega points per unit");
  OmegaLattice lat = omega_lattice(phase, omega_per_unit);
  check_phase_resolution(phase, grid, lat.dw);

  struct Wave {
    std::array<double, 2> omega;
    double gamma;  // |omega|^2/2 + h(omega, 0)
    cd amp;
  };
  std::vector<Wave> waves;
  for (const auto& w : lat.points) {
    cd amp = F(w) * lat.cell;
    if (amp == cd(0.0, 0.0)) continue;
    double r2 = w[0] * w[0] + w[1] * w[1];
    waves.push_back({w, 0.5 * r2 + phase.h(w, 0.0), amp});
  }
  Field out(grid);
  parallel_for(grid.size(), [&](std::size_t i) {
    auto x = grid.x_vec(i);
    double xd = x[grid.d - 1];
    cd acc(0.0, 0.0);
    for (const Wave& w : waves) {
      double ph = x[0] * w.omega[0] + w.gamma * xd;
      if (grid.d == 3) ph += x[1] * w.omega[1];
      acc += w.amp * std::exp(cd(0.0, ph));
    }
    out.values[i] = acc;
  });
  return out;
}

double bilinear_extension_ratio(const SurfaceDensity& F1,
                                const SurfaceDensity& F2,
                                const EllipticPhase& phase, double p,
                                const GridSpec& grid, int omega_per_unit) {
  if (!(p > 2.0 + 4.0 / phase.d))
    throw config_error("bilinear_extension_ratio: p must exceed 2+4/d");
  OmegaLattice lat = omega_lattice(phase, omega_per_unit);
  std::vector<std::array<double, 2>> s1, s2;
  double n1 = 0.0, n2 = 0.0;
  for (const auto& w : lat.points) {
    double a1 = std::abs(F1(w)), a2 = std::abs(F2(w));
    if (a1 > 0.0) s1.push_back(w);
    if (a2 > 0.0) s2.push_back(w);
    n1 += a1 * a1 * lat.cell;
    n2 += a2 * a2 * lat.cell;
  }
  if (n1 == 0.0 || n2 == 0.0) return 0.0;
  double dist2 = 1e300;
  for (const auto& a : s1)
    for (const auto& b : s2) {
      double dx = a[0] - b[0], dy = a[1] - b[1];
      dist2 = std::min(dist2, dx * dx + dy * dy);
    }
  if (std::sqrt(dist2) < 0.5)
    throw guard_error("separation",
                      "bilinear_extension_ratio: support distance < 1/2");
  Field e1 = extension_operator(F1, phase, grid, omega_per_unit);
  Field e2 = extension_operator(F2, phase, grid, omega_per_unit);
  Field prod(grid);
  for (std::size_t i = 0; i < prod.values.size(); ++i)
    prod.values[i] = e1.values[i] * e2.values[i];

  double half = p / 2.0;
  double shell_edge = 0.9 * 0.5 * grid.L;
  double total = 0.0, shell = 0.0;
  for (std::size_t i = 0; i < prod.values.size(); ++i) {
    double m = std::pow(std::abs(prod.values[i]), half);
    total += m;
    auto x = grid.x_vec(i);
    bool boundary = false;
    for (int ax = 0; ax < grid.d; ++ax)
      if (std::abs(x[ax]) >= shell_edge) boundary = true;
    if (boundary) shell += m;
  }
  if (total > 0.0 && shell >= 0.05 * total)
    throw guard_error("window",
                      "bilinear_extension_ratio: boundary shell carries >= 5% "
                      "of the norm mass");
  double lhs = std::pow(total * grid.cell_volume(), 1.0 / half);
  return lhs / (std::sqrt(n1) * std::sqrt(n2));
}

double rescaled_phase_residual_at(int j, const std::array<double, 3>& eta,
                                  double s, int d) {
  double scale = std::ldexp(1.0, -2 * j);
  double etad = eta[d - 1];
  double perp2 = 0.0;
  for (int ax = 0; ax < d - 1; ++ax) {
    double c = std::ldexp(eta[ax], -j);
    perp2 += c * c;
  }
  double last = 1.0 - scale * etad;
  double denom = 1.0 + scale * s;
  double lhs = 1.0 - (last * last + perp2) / (denom * denom);
  double prime2 = 0.0;
  for (int ax = 0; ax < d - 1; ++ax) prime2 += eta[ax] * eta[ax];
  double lead = 2.0 * scale * (s + etad - 0.5 * prime2);
  return std::ldexp(lhs - lead, 4 * j);
}

double rescaled_phase_residual(const Direction& theta1, const Direction& theta2,
                               int d, int j, double t0,
                               const std::vector<double>& s_samples,
                               double eta_window) {
  double dd = 0.0;
  for (int ax = 0; ax < d; ++ax) {
    double c = theta1.theta[ax] - theta2.theta[ax];
    dd += c * c;
  }
  double sep = std::sqrt(dd);
  double u = std::ldexp(1.0, -j);
  if (sep < 0.5 * u || sep > 8.0 * u)
    throw config_error(
        "rescaled_phase_residual: direction separation outside [2^{-j-1}, "
        "8*2^{-j}]");
  if (!(t0 >= 1.0 && t0 <= 2.0))
    throw config_error("rescaled_phase_residual: t0 must lie in [1,2]");
  if (s_samples.empty() || !(eta_window > 0.0))
    throw config_error("rescaled_phase_residual: empty sample window");

  const int pts = 17;
  double hstep = 2.0 * eta_window / (pts - 1);
  int nx = pts, ny = d >= 2 ? pts : 1, nz = d == 3 ? pts : 1;
  double sup = 0.0;
  for (double s : s_samples) {
    if (std::abs(s) > 0.5)
      throw config_error("rescaled_phase_residual: |s| must be <= 1/2");
    std::vector<double> r(static_cast<std::size_t>(nx) * ny * nz);
    auto at = [&](int i, int jj, int k) {
      return (static_cast<std::size_t>(i) * ny + jj) * nz + k;
    };
    for (int i = 0; i < nx; ++i)
      for (int jj = 0; jj < ny; ++jj)
        for (int k = 0; k < nz; ++k) {
          std::array<double, 3> eta{-eta_window + i * hstep,
                                    d >= 2 ? -eta_window + jj * hstep : 0.0,
                                    d == 3 ? -eta_window + k * hstep : 0.0};
          r[at(i, jj, k)] = rescaled_phase_residual_at(j, eta, s, d);
        }
    for (std::size_t i = 0; i < r.size(); ++i)
      sup = std::max(sup, std::abs(r[i]));
    // first and second central differences in eta over interior points
    std::array<int, 3> dims{nx, ny, nz};
    auto idx = [&](const std::array<int, 3>& q) { return at(q[0], q[1], q[2]); };
    for (int i = 0; i < nx; ++i)
      for (int jj = 0; jj < ny; ++jj)
        for (int k = 0; k < nz; ++k) {
          std::array<int, 3> q{i, jj, k};
          for (int a1 = 0; a1 < d; ++a1) {
            if (q[a1] < 1 || q[a1] + 1 >= dims[a1]) continue;
            std::array<int, 3> qp = q, qm = q;
            qp[a1] += 1;
            qm[a1] -= 1;
            sup = std::max(sup,
                           std::abs(r[idx(qp)] - r[idx(qm)]) / (2 * hstep));
            sup = std::max(sup, std::abs(r[idx(qp)] - 2 * r[idx(q)] +
                                         r[idx(qm)]) /
                                    (hstep * hstep));
            for (int a2 = a1 + 1; a2 < d; ++a2) {
              if (q[a2] < 1 || q[a2] + 1 >= dims[a2]) continue;
              std::array<int, 3> pp = qp, pm = qp, mp = qm, mm = qm;
              pp[a2] += 1;
              pm[a2] -= 1;
              mp[a2] += 1;
              mm[a2] -= 1;
              sup = std::max(sup, std::abs(r[idx(pp)] - r[idx(pm)] -
                                           r[idx(mp)] + r[idx(mm)]) /
                                      (4 * hstep * hstep));
            }
          }
        }
  }
  return sup;
}

}  // namespace annulus
