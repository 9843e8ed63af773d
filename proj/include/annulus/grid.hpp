#pragma once
#include <array>
#include <cstddef>
#include <cstdint>

#include "annulus/errors.hpp"

namespace annulus {

// Periodic grid on [-L/2, L/2)^d with n samples per axis.
// Spatial samples sit at x_m = -L/2 + m*dx; the frequency lattice is
// xi_k = 2*pi*k/L for k in {-n/2, ..., n/2-1} per axis (stored in FFT
// wrap-around order: index m <-> k = m for m < n/2, k = m - n otherwise).
struct GridSpec {
  int d = 1;
  int n = 8;
  double L = 1.0;

  std::size_t size() const {
    std::size_t s = 1;
    for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(n);
    return s;
  }
  double dx() const { return L / n; }
  double dxi() const { return 2.0 * 3.14159265358979323846 / L; }
  // Nyquist radius: largest resolved frequency magnitude per axis.
  double nyquist() const { return 3.14159265358979323846 * n / L; }
  double cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < d; ++i) v *= dx();
    return v;
  }

  // Per-axis integer frequency for storage index m in [0,n).
  int freq_index(int m) const { return m < n / 2 ? m : m - n; }
  double xi(int m) const { return dxi() * freq_index(m); }
  double x(int m) const { return -L / 2.0 + dx() * m; }

  // Decompose a flat row-major index into per-axis indices.
  std::array<int, 3> unravel(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int ax = d - 1; ax >= 0; --ax) {
      idx[ax] = static_cast<int>(flat % n);
      flat /= n;
    }
    return idx;
  }
  std::size_t ravel(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    for (int ax = 0; ax < d; ++ax) {
      int m = idx[ax] % n;
      if (m < 0) m += n;
      flat = flat * n + static_cast<std::size_t>(m);
    }
    return flat;
  }

  // Frequency vector (padded with zeros above dimension d).
  std::array<double, 3> xi_vec(std::size_t flat) const {
    auto idx = unravel(flat);
    std::array<double, 3> v{0.0, 0.0, 0.0};
    for (int ax = 0; ax < d; ++ax) v[ax] = xi(idx[ax]);
    return v;
  }
  std::array<double, 3> x_vec(std::size_t flat) const {
    auto idx = unravel(flat);
    std::array<double, 3> v{0.0, 0.0, 0.0};
    for (int ax = 0; ax < d; ++ax) v[ax] = x(idx[ax]);
    return v;
  }

  bool operator==(const GridSpec& o) const {
    return d == o.d && n == o.n && L == o.L;
  }
};

GridSpec make_grid(int d, int n, double L);

}  // namespace annulus
