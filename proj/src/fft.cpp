#include "annulus/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace annulus {

namespace {

std::mutex planner_mutex;  // FFTW's planner is not thread-safe

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  fftw_complex* buf = nullptr;
  std::size_t size = 0;
  ~PlanPair() {
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buf) fftw_free(buf);
  }
};

// Per-thread plan cache keyed by (d, n); plans are reused across calls.
PlanPair& plans_for(const GridSpec& g) {
  thread_local std::map<std::pair<int, int>, PlanPair> cache;
  PlanPair& p = cache[{g.d, g.n}];
  if (!p.fwd) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    p.size = g.size();
    p.buf = fftw_alloc_complex(p.size);
    int dims[3] = {g.n, g.n, g.n};
    p.fwd = fftw_plan_dft(g.d, dims, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft(g.d, dims, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  return p;
}

// Parity (-1)^{sum of per-axis indices}: accounts for the spatial origin
// offset -L/2, since e^{-i x_m xi_k} = (-1)^k e^{-2 pi i m k / n} per axis.
inline double parity(const GridSpec& g, std::size_t flat) {
  int s = 0;
  for (int ax = 0; ax < g.d; ++ax) {
    s += static_cast<int>(flat % g.n);
    flat /= g.n;
  }
  return (s & 1) ? -1.0 : 1.0;
}

}  // namespace

double c_grid(const GridSpec& g) { return std::pow(g.L, g.d / 2.0); }

SpectralField forward_transform(const Field& f) {
  if (f.values.size() != f.grid.size())
    throw config_error("forward_transform: size mismatch");
  const GridSpec& g = f.grid;
  PlanPair& p = plans_for(g);
  const std::size_t N = g.size();
  for (std::size_t i = 0; i < N; ++i) {
    p.buf[i][0] = f.values[i].real();
    p.buf[i][1] = f.values[i].imag();
  }
  fftw_execute(p.fwd);
  SpectralField F(g);
  const double scale = 1.0 / static_cast<double>(N);
  // Parity of the stored index equals parity of the wrapped frequency (n even).
  for (std::size_t i = 0; i < N; ++i) {
    double s = parity(g, i) * scale;
    F.coeffs[i] = cd(p.buf[i][0] * s, p.buf[i][1] * s);
  }
  return F;
}

Field inverse_transform(const SpectralField& F) {
  if (F.coeffs.size() != F.grid.size())
    throw config_error("inverse_transform: size mismatch");
  const GridSpec& g = F.grid;
  PlanPair& p = plans_for(g);
  const std::size_t N = g.size();
  for (std::size_t i = 0; i < N; ++i) {
    double s = parity(g, i);
    p.buf[i][0] = F.coeffs[i].real() * s;
    p.buf[i][1] = F.coeffs[i].imag() * s;
  }
  fftw_execute(p.bwd);
  Field f(g);
  for (std::size_t i = 0; i < N; ++i)
    f.values[i] = cd(p.buf[i][0], p.buf[i][1]);
  return f;
}

SpectralField dft_oracle(const Field& f) {
  const GridSpec& g = f.grid;
  const std::size_t N = g.size();
  if (N > (1u << 16))
    throw guard_error("oracle-size", "dft_oracle limited to n^d <= 2^16");
  SpectralField F(g);
  const double scale = 1.0 / static_cast<double>(N);
  for (std::size_t k = 0; k < N; ++k) {
    auto xi = g.xi_vec(k);
    cd acc(0.0, 0.0);
    for (std::size_t m = 0; m < N; ++m) {
      auto x = g.x_vec(m);
      double phase = -(x[0] * xi[0] + x[1] * xi[1] + x[2] * xi[2]);
      acc += f.values[m] * cd(std::cos(phase), std::sin(phase));
    }
    F.coeffs[k] = acc * scale;
  }
  return F;
}

}  // namespace annulus
