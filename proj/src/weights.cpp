#include "annulus/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>

#include "annulus/fft.hpp"
#include "annulus/multipliers.hpp"
#include "annulus/parallel.hpp"
#include "annulus/profiles.hpp"

namespace annulus {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> real_part(const Field& f) {
  std::vector<double> v(f.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.values[i].real();
  return v;
}

// In-place periodic box sum of half-width h cells along the given axis.
void box_sum_axis(std::vector<double>& v, const GridSpec& g, int h, int axis) {
  const int n = g.n;
  std::size_t stride = 1;
  for (int ax = g.d - 1; ax > axis; --ax) stride *= n;
  std::size_t lines = v.size() / n;
  std::vector<double> line(n), out(n);
  for (std::size_t ln = 0; ln < lines; ++ln) {
    // Base index of this line: distribute ln over the non-axis dimensions.
    std::size_t inner = ln % stride;
    std::size_t outer = ln / stride;
    std::size_t base = outer * stride * n + inner;
    for (int i = 0; i < n; ++i) line[i] = v[base + i * stride];
    double acc = 0.0;
    for (int o = -h; o <= h; ++o) acc += line[((o % n) + n) % n];
    for (int i = 0; i < n; ++i) {
      out[i] = acc;
      int drop = ((i - h) % n + n) % n;
      int add = ((i + h + 1) % n + n) % n;
      acc += line[add] - line[drop];
    }
    for (int i = 0; i < n; ++i) v[base + i * stride] = out[i];
  }
}

double pow_int(double b, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Orthonormal frame with axis 0 along theta.
std::array<std::array<double, 3>, 3> frame_of(const Direction& theta, int d) {
  std::array<std::array<double, 3>, 3> F{};
  F[0] = theta.theta;
  if (d == 2) {
    F[1] = {-theta.theta[1], theta.theta[0], 0.0};
    F[2] = {0.0, 0.0, 1.0};
  } else {
    std::array<double, 3> a{1.0, 0.0, 0.0};
    if (std::abs(theta.theta[0]) > 0.9) a = {0.0, 1.0, 0.0};
    // e1 = normalize(a - <a,theta> theta), e2 = theta x e1
    double dot = a[0] * F[0][0] + a[1] * F[0][1] + a[2] * F[0][2];
    std::array<double, 3> e1{a[0] - dot * F[0][0], a[1] - dot * F[0][1],
                             a[2] - dot * F[0][2]};
    double nrm = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
    for (double& c : e1) c /= nrm;
    F[1] = e1;
    F[2] = {F[0][1] * e1[2] - F[0][2] * e1[1],
            F[0][2] * e1[0] - F[0][0] * e1[2],
            F[0][0] * e1[1] - F[0][1] * e1[0]};
  }
  return F;
}

// Spectral convolution of a real kernel with a field: K * w ~ dx^d circular
// convolution = F^{-1}[L^d K^ w^].
Field conv_spectral(const SpectralField& Khat, const Field& w) {
  SpectralField W = forward_transform(w);
  SpectralField prod(w.grid);
  double Ld = std::pow(w.grid.L, w.grid.d);
  for (std::size_t i = 0; i < W.coeffs.size(); ++i)
    prod.coeffs[i] = Ld * Khat.coeffs[i] * W.coeffs[i];
  return inverse_transform(prod);
}

}  // namespace

WeightField hl_maximal(const WeightField& w) {
  const GridSpec& g = w.grid();
  std::vector<double> vals = real_part(w.field);
  std::vector<double> best = vals;  // half-width 0: the cell itself
  for (int h = 1; h <= g.n / 2; h *= 2) {
    std::vector<double> sum = vals;
    for (int ax = 0; ax < g.d; ++ax) box_sum_axis(sum, g, std::min(h, g.n / 2), ax);
    double cells = pow_int(2.0 * std::min(h, g.n / 2) + 1.0, g.d);
    for (std::size_t i = 0; i < sum.size(); ++i)
      best[i] = std::max(best[i], sum[i] / cells);
  }
  Field out(g);
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = cd(best[i], 0.0);
  return WeightField(std::move(out));
}

WeightField nikodym_maximal(const WeightField& w, double ecc,
                            const std::vector<double>& t_samples,
                            const DirectionSet* theta_set) {
  if (!(ecc > 0.0 && ecc < 1.0))
    throw config_error("nikodym_maximal: eccentricity must lie in (0,1)");
  const GridSpec& g = w.grid();
  std::vector<double> ts = t_samples;
  if (ts.empty()) {
    double lo = 4.0 * g.dx(), hi = g.L / 4.0;
    for (double t = lo; t <= hi * 1.0000001; t *= std::pow(2.0, 0.25))
      ts.push_back(t);
  }
  DirectionSet local;
  if (!theta_set) {
    int j = std::max(0, static_cast<int>(std::lround(-std::log2(ecc))));
    local = direction_set(j, g.d);
    theta_set = &local;
  }
  if (ts.empty() || theta_set->directions.empty())
    throw config_error("nikodym_maximal: empty sample sets");

  SpectralField W = forward_transform(w.field);
  const std::size_t N = g.size();
  std::vector<double> best(N, 0.0);
  const int n = g.n;
  const double dx = g.dx();

  std::vector<std::pair<int, double>> jobs;  // (theta index, t)
  for (int ti = 0; ti < static_cast<int>(theta_set->directions.size()); ++ti)
    for (double t : ts) jobs.push_back({ti, t});

  std::vector<std::vector<double>> results(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t jb) {
    const auto& th = theta_set->directions[jobs[jb].first].theta;
    double t = jobs[jb].second;
    Field ind(g);
    int reach = std::min(n / 2, static_cast<int>(std::ceil(t / dx)) + 1);
    std::size_t count = 0;
    std::array<int, 3> off{0, 0, 0};
    std::function<void(int)> scan = [&](int ax) {
      if (ax == g.d) {
        std::array<double, 3> y{0.0, 0.0, 0.0};
        for (int a = 0; a < g.d; ++a) y[a] = off[a] * dx;
        double along = y[0] * th[0] + y[1] * th[1] + y[2] * th[2];
        if (std::abs(along) > t) return;
        double p2 = 0.0;
        for (int a = 0; a < g.d; ++a) {
          double pa = y[a] - along * th[a];
          p2 += pa * pa;
        }
        if (p2 > t * t * ecc * ecc) return;
        std::array<int, 3> idx{0, 0, 0};
        for (int a = 0; a < g.d; ++a) idx[a] = off[a];
        ind.values[g.ravel(idx)] += cd(1.0, 0.0);
        ++count;
        return;
      }
      for (off[ax] = -reach; off[ax] <= reach; ++off[ax]) scan(ax + 1);
    };
    scan(0);
    if (count == 0) return;
    SpectralField I = forward_transform(ind);
    SpectralField prod(g);
    double scale = static_cast<double>(N) / static_cast<double>(count);
    for (std::size_t i = 0; i < N; ++i)
      prod.coeffs[i] = scale * I.coeffs[i] * W.coeffs[i];
    Field avg = inverse_transform(prod);
    results[jb] = real_part(avg);
  });
  for (const auto& r : results) {
    if (r.empty()) continue;
    for (std::size_t i = 0; i < N; ++i)
      best[i] = std::max(best[i], std::max(0.0, r[i]));
  }
  Field out(g);
  for (std::size_t i = 0; i < N; ++i) out.values[i] = cd(best[i], 0.0);
  return WeightField(std::move(out));
}

TubeKernel tube_kernel_field(const Direction& theta, int j, double tau,
                             const GridSpec& grid, double periodization_tol) {
  if (!(tau > 0.0)) throw config_error("tube_kernel_field: tau must be > 0");
  TubeKernel K;
  K.theta = theta;
  K.j = j;
  K.tau = tau;
  K.field = Field(grid);
  const double amp = std::ldexp(std::pow(tau, grid.d), -j);
  const std::size_t N = grid.size();
  double boundary_max = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    auto x = grid.x_vec(i);
    double along = 0.0;
    for (int a = 0; a < grid.d; ++a) along += x[a] * theta.theta[a];
    // l^{-1} shrinks the theta component by 2^{-j} and keeps the rest.
    double q = 0.0;
    for (int a = 0; a < grid.d; ++a) {
      double c = tau * (x[a] + (std::ldexp(1.0, -j) - 1.0) * along * theta.theta[a]);
      q += c * c;
    }
    double v = amp / std::pow(1.0 + std::sqrt(q), grid.d + 1.0);
    K.field.values[i] = cd(v, 0.0);
    auto idx = grid.unravel(i);
    for (int a = 0; a < grid.d; ++a)
      if (idx[a] == grid.n / 2) boundary_max = std::max(boundary_max, v);
  }
  if (boundary_max > periodization_tol * amp)
    throw guard_error("periodization",
                      "tube_kernel_field: kernel not decayed at the torus "
                      "boundary");
  return K;
}

Field kernel_convolve(const TubeKernel& K, const Field& w) {
  if (!(K.field.grid == w.grid))
    throw config_error("kernel_convolve: grid mismatch");
  return conv_spectral(forward_transform(K.field), w);
}

// ---- Schwartz dictionary --------------------------------------------------

namespace {

struct Shape1d {
  std::function<double(double)> f;
};

struct ShapeNd {
  std::string id;
  std::array<Shape1d, 3> factors;  // product structure in the theta-frame
};

std::vector<ShapeNd> shape_catalog(int d, int K) {
  auto gauss = [](double s) {
    return Shape1d{[s](double y) { return std::exp(-y * y / (2.0 * s * s)); }};
  };
  auto moment = [](double s) {
    return Shape1d{
        [s](double y) { return y * std::exp(-y * y / (2.0 * s * s)); }};
  };
  auto modulated = [](double s, double freq) {
    return Shape1d{[s, freq](double y) {
      return std::cos(freq * y) * std::exp(-y * y / (2.0 * s * s));
    }};
  };
  auto hermite2 = [](double s) {
    return Shape1d{[s](double y) {
      return (1.0 - y * y / (s * s)) * std::exp(-y * y / (2.0 * s * s));
    }};
  };
  std::vector<ShapeNd> out;
  auto iso = [&](const std::string& id, Shape1d a0, Shape1d rest) {
    ShapeNd s;
    s.id = id;
    s.factors[0] = a0;
    for (int ax = 1; ax < 3; ++ax) s.factors[ax] = rest;
    out.push_back(std::move(s));
  };
  iso("gauss_035", gauss(0.35), gauss(0.35));
  iso("gauss_050", gauss(0.5), gauss(0.5));
  iso("gauss_075", gauss(0.75), gauss(0.75));
  iso("gauss_100", gauss(1.0), gauss(1.0));
  iso("moment_axis0", moment(0.6), gauss(0.6));
  {
    ShapeNd s;
    s.id = "moment_axis1";
    s.factors[0] = gauss(0.6);
    s.factors[1] = moment(0.6);
    s.factors[2] = gauss(0.6);
    out.push_back(std::move(s));
  }
  if (d == 3) {
    ShapeNd s;
    s.id = "moment_axis2";
    s.factors[0] = gauss(0.6);
    s.factors[1] = gauss(0.6);
    s.factors[2] = moment(0.6);
    out.push_back(std::move(s));
  }
  iso("mod3_axis0", modulated(0.8, 3.0), gauss(0.8));
  {
    ShapeNd s;
    s.id = "mod3_axis1";
    s.factors[0] = gauss(0.8);
    s.factors[1] = modulated(0.8, 3.0);
    s.factors[2] = gauss(0.8);
    out.push_back(std::move(s));
  }
  iso("hermite2_axis0", hermite2(0.7), gauss(0.7));
  iso("mod5_axis0", modulated(0.6, 5.0), gauss(0.6));
  iso("gauss_060", gauss(0.6), gauss(0.6));
  iso("mod2_wide", modulated(1.2, 2.0), gauss(1.2));
  while (static_cast<int>(out.size()) < K) {
    double s = 0.4 + 0.07 * out.size();
    iso("gauss_extra_" + std::to_string(out.size()), gauss(s), gauss(s));
  }
  out.resize(K);
  return out;
}

// sup over [-R,R] of (1+|y|)^order |u^(m)(y)| by dense finite differences.
double sup_weighted_derivative(const Shape1d& u, int m, int order) {
  const double R = 9.0, h = 0.02;
  double best = 0.0;
  for (double y = -R; y <= R; y += 0.01) {
    double acc = 0.0, binom = 1.0;
    for (int i = 0; i <= m; ++i) {
      double sign = (i % 2 == 0) ? 1.0 : -1.0;
      acc += sign * binom * u.f(y + (m / 2.0 - i) * h);
      binom = binom * (m - i) / (i + 1);
    }
    double der = std::abs(acc) / std::pow(h, m);
    best = std::max(best, std::pow(1.0 + std::abs(y), order) * der);
  }
  return best;
}

}  // namespace

SchwartzDictionary schwartz_dictionary(const Direction& theta, int j, int n,
                                       int K, const GridSpec& grid) {
  if (K < 8) throw config_error("schwartz_dictionary: need K >= 8");
  SchwartzDictionary dict;
  dict.theta = theta;
  dict.j = j;
  dict.n = n;
  dict.order = grid.d + 3;
  auto frame = frame_of(theta, grid.d);
  auto shapes = shape_catalog(grid.d, K);

  // Per-factor weighted-derivative sups, shared across members where the
  // same 1-d factor recurs (keyed by the shape index / axis).
  for (const ShapeNd& sh : shapes) {
    // Product bound on the frame-coordinate seminorm, then a d^order factor
    // covering the change to ambient coordinates.
    double bound = 0.0;
    std::vector<std::vector<double>> sups(grid.d);
    for (int ax = 0; ax < grid.d; ++ax) {
      sups[ax].resize(dict.order + 1);
      for (int m = 0; m <= dict.order; ++m)
        sups[ax][m] = sup_weighted_derivative(sh.factors[ax], m, dict.order);
    }
    std::function<void(int, int, double)> walk = [&](int ax, int left,
                                                     double prod) {
      if (ax == grid.d) {
        bound = std::max(bound, prod);
        return;
      }
      for (int m = 0; m <= left; ++m) walk(ax + 1, left - m, prod * sups[ax][m]);
    };
    walk(0, dict.order, 1.0);
    double rotation_factor = std::pow(static_cast<double>(grid.d), dict.order);
    double certified = bound * rotation_factor;
    double c = 0.95 / certified;

    DictionaryMember mem;
    mem.id = sh.id;
    mem.seminorm = certified * c;  // <= 0.95 by construction
    mem.slack = 0.05;
    mem.field = Field(grid);
    double amp = c * std::ldexp(1.0, n * grid.d - j);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      auto x = grid.x_vec(i);
      double along = 0.0;
      for (int a = 0; a < grid.d; ++a) along += x[a] * theta.theta[a];
      // y = 2^n l^{-1} x in the theta-frame
      std::array<double, 3> y{0.0, 0.0, 0.0};
      for (int fr = 0; fr < grid.d; ++fr) {
        double comp = 0.0;
        for (int a = 0; a < grid.d; ++a) comp += x[a] * frame[fr][a];
        if (fr == 0) comp = std::ldexp(comp, -j);
        y[fr] = std::ldexp(comp, n);
      }
      double v = amp;
      for (int fr = 0; fr < grid.d; ++fr) v *= sh.factors[fr].f(y[fr]);
      mem.field.values[i] = cd(v, 0.0);
    }
    dict.members.push_back(std::move(mem));
  }
  return dict;
}

Field grand_maximal(const Field& g, const SchwartzDictionary& dict) {
  if (dict.members.empty())
    throw config_error("grand_maximal: empty dictionary");
  const std::size_t N = g.grid.size();
  std::vector<double> best(N, 0.0);
  SpectralField G = forward_transform(g);
  double Ld = std::pow(g.grid.L, g.grid.d);
  for (const DictionaryMember& mem : dict.members) {
    SpectralField Kh = forward_transform(mem.field);
    SpectralField prod(g.grid);
    for (std::size_t i = 0; i < N; ++i)
      prod.coeffs[i] = Ld * Kh.coeffs[i] * G.coeffs[i];
    Field conv = inverse_transform(prod);
    for (std::size_t i = 0; i < N; ++i)
      best[i] = std::max(best[i], std::abs(conv.values[i]));
  }
  Field out(g.grid);
  for (std::size_t i = 0; i < N; ++i) out.values[i] = cd(best[i], 0.0);
  return out;
}

// ---- composite weight operators ------------------------------------------

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.5))
    throw config_error("weight op: delta must lie in (0,1/2)");
}

// Single layers are bounded for every q >= 1; q > 1 is required here so the
// inner power mean is well defined.  The composite sum over layers converges
// only up to the endpoint q = (d+2)/2, which is admitted.
void check_layer_params(double q, double delta) {
  if (!(q > 1.0)) throw config_error("weight op: q must be > 1");
  check_delta(delta);
}

void check_composite_params(double q, double delta, int d) {
  if (!(q > 1.0 && q <= (d + 2.0) / 2.0))
    throw config_error("weight op: q must lie in (1,(d+2)/2]");
  check_delta(delta);
}

// Layers for several exponents in one pass.  The grand-maximal stage is
// q-independent, so the dictionary synthesis, its spectra, and the per-member
// convolutions are shared across exponents; only the final power/convolution
// is per-q.  Result is [qi][wi].
std::vector<std::vector<Field>> batch_core(
    const std::vector<const WeightField*>& ws, int j,
    const std::vector<double>& qs, double delta, int k, int dict_K) {
  if (ws.empty() || qs.empty()) return {};
  const GridSpec& g = ws[0]->grid();
  for (double q : qs) check_layer_params(q, delta);
  int band = k - j;
  if (band < min_band(g) || band > max_band(g))
    throw guard_error("band-ladder",
                      "w_layer: band 2^{k-j} outside the resolvable ladder");
  DirectionSet thetas = direction_set(j, g.d);
  double tau = std::ldexp(delta, k + j);

  std::vector<SpectralField> filtered_hat;
  filtered_hat.reserve(ws.size());
  for (const WeightField* w : ws)
    filtered_hat.push_back(forward_transform(dyadic_cutoff(w->field, band)));

  const std::size_t N = g.size();
  const double Ld = std::pow(g.L, g.d);
  std::vector<std::vector<std::vector<double>>> best(
      qs.size(), std::vector<std::vector<double>>(
                     ws.size(), std::vector<double>(N, 0.0)));
  // Parallel over directions; merging by pointwise max is exact, so the
  // result does not depend on the thread schedule.
  std::mutex merge_mutex;
  parallel_for(thetas.directions.size(), [&](std::size_t ti) {
    const Direction& th = thetas.directions[ti];
    SchwartzDictionary dict = schwartz_dictionary(th, j, band, dict_K, g);
    TubeKernel K = tube_kernel_field(th, j, tau, g, /*periodization_tol=*/1.0);
    SpectralField Khat = forward_transform(K.field);
    std::vector<SpectralField> member_hat;
    member_hat.reserve(dict.members.size());
    for (const DictionaryMember& mem : dict.members)
      member_hat.push_back(forward_transform(mem.field));
    std::vector<std::vector<std::vector<double>>> local(
        qs.size(), std::vector<std::vector<double>>(ws.size()));
    std::vector<double> gm(N);
    SpectralField prod(g);
    for (std::size_t wi = 0; wi < ws.size(); ++wi) {
      std::fill(gm.begin(), gm.end(), 0.0);
      for (const SpectralField& mh : member_hat) {
        for (std::size_t i = 0; i < N; ++i)
          prod.coeffs[i] = Ld * mh.coeffs[i] * filtered_hat[wi].coeffs[i];
        Field conv = inverse_transform(prod);
        for (std::size_t i = 0; i < N; ++i)
          gm[i] = std::max(gm[i], std::abs(conv.values[i]));
      }
      for (std::size_t qi = 0; qi < qs.size(); ++qi) {
        Field powq(g);
        for (std::size_t i = 0; i < N; ++i)
          powq.values[i] = cd(std::pow(gm[i], qs[qi]), 0.0);
        Field conv = conv_spectral(Khat, powq);
        local[qi][wi].resize(N);
        for (std::size_t i = 0; i < N; ++i)
          local[qi][wi][i] = std::max(0.0, conv.values[i].real());
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (std::size_t qi = 0; qi < qs.size(); ++qi)
      for (std::size_t wi = 0; wi < ws.size(); ++wi)
        for (std::size_t i = 0; i < N; ++i)
          best[qi][wi][i] = std::max(best[qi][wi][i], local[qi][wi][i]);
  });
  std::vector<std::vector<Field>> out(qs.size());
  for (std::size_t qi = 0; qi < qs.size(); ++qi) {
    out[qi].reserve(ws.size());
    for (std::size_t wi = 0; wi < ws.size(); ++wi) {
      Field o(g);
      for (std::size_t i = 0; i < N; ++i)
        o.values[i] = cd(std::pow(best[qi][wi][i], 1.0 / qs[qi]), 0.0);
      out[qi].push_back(std::move(o));
    }
  }
  return out;
}

Field power_mean_maximal(const Field& u, double s) {
  // (M |u|^s)^{1/s} for nonnegative u.
  Field us(u.grid);
  for (std::size_t i = 0; i < u.values.size(); ++i)
    us.values[i] = cd(std::pow(std::abs(u.values[i].real()), s), 0.0);
  WeightField m = hl_maximal(WeightField(std::move(us)));
  Field out(u.grid);
  for (std::size_t i = 0; i < u.values.size(); ++i)
    out.values[i] = cd(std::pow(m.field.values[i].real(), 1.0 / s), 0.0);
  return out;
}

}  // namespace

Field w_layer(const WeightField& w, int j, double q, double delta, int k,
              int dict_K) {
  std::vector<const WeightField*> one{&w};
  return std::move(batch_core(one, j, {q}, delta, k, dict_K)[0][0]);
}

std::vector<Field> w_layer_batch(const std::vector<WeightField>& ws, int j,
                                 double q, double delta, int k, int dict_K) {
  std::vector<const WeightField*> ptrs;
  ptrs.reserve(ws.size());
  for (const WeightField& w : ws) ptrs.push_back(&w);
  return std::move(batch_core(ptrs, j, {q}, delta, k, dict_K)[0]);
}

std::vector<std::vector<Field>> w_layer_batch(const std::vector<WeightField>& ws,
                                              int j,
                                              const std::vector<double>& qs,
                                              double delta, int k, int dict_K) {
  std::vector<const WeightField*> ptrs;
  ptrs.reserve(ws.size());
  for (const WeightField& w : ws) ptrs.push_back(&w);
  return batch_core(ptrs, j, qs, delta, k, dict_K);
}

Field w_sup(const WeightField& w, int j, double q, double delta,
            const std::vector<int>& k_range, int dict_K) {
  if (k_range.empty()) throw config_error("w_sup: empty k_range");
  const std::size_t N = w.grid().size();
  Field out(w.grid());
  for (int k : k_range) {
    Field layer = w_layer(w, j, q, delta, k, dict_K);
    for (std::size_t i = 0; i < N; ++i)
      out.values[i] =
          cd(std::max(out.values[i].real(), layer.values[i].real()), 0.0);
  }
  return out;
}

Field frak_w(const WeightField& w, double q, double delta, double s,
             int dict_K) {
  const GridSpec& g = w.grid();
  check_composite_params(q, delta, g.d);
  if (s == 0.0) s = (1.0 + q) / 2.0;
  if (!(s > 1.0 && s < q))
    throw config_error("frak_w: s must lie in (1,q)");
  const std::size_t N = g.size();
  Field out(g);
  for (int j = 0; std::ldexp(1.0, 2 * j) < 1.0 / delta; ++j) {
    std::vector<int> k_range;
    for (int band = min_band(g); band <= max_band(g); ++band)
      k_range.push_back(band + j);
    Field sup = w_sup(w, j, q, delta, k_range, dict_K);
    WeightField msup = hl_maximal(WeightField(std::move(sup)));
    Field term = power_mean_maximal(msup.field, s);
    double coeff = std::pow(2.0, -2.0 * j * (g.d / q - 1.0));
    for (std::size_t i = 0; i < N; ++i)
      out.values[i] += coeff * term.values[i];
  }
  WeightField nik = nikodym_maximal(w, std::sqrt(delta));
  WeightField mnik = hl_maximal(nik);
  Field tail = power_mean_maximal(mnik.field, s);
  double coeff = std::pow(delta, g.d / q - 1.0);
  for (std::size_t i = 0; i < N; ++i) out.values[i] += coeff * tail.values[i];
  return out;
}

Field theorem41_weight(const WeightField& w, double q, double delta,
                       int dict_K) {
  const GridSpec& g = w.grid();
  check_composite_params(q, delta, g.d);
  const std::size_t N = g.size();
  Field out(g);
  for (int j = 0; std::ldexp(1.0, 2 * j) < 1.0 / delta; ++j) {
    Field layer = w_layer(w, j, q, delta, /*k=*/0, dict_K);
    WeightField m = hl_maximal(WeightField(std::move(layer)));
    double coeff = std::pow(2.0, -2.0 * j * (g.d / q - 1.0));
    for (std::size_t i = 0; i < N; ++i)
      out.values[i] += coeff * m.field.values[i];
  }
  WeightField nik = nikodym_maximal(w, std::sqrt(delta));
  WeightField mnik = hl_maximal(nik);
  double coeff = std::pow(delta, g.d / q - 1.0);
  for (std::size_t i = 0; i < N; ++i)
    out.values[i] += coeff * mnik.field.values[i];
  return out;
}

}  // namespace annulus
