#include "annulus/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace annulus {

double canonical_bump(double u) {
  double w = 1.0 - u * u;
  if (w <= 0.0) return 0.0;
  return std::exp(-1.0 / w);
}

double smooth_step(double v) {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  double a = std::exp(-1.0 / v);
  double b = std::exp(-1.0 / (1.0 - v));
  return a / (a + b);  // a(v) + a(1-v) symmetric => step(v)+step(1-v)=1
}

namespace {

// Centered finite difference of order m (binomial stencil, step h).
double fd_derivative(const std::function<double(double)>& f, double x, int m,
                     double h) {
  if (m == 0) return f(x);
  double acc = 0.0;
  double binom = 1.0;
  for (int i = 0; i <= m; ++i) {
    double sign = (i % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom * f(x + (m / 2.0 - i) * h);
    binom = binom * (m - i) / (i + 1);
  }
  return acc / std::pow(h, m);
}

double max_derivative(const std::function<double(double)>& f, double lo,
                      double hi, int nu_max) {
  const int samples = 1200;
  double h = (hi - lo) / 64.0;
  h = std::min(h, 0.02);
  double best = 0.0;
  for (int nu = 0; nu <= nu_max; ++nu) {
    for (int i = 0; i <= samples; ++i) {
      double x = lo + (hi - lo) * i / samples;
      best = std::max(best, std::abs(fd_derivative(f, x, nu, h)));
    }
  }
  return best;
}

double chi_numerator(double t) { return canonical_bump((t - 1.25) / 0.625); }

// sum over k of chi_numerator(2^{-k} t); at most two terms are active since
// the support (5/8,15/8) has log-width log2(3) < 2.
double chi_dyadic_sum(double t) {
  if (!(t > 0.0)) return 0.0;
  int k0 = static_cast<int>(std::floor(std::log2(t)));
  double s = 0.0;
  for (int k = k0 - 2; k <= k0 + 2; ++k)
    s += chi_numerator(std::ldexp(t, -k));
  return s;
}

double phi_partition_eval(double u) {
  double a = std::abs(u);
  if (a >= 0.625) return 0.0;
  if (a <= 0.375) return 1.0;
  return smooth_step((0.625 - a) * 4.0);
}

struct Shape {
  std::function<double(double)> eval;
  double lo, hi;
  int nu_max;
};

Shape make_shape(const std::string& kind, const BumpParams& params) {
  if (kind == "phi_window") {
    // canonical bump in log2 scale; normalized below so that all derivatives
    // up to order d+2 stay <= 1.
    return {[](double s) {
              return s > 0.0 ? canonical_bump(std::log2(s)) : 0.0;
            },
            0.5, 2.0, params.d + 2};
  }
  if (kind == "chi_dyadic") {
    return {[](double t) {
              if (!(t > 0.625 && t < 1.875)) return 0.0;
              return chi_numerator(t) / chi_dyadic_sum(t);
            },
            0.625, 1.875, 2};
  }
  if (kind == "chi_reproducing") {
    return {[](double t) {
              if (t <= 0.5 || t >= 2.0) return 0.0;
              if (t < 0.625) return smooth_step((t - 0.5) * 8.0);
              if (t > 1.875) return smooth_step((2.0 - t) * 8.0);
              return 1.0;
            },
            0.5, 2.0, 2};
  }
  if (kind == "zeta_sector") {
    return {[](double u) {
              double a = std::abs(u);
              if (a >= 0.125) return 0.0;
              if (a <= 1.0 / 9.0) return 1.0;
              return smooth_step((0.125 - a) * 72.0);
            },
            -0.125, 0.125, 2};
  }
  if (kind == "zeta_wide") {
    return {[](double u) {
              double a = std::abs(u);
              if (a >= 1.0 / 7.0) return 0.0;
              if (a <= 0.125) return 1.0;
              return smooth_step((1.0 / 7.0 - a) * 56.0);
            },
            -1.0 / 7.0, 1.0 / 7.0, 2};
  }
  if (kind == "eta_plate") {
    return {[](double s) {
              double a = std::abs(s);
              if (a >= 1.0) return 0.0;
              if (a <= 0.5) return 1.0;
              return smooth_step((1.0 - a) * 2.0);
            },
            -1.0, 1.0, 2};
  }
  if (kind == "eta_ring") {
    Shape base = make_shape("eta_plate", params);
    auto f = base.eval;
    return {[f](double s) { return f(s) - f(2.0 * s); }, -1.0, 1.0, 2};
  }
  if (kind == "chi_circ") {
    return {[](double w) {
              double a = std::abs(w);
              if (a >= 33.0) return 0.0;
              if (a <= 32.0) return 1.0;
              return smooth_step(33.0 - a);
            },
            -33.0, 33.0, 2};
  }
  if (kind == "chi_one") {
    Shape base = make_shape("chi_circ", params);
    auto f = base.eval;
    return {[f](double w) { return f(w) - f(2.0 * w); }, -33.0, 33.0, 2};
  }
  if (kind == "phi_partition") {
    return {phi_partition_eval, -0.625, 0.625, 2};
  }
  throw config_error("bump_profile: unknown kind '" + kind + "'");
}

}  // namespace

RadialProfile bump_profile(const std::string& kind, const BumpParams& params) {
  Shape shape = make_shape(kind, params);
  RadialProfile p;
  p.support_lo = shape.lo;
  p.support_hi = shape.hi;
  p.nu_max = shape.nu_max;
  p.kind = kind;

  if (kind == "phi_window") {
    // Measure the worst derivative once per dimension and rescale to bound 1.
    static std::map<int, double> amp_cache;
    static std::mutex amp_mutex;
    double amp;
    {
      std::lock_guard<std::mutex> lock(amp_mutex);
      auto it = amp_cache.find(params.d);
      if (it == amp_cache.end()) {
        amp = max_derivative(shape.eval, shape.lo, shape.hi, shape.nu_max);
        amp_cache[params.d] = amp;
      } else {
        amp = it->second;
      }
    }
    double scale = (1.0 - 1e-3) / amp;
    auto base = shape.eval;
    p.eval = [base, scale](double s) { return scale * base(s); };
    p.bound = 1.0;
  } else {
    p.eval = shape.eval;
    // Declared bound = measured bound with a small margin.
    static std::map<std::string, double> bound_cache;
    static std::mutex bound_mutex;
    {
      std::lock_guard<std::mutex> lock(bound_mutex);
      auto it = bound_cache.find(kind);
      if (it == bound_cache.end()) {
        double b =
            max_derivative(p.eval, shape.lo, shape.hi, shape.nu_max) * 1.02;
        bound_cache[kind] = b;
        p.bound = b;
      } else {
        p.bound = it->second;
      }
    }
  }
  return p;
}

void verify_profile(const RadialProfile& p) {
  double span = p.support_hi - p.support_lo;
  // Support check on a margin outside the declared interval.
  for (int i = 0; i <= 64; ++i) {
    double off = span * 0.25 * i / 64.0;
    if (std::abs(p.eval(p.support_lo - off - 1e-12)) > 0.0 ||
        std::abs(p.eval(p.support_hi + off + 1e-12)) > 0.0)
      throw guard_error("profile-support",
                        "profile '" + p.kind + "' nonzero outside support");
  }
  double measured = max_derivative(p.eval, p.support_lo, p.support_hi, p.nu_max);
  if (measured > p.bound * 1.05)
    throw guard_error("profile-derivative-bound",
                      "profile '" + p.kind + "' exceeds declared bound");
}

}  // namespace annulus
