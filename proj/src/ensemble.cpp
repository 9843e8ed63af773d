#include "annulus/ensemble.hpp"

#include <cmath>

#include "annulus/directions.hpp"
#include "annulus/fft.hpp"
#include "annulus/profiles.hpp"
#include "annulus/rng.hpp"
#include "annulus/weights.hpp"

namespace annulus {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double radius(const GridSpec& g, std::size_t i) {
  auto xi = g.xi_vec(i);
  return std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
}

Field member_random_annulus(const EnsembleSpec& spec, const GridSpec& g,
                            int m) {
  double lo = std::ldexp(0.625, spec.band), hi = std::ldexp(1.875, spec.band);
  if (hi > g.nyquist() - 2.0 * g.dxi())
    throw guard_error("aliasing", "random_annulus: band exceeds the lattice");
  CounterRng rng(spec.seed, static_cast<std::uint64_t>(m));
  SpectralField F(g);
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
    double r = radius(g, i);
    if (r < lo || r > hi) continue;
    double re = rng.next_normal(), im = rng.next_normal();
    F.coeffs[i] = cd(re, im) * (1.0 / std::sqrt(2.0));
  }
  return inverse_transform(F);
}

Field member_knapp(const EnsembleSpec& spec, const GridSpec& g, int m) {
  static RadialProfile eta = bump_profile("eta_plate", BumpParams{2});
  DirectionSet thetas = direction_set(spec.j, g.d);
  const Direction& th =
      thetas.directions[(spec.theta_index + m) % thetas.directions.size()];
  double R = std::ldexp(1.0, spec.band);
  if (2.0 * R > g.nyquist() - 2.0 * g.dxi())
    throw guard_error("aliasing", "knapp: plate radius exceeds the lattice");
  SpectralField F(g);
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
    auto xi = g.xi_vec(i);
    double along = 0.0, r2 = 0.0;
    for (int ax = 0; ax < g.d; ++ax) {
      along += xi[ax] * th.theta[ax];
      r2 += xi[ax] * xi[ax];
    }
    double perp = std::sqrt(std::max(0.0, r2 - along * along));
    double v = eta(std::ldexp(along / R - 1.0, 2 * spec.j)) *
               eta(std::ldexp(perp / R, spec.j));
    if (v != 0.0) F.coeffs[i] = cd(v, 0.0);
  }
  return inverse_transform(F);
}

Field member_radial_focus(const EnsembleSpec& spec, const GridSpec& g, int m) {
  static RadialProfile eta = bump_profile("eta_plate", BumpParams{2});
  if (!(spec.delta > 0.0 && spec.delta < 0.5))
    throw config_error("radial_focus: delta must lie in (0,1/2)");
  double R = std::ldexp(1.0, spec.band);
  if (R * std::sqrt(1.0 + spec.delta) > g.nyquist() - 2.0 * g.dxi())
    throw guard_error("aliasing", "radial_focus: annulus exceeds the lattice");
  CounterRng rng(spec.seed, static_cast<std::uint64_t>(m));
  SpectralField F(g);
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
    double r = radius(g, i);
    double v = eta((1.0 - (r * r) / (R * R)) / spec.delta);
    if (v == 0.0) continue;
    cd phase(1.0, 0.0);
    if (m > 0) {
      double u = rng.next_double();
      phase = std::exp(cd(0.0, kTwoPi * u));
    }
    F.coeffs[i] = v * phase;
  }
  return inverse_transform(F);
}

Field member_gaussian(const EnsembleSpec& spec, const GridSpec& g, int m) {
  CounterRng rng(spec.seed, static_cast<std::uint64_t>(m));
  double sigma = spec.sigma > 0.0 ? spec.sigma : g.L / 16.0;
  std::array<double, 3> x0{0.0, 0.0, 0.0};
  for (int ax = 0; ax < g.d; ++ax)
    x0[ax] = (rng.next_double() - 0.5) * g.L * 0.5;
  double xi0 = std::ldexp(1.0, spec.band);
  double phi0 = kTwoPi * rng.next_double();
  Field f(g);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    auto x = g.x_vec(i);
    double r2 = 0.0;
    for (int ax = 0; ax < g.d; ++ax) {
      // nearest periodic image
      double dxv = x[ax] - x0[ax];
      dxv -= g.L * std::round(dxv / g.L);
      r2 += dxv * dxv;
    }
    double env = std::exp(-r2 / (2.0 * sigma * sigma));
    f.values[i] = env * std::exp(cd(0.0, xi0 * x[0] + phi0));
  }
  return f;
}

Field member_dictionary_mix(const EnsembleSpec& spec, const GridSpec& g,
                            int m) {
  CounterRng rng(spec.seed, static_cast<std::uint64_t>(m));
  DirectionSet thetas = direction_set(spec.j, g.d);
  const Direction& th = thetas.directions[static_cast<std::size_t>(
      rng.next_u64() % thetas.directions.size())];
  SchwartzDictionary dict =
      schwartz_dictionary(th, spec.j, spec.band, 8, g);
  Field w(g);
  for (const DictionaryMember& mem : dict.members) {
    double c = std::abs(rng.next_normal());
    for (std::size_t i = 0; i < w.values.size(); ++i)
      w.values[i] += cd(c * std::abs(mem.field.values[i]), 0.0);
  }
  return w;
}

}  // namespace

std::vector<Field> make_ensemble(const EnsembleSpec& spec,
                                 const GridSpec& grid) {
  if (spec.count < 1) throw config_error("make_ensemble: count must be >= 1");
  std::vector<Field> out;
  out.reserve(spec.count);
  for (int m = 0; m < spec.count; ++m) {
    if (spec.kind == "random_annulus")
      out.push_back(member_random_annulus(spec, grid, m));
    else if (spec.kind == "knapp")
      out.push_back(member_knapp(spec, grid, m));
    else if (spec.kind == "radial_focus")
      out.push_back(member_radial_focus(spec, grid, m));
    else if (spec.kind == "gaussian")
      out.push_back(member_gaussian(spec, grid, m));
    else if (spec.kind == "dictionary_mix")
      out.push_back(member_dictionary_mix(spec, grid, m));
    else
      throw config_error("make_ensemble: unknown kind '" + spec.kind + "'");
  }
  return out;
}

}  // namespace annulus
