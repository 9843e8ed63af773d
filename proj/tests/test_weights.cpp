#include <cmath>
#include <complex>
#include <set>

#include "doctest.h"

#include "annulus/fft.hpp"
#include "annulus/multipliers.hpp"
#include "annulus/norms.hpp"
#include "annulus/rng.hpp"
#include "annulus/weights.hpp"

namespace {

using annulus::cd;
using annulus::Field;
using annulus::GridSpec;
using annulus::WeightField;

WeightField random_weight(const GridSpec& g, std::uint64_t seed) {
  annulus::CounterRng rng(seed, 0);
  Field f(g);
  for (cd& v : f.values) {
    double u = rng.next_double();
    v = cd(u * u, 0.0);
  }
  return WeightField(std::move(f));
}

}  // namespace

TEST_CASE("weight fields must be real and nonnegative") {
  GridSpec g = annulus::make_grid(1, 8, 1.0);
  Field bad(g);
  bad.values[3] = cd(-0.5, 0.0);
  CHECK_THROWS_AS(WeightField(std::move(bad)), annulus::config_error);
  Field cplx(g);
  cplx.values[1] = cd(0.5, 0.25);
  CHECK_THROWS_AS(WeightField(std::move(cplx)), annulus::config_error);
}

TEST_CASE("hardy-littlewood maximal dominates and fixes constants") {
  GridSpec g = annulus::make_grid(2, 32, 4.0);
  WeightField w = random_weight(g, 5);
  WeightField m = annulus::hl_maximal(w);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(m.field.values[i].real() >= w.field.values[i].real() - 1e-14);
  Field c(g);
  for (cd& v : c.values) v = cd(0.7, 0.0);
  WeightField mc = annulus::hl_maximal(WeightField(std::move(c)));
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(mc.field.values[i].real() == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("hardy-littlewood maximal matches a brute-force oracle in 1-d") {
  GridSpec g = annulus::make_grid(1, 8, 2.0);
  WeightField w = random_weight(g, 9);
  WeightField m = annulus::hl_maximal(w);
  for (int i = 0; i < 8; ++i) {
    double best = w.field.values[i].real();
    for (int h : {1, 2, 4}) {
      double acc = 0.0;
      for (int o = -h; o <= h; ++o)
        acc += w.field.values[((i + o) % 8 + 8) % 8].real();
      best = std::max(best, acc / (2 * h + 1));
    }
    CHECK(m.field.values[i].real() == doctest::Approx(best).epsilon(1e-13));
  }
}

TEST_CASE("nikodym maximal basics") {
  GridSpec g = annulus::make_grid(2, 32, 8.0);
  Field c(g);
  for (cd& v : c.values) v = cd(1.0, 0.0);
  WeightField one(std::move(c));
  WeightField m = annulus::nikodym_maximal(one, 0.25);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(m.field.values[i].real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(annulus::nikodym_maximal(one, 0.0), annulus::config_error);
  CHECK_THROWS_AS(annulus::nikodym_maximal(one, 1.5), annulus::config_error);

  // Max over a superset of scales dominates the subset value.
  WeightField w = random_weight(g, 13);
  WeightField few = annulus::nikodym_maximal(w, 0.25, {2.0});
  WeightField more = annulus::nikodym_maximal(w, 0.25, {1.0, 2.0});
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(more.field.values[i].real() >= few.field.values[i].real() - 1e-12);
}

TEST_CASE("tube kernel amplitude and periodization guard") {
  GridSpec g = annulus::make_grid(2, 64, 16.0);
  annulus::Direction th{{1.0, 0.0, 0.0}, 0};
  // Default tolerance trips: the power-law tail has not decayed by |x| = 8.
  CHECK_THROWS_AS(annulus::tube_kernel_field(th, 0, 1.0, g),
                  annulus::guard_error);
  annulus::TubeKernel K = annulus::tube_kernel_field(th, 2, 0.5, g, 1.0);
  double amp = std::ldexp(0.25, -2);
  std::size_t center = g.ravel({g.n / 2, g.n / 2, 0});  // x = 0
  CHECK(K.field.values[center].real() == doctest::Approx(amp).epsilon(1e-12));
  // Stretched axis: decay along theta is slower than across it.
  std::size_t along = g.ravel({g.n / 2 + 8, g.n / 2, 0});
  std::size_t across = g.ravel({g.n / 2, g.n / 2 + 8, 0});
  CHECK(K.field.values[along].real() > K.field.values[across].real());
  CHECK_THROWS_AS(annulus::tube_kernel_field(th, 0, 0.0, g, 1.0),
                  annulus::config_error);
}

TEST_CASE("kernel convolution of a constant integrates the kernel") {
  GridSpec g = annulus::make_grid(2, 32, 8.0);
  annulus::Direction th{{0.0, 1.0, 0.0}, 0};
  annulus::TubeKernel K = annulus::tube_kernel_field(th, 1, 1.0, g, 1.0);
  double mass = 0.0;
  for (const cd& v : K.field.values) mass += v.real();
  mass *= g.cell_volume();
  Field c(g);
  for (cd& v : c.values) v = cd(1.0, 0.0);
  Field conv = annulus::kernel_convolve(K, c);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(conv.values[i].real() == doctest::Approx(mass).epsilon(1e-10));
  Field other(annulus::make_grid(2, 16, 8.0));
  CHECK_THROWS_AS(annulus::kernel_convolve(K, other), annulus::config_error);
}

TEST_CASE("schwartz dictionary is certified below its slack line") {
  GridSpec g = annulus::make_grid(2, 32, 8.0);
  annulus::Direction th{{std::sqrt(0.5), std::sqrt(0.5), 0.0}, 0};
  CHECK_THROWS_AS(annulus::schwartz_dictionary(th, 1, 0, 4, g),
                  annulus::config_error);
  annulus::SchwartzDictionary dict = annulus::schwartz_dictionary(th, 1, 0, 10, g);
  CHECK(dict.members.size() == 10);
  CHECK(dict.order == 5);
  std::set<std::string> ids;
  for (const auto& mem : dict.members) {
    ids.insert(mem.id);
    CHECK(mem.seminorm <= 0.95 + 1e-12);
    CHECK(mem.seminorm > 0.0);
    CHECK(annulus::lp_norm(mem.field, annulus::kInfExponent) > 0.0);
  }
  CHECK(ids.size() == 10);
}

TEST_CASE("grand maximal dominates every member convolution") {
  GridSpec g = annulus::make_grid(2, 32, 8.0);
  annulus::Direction th{{1.0, 0.0, 0.0}, 0};
  annulus::SchwartzDictionary dict = annulus::schwartz_dictionary(th, 0, 0, 8, g);
  Field f = random_weight(g, 21).field;
  Field gm = annulus::grand_maximal(f, dict);
  for (const auto& mem : dict.members) {
    annulus::TubeKernel K;
    K.field = mem.field;
    Field conv = annulus::kernel_convolve(K, f);
    for (std::size_t i = 0; i < g.size(); ++i)
      CHECK(gm.values[i].real() >= std::abs(conv.values[i]) - 1e-12);
  }
}

TEST_CASE("layer operator guards") {
  GridSpec g = annulus::make_grid(2, 64, 16.0 * M_PI);  // bands [-2, 0]
  WeightField w = random_weight(g, 2);
  CHECK_THROWS_AS(annulus::w_layer(w, 0, 1.0, 0.125, 0),
                  annulus::config_error);  // q must exceed 1
  CHECK_THROWS_AS(annulus::w_layer(w, 0, 1.5, 0.7, 0), annulus::config_error);
  CHECK_THROWS_AS(annulus::w_layer(w, 4, 1.5, 0.125, 0),
                  annulus::guard_error);  // band -4 below the ladder
  CHECK_THROWS_AS(annulus::w_layer(w, 0, 1.5, 0.125, 3),
                  annulus::guard_error);  // band 3 above the ladder
}

TEST_CASE("layer operator: homogeneity and batch consistency") {
  GridSpec g = annulus::make_grid(2, 64, 16.0 * M_PI);
  WeightField w = random_weight(g, 31);
  Field base = annulus::w_layer(w, 0, 1.5, 0.125, 0, 8);
  Field scaled_in(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    scaled_in.values[i] = 2.7 * w.field.values[i];
  Field scaled = annulus::w_layer(WeightField(std::move(scaled_in)), 0, 1.5,
                                  0.125, 0, 8);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(scaled.values[i].real() ==
          doctest::Approx(2.7 * base.values[i].real()).epsilon(1e-9));

  WeightField w2 = random_weight(g, 32);
  std::vector<WeightField> both;
  both.push_back(random_weight(g, 31));
  both.push_back(std::move(w2));
  std::vector<Field> batch = annulus::w_layer_batch(both, 0, 1.5, 0.125, 0, 8);
  REQUIRE(batch.size() == 2);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(batch[0].values[i].real() ==
          doctest::Approx(base.values[i].real()).epsilon(1e-13));
}

TEST_CASE("composite weight of the constant is the constant") {
  // With w = 1 every band-limited layer vanishes (the dyadic cutoff kills
  // the zero mode) and the scale-average term is exactly 1, so the
  // composite weight collapses to 1.
  GridSpec g = annulus::make_grid(2, 64, 16.0 * M_PI);
  Field c(g);
  for (cd& v : c.values) v = cd(1.0, 0.0);
  Field W = annulus::theorem41_weight(WeightField(std::move(c)), 2.0, 0.125, 8);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(W.values[i].real() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("aggregate weight parameter guards") {
  GridSpec g = annulus::make_grid(2, 64, 16.0 * M_PI);
  WeightField w = random_weight(g, 7);
  CHECK_THROWS_AS(annulus::frak_w(w, 1.5, 0.125, 1.6), annulus::config_error);
  CHECK_THROWS_AS(annulus::frak_w(w, 1.5, 0.125, 0.5), annulus::config_error);
  CHECK_THROWS_AS(annulus::frak_w(w, 3.0, 0.125), annulus::config_error);
  CHECK_THROWS_AS(annulus::w_sup(w, 0, 1.5, 0.125, {}), annulus::config_error);
}

TEST_CASE("aggregate weight is finite, positive, and homogeneous") {
  GridSpec g = annulus::make_grid(2, 64, 16.0 * M_PI);
  WeightField w = random_weight(g, 17);
  Field F = annulus::frak_w(w, 1.5, 0.25, 0.0, 8);
  double mn = 1e300;
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::isfinite(F.values[i].real()));
    mn = std::min(mn, F.values[i].real());
  }
  CHECK(mn > 0.0);
}
