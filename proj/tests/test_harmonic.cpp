#include <doctest.h>

#include <chrono>
#include <cmath>

#include "idla/error.hpp"
#include "idla/graph.hpp"
#include "idla/harmonic.hpp"
#include "idla/spectral.hpp"

using namespace idla;

namespace {

TestFunction mode(int k, double a = 1.0) { return TestFunction({Mode{k, Coefficient::constant(a)}}); }

}  // namespace

TEST_CASE("coefficients") {
  CHECK(Coefficient::constant(2.5)(7) == 2.5);
  const Coefficient p = Coefficient::polynomial({1, -2, 3});
  CHECK(p(2) == doctest::Approx(1 - 4 + 12));
  CHECK(p.lipschitz(0, 1) >= 4);
  const Coefficient t = Coefficient::table({0, 1, 3}, {0, 2, 0});
  CHECK(t(0.5) == doctest::Approx(1));
  CHECK(t(2) == doctest::Approx(1));
  CHECK(t(-4) == 0);
  CHECK(t(9) == 0);
  CHECK(t.lipschitz(0, 3) == doctest::Approx(2));
  CHECK_THROWS_AS(Coefficient::table({0, 0}, {1, 2}), Error);
  CHECK_THROWS_AS(Coefficient::table({0, 1}, {1}), Error);
}

TEST_CASE("test functions exclude the constant mode") {
  CHECK_THROWS_AS(mode(1), Error);
  const Spectrum s = closed_form_cycle(8);
  const TestFunction tf({Mode{2, Coefficient::constant(1)}, Mode{5, Coefficient::polynomial({0, 1})}});
  CHECK(tf.max_mode() == 5);
  CHECK(tf.phi(s, 3, 0.5) == doctest::Approx(s.f(2, 3) + 0.5 * s.f(5, 3)));
  CHECK(tf.lattice(s, 4, 3, 2) == doctest::Approx(tf.phi(s, 3, 0.5)));
}

TEST_CASE("harmonic extension is harmonic") {
  const auto t0 = std::chrono::steady_clock::now();
  for (const BaseGraph& g : {build_cycle(16), build_torus(4, 2)}) {
    const Spectrum s = spectrum_for(g);
    const TestFunction tf({Mode{2, Coefficient::constant(1)}, Mode{3, Coefficient::constant(-0.5)}});
    const double a = default_a_N(g, s);
    const long long T = g.n_vertices() * static_cast<long long>(a);
    const HarmonicExtension ext(s, tf, a, T);
    CHECK(ext.anchor() == doctest::Approx(static_cast<double>(T) / g.n_vertices()));
    const double r = harmonicity_residual([&](int x, long long y) { return ext(x, static_cast<double>(y)); }, g, -10,
                                          2 * static_cast<long long>(a));
    CHECK(r <= 1e-10);
    const LayerHitFunction H(s, 1, 3);
    CHECK(harmonicity_residual([&](int x, long long y) { return H(x, y); }, g, -12, 2) <= 1e-10);
  }
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 1.0);
}

TEST_CASE("harmonic extension matches the test function at the anchor level") {
  const Spectrum s = closed_form_cycle(12);
  const TestFunction tf = mode(3, 2.0);
  const HarmonicExtension ext(s, tf, 12, 12 * 5);
  for (int x = 0; x < 12; ++x) CHECK(ext(x, 5) == doctest::Approx(2.0 * s.f(3, x)));
  CHECK(ext.rates()[0] == doctest::Approx(std::acosh(2 - s.eigenvalue(3))));
}

TEST_CASE("layer square identity") {
  const BaseGraph g = build_torus(4, 2);
  const Spectrum s = spectrum_for(g);
  const TestFunction tf({Mode{2, Coefficient::constant(1)}, Mode{3, Coefficient::constant(0.3)}, Mode{2, Coefficient::constant(0.2)}});
  const HarmonicExtension ext(s, tf, 4, 64);
  for (long long y = -3; y <= 8; ++y) {
    double direct = 0;
    for (int x = 0; x < 16; ++x) direct += ext(x, y) * ext(x, y);
    CHECK(std::abs(ext.layer_square_sum(y) - direct) <= 1e-9 * std::max(1.0, direct));
  }
}

TEST_CASE("layer hitting function: boundary, normalization, average") {
  const BaseGraph g = build_cycle(8);
  const Spectrum s = spectrum_for(g);
  std::vector<LayerHitFunction> H;
  for (int z = 0; z < 8; ++z) H.emplace_back(s, z, 4);
  for (int x = 0; x < 8; ++x) {
    CHECK(H[2](x, 4) == doctest::Approx(x == 2 ? 1.0 : 0.0));
    CHECK(H[2](x, 5) == 0.0);
  }
  for (long long y = -12; y <= 4; ++y) {
    double layer = 0;
    for (int x = 0; x < 8; ++x) {
      double col = 0;
      for (int z = 0; z < 8; ++z) {
        const double h = H[z](x, y);
        CHECK(h >= 0);
        CHECK(h <= 1);
        col += h;
      }
      CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
      layer += H[0](x, y);
    }
    CHECK(layer / 8 == doctest::Approx(1.0 / 8).epsilon(1e-12));
  }
  // Far below the layer the hit is uniform.
  CHECK(H[0](5, -60) == doctest::Approx(1.0 / 8).epsilon(1e-9));
}

TEST_CASE("spectral layer hitting agrees with the slab solve") {
  const BaseGraph g = build_cycle(8);
  const Spectrum s = spectrum_for(g);
  const LayerHitFunction H(s, 0, 4);
  const long long bottom = -12 - static_cast<long long>(std::ceil(32 / vertical_rate(s.eigenvalue(2))));
  const SlabSolution slab = solve_layer_hit_slab(g, 0, 4, bottom);
  double diff = 0;
  for (long long y = -12; y <= 4; ++y)
    for (int x = 0; x < 8; ++x) diff = std::max(diff, std::abs(H(x, y) - slab.at(x, y)));
  CHECK(diff <= 1e-8);
  const BaseGraph p = build_generalized_petersen(5, 2);
  const Spectrum sp = spectrum_for(p);
  const SlabSolution ps = solve_layer_hit_slab(p, 3, 2, -60);
  const LayerHitFunction Hp(sp, 3, 2);
  for (long long y = -5; y <= 2; ++y)
    for (int x = 0; x < 10; ++x) CHECK(std::abs(Hp(x, y) - ps.at(x, y)) <= 1e-8);
}

TEST_CASE("variance target") {
  const TestFunction tf = mode(2);
  const double g = M_PI * std::sqrt(2.0);
  CHECK(variance_sigma2(tf, 1.0, {g}) == doctest::Approx(0.11252397032864826).epsilon(1e-12));
  // Small gamma y0 keeps precision: (1 - e^{-2 g y}) / (2 g) -> y.
  CHECK(variance_sigma2(tf, 1.0, {1e-12}) == doctest::Approx(1.0).epsilon(1e-9));
  const TestFunction two({Mode{2, Coefficient::constant(2)}, Mode{3, Coefficient::constant(1)}});
  CHECK(variance_sigma2(two, 0.5, {1.0, 2.0}) ==
        doctest::Approx(4 * (1 - std::exp(-1.0)) / 2 + (1 - std::exp(-2.0)) / 4));
}
