#include <doctest.h>

#include <cmath>

#include "idla/graph.hpp"
#include "idla/harmonic.hpp"
#include "idla/idla.hpp"
#include "idla/observables.hpp"
#include "idla/spectral.hpp"

using namespace idla;

namespace {

// Exact N^-h binom(T, h+1) for small arguments.
long double exact_bound(int N, int T, int h) {
  unsigned __int128 b = 1;
  for (int i = 1; i <= h + 1; ++i) b = b * static_cast<unsigned __int128>(T - h - 1 + i) / i;
  long double v = static_cast<long double>(b);
  for (int i = 0; i < h; ++i) v /= N;
  return std::min<long double>(1, v);
}

}  // namespace

TEST_CASE("pairing by direct enumeration on cycle(4)") {
  const Spectrum s = closed_form_cycle(4);
  // R_1 plus (0, 2) minus (1, 1).
  Cluster c(4);
  c.insert(0, 1);
  c.insert(2, 1);
  c.insert(3, 1);
  c.insert(0, 2);
  const CylinderFunction f = [&](int x, long long) { return s.f(2, x); };
  const double expect = s.f(2, 0) - s.f(2, 1);
  for (PairingPath p : {PairingPath::general, PairingPath::zero_average}) {
    const PairingResult r = discrepancy_pairing(c, f, 4, 4, 2, p);
    CHECK(r.raw == doctest::Approx(expect));
    CHECK(r.normalized == doctest::Approx(expect / 4));
  }
  CHECK(discrepancy_pairing(c, f, 4, 4, 2, PairingPath::general, PairingNorm::N).normalized ==
        doctest::Approx(expect / 4));
}

TEST_CASE("general and zero-average pairings agree on random clusters") {
  const BaseGraph g = build_torus(3, 2);
  const Spectrum s = spectrum_for(g);
  const WalkContext ctx(g, s);
  const TestFunction tf({Mode{2, Coefficient::polynomial({1, 0.5})}, Mode{4, Coefficient::constant(-1)}});
  const CylinderFunction f = [&](int x, long long y) { return tf.lattice(s, 3, x, y); };
  CHECK(zero_average_check(f, 9, {-2, 0, 1, 5, 40}));
  for (int r = 0; r < 100; ++r) {
    const long long T = 9 * (1 + r % 7);
    const Cluster c = run(ctx, T, static_cast<std::uint64_t>(r)).cluster;
    const double a = discrepancy_pairing(c, f, T, 3, 4, PairingPath::general).raw;
    const double b = discrepancy_pairing(c, f, T, 3, 4, PairingPath::zero_average).raw;
    CHECK(std::abs(a - b) <= 1e-9);
  }
}

TEST_CASE("zero-average check") {
  const Spectrum s = closed_form_cycle(6);
  CHECK(zero_average_check([&](int x, long long) { return s.f(3, x); }, 6, {0, 1, 2}));
  CHECK_FALSE(zero_average_check([](int, long long) { return 1.0; }, 6, {0}));
  CHECK_FALSE(zero_average_check([&](int x, long long) { return s.f(1, x) + s.f(2, x); }, 6, {0}));
}

TEST_CASE("Q_N equals W_N on the flat cluster") {
  const BaseGraph g = build_cycle(16);
  const Spectrum s = spectrum_for(g);
  const TestFunction tf({Mode{2, Coefficient::constant(1)}, Mode{5, Coefficient::constant(0.5)}});
  const long long T = 16 * 10;
  const HarmonicExtension ext(s, tf, 16, T);
  CHECK(q_n_statistic(Cluster(16), ext) == 0.0);
  const double q = q_n_statistic(Cluster::half_cylinder(16, 10), ext);
  CHECK(q == doctest::Approx(w_n_closed_form(tf, s, 16, T)).epsilon(1e-9));
  // Partial layers are summed sitewise.
  Cluster c = Cluster::half_cylinder(16, 2);
  c.insert(3, 3);
  c.insert(4, 5);
  double direct = 0;
  for (const auto& [x, y] : c.sites()) direct += ext(x, y) * ext(x, y);
  CHECK(q_n_statistic(c, ext) == doctest::Approx(direct / (16.0 * 16.0)).epsilon(1e-12));
}

TEST_CASE("W_N approaches the variance target as N grows") {
  const TestFunction tf({Mode{2, Coefficient::constant(1)}});
  const double target = 0.11252397032864826;
  double prev = 1;
  for (int n : {64, 128, 256}) {
    const Spectrum s = closed_form_cycle(n);
    const double gap = std::abs(w_n_closed_form(tf, s, n, static_cast<long long>(n) * n) - target);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 2e-3);
}

TEST_CASE("martingale traces") {
  const BaseGraph g = build_cycle(8);
  const Spectrum s = spectrum_for(g);
  const WalkContext ctx(g, s);
  RunOptions o;
  o.keep_log = true;
  const TestFunction tf({Mode{2, Coefficient::constant(1)}});
  const HarmonicExtension ext(s, tf, 8, 64);
  const auto m = martingale_trace_psi(*run(ctx, 64, 3, o).log, ext);
  CHECK(m.size() == 65);
  CHECK(m[0] == 0.0);
  const LayerHitFunction H(s, 0, 4);
  const auto mz = martingale_trace_hzeta(*run_stopped(ctx, 64, 4, 3, o).log, H, 8);
  CHECK(mz.size() == 65);
  CHECK(mz[0] == 0.0);
  for (std::size_t t = 1; t < mz.size(); ++t) {
    CHECK(mz[t] - mz[t - 1] >= -1.0 / 8 - 1e-12);
    CHECK(mz[t] - mz[t - 1] <= 1 + 1e-12);
  }
}

TEST_CASE("corridor width and inner-bound level") {
  CHECK(ell_star_constant(1) == doctest::Approx(2 * std::sqrt(5.0)));
  CHECK(ell_star(64, 4096, 1) == doctest::Approx(2 * std::sqrt(5.0) * std::sqrt(64 * 2 * std::log(64.0))));
  CHECK(log_term(64, 4096) == doctest::Approx(2 * std::log(64.0)));
  CHECK(log_term(64, 32) == doctest::Approx(std::log(64.0)));
  // T <= N: the log branch of the max.
  CHECK(delta_n(50, 40, 100, 1.5) == doctest::Approx(1.5 * std::log(50.0)));
  CHECK(delta_n(64, 1 << 20, 500, 2) == doctest::Approx(2 * delta_n(64, 1 << 20, 500, 1)));
}

TEST_CASE("a-priori tail bound") {
  CHECK(apriori_tail_bound(10, 10, 5) == doctest::Approx(0.0021).epsilon(1e-12));
  CHECK(apriori_tail_bound(10, 10, 5.7) == apriori_tail_bound(10, 10, 5));
  CHECK(apriori_tail_bound(16, 5, 0) == 1.0);
  CHECK(apriori_tail_bound(16, 5, 5) == 0.0);
  for (int N : {8, 16})
    for (int T = 1; T <= 60; T += 7)
      for (int h = 0; h <= 10; ++h) {
        const double b = apriori_tail_bound(N, T, h);
        if (T < h + 1) {
          CHECK(b == 0.0);
        } else {
          CHECK(std::abs(b - static_cast<double>(exact_bound(N, T, h))) <= 1e-12 * std::max(1e-300, b) + 1e-300);
        }
      }
  double prev = 2;
  for (double h = 0; h <= 30; h += 0.5) {
    const double b = apriori_tail_bound(16, 160, h);
    CHECK(b <= prev);
    prev = b;
  }
  for (long long T = 10; T <= 1000; T += 10) CHECK(apriori_tail_bound(16, T, 6) >= apriori_tail_bound(16, T - 10, 6));
  const double huge = apriori_tail_bound(1000, 1000000000LL, 50);
  CHECK(std::isfinite(huge));
}

TEST_CASE("bound report") {
  const BoundReport r = bound_report(64, 4096, 200, 1, 1, 3);
  CHECK(r.ell_star == doctest::Approx(ell_star(64, 4096, 1)));
  CHECK(r.delta_n == doctest::Approx(delta_n(64, 4096, 200, 1)));
  CHECK(r.apriori_bound == apriori_tail_bound(64, 4096, 3));
}
