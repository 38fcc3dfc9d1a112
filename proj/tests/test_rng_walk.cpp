#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <map>

#include "idla/graph.hpp"
#include "idla/harmonic.hpp"
#include "idla/rng.hpp"
#include "idla/spectral.hpp"
#include "idla/stats.hpp"
#include "idla/walk.hpp"

using namespace idla;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32::generate({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams replay and separate") {
  WalkStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  bool differ_c = false, differ_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u32();
    CHECK(x == b.next_u32());
    differ_c |= x != c.next_u32();
    differ_d |= x != d.next_u32();
  }
  CHECK(differ_c);
  CHECK(differ_d);
  CHECK(a.words_consumed() == 100);
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
}

TEST_CASE("uniform_below is unbiased") {
  WalkStream st(11, 0);
  std::vector<long long> counts(6, 0);
  for (int i = 0; i < 600000; ++i) ++counts[st.uniform_below(6)];
  CHECK(chi_square_uniform(counts).p > 1e-4);
  for (int i = 0; i < 1000; ++i) {
    const double u = st.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("single step matches the cylinder kernel") {
  for (const BaseGraph& g : {build_cycle(6), build_generalized_petersen(12, 5), build_torus(3, 2)}) {
    const WalkContext ctx(g, spectrum_for(g));
    const int d = g.degree();
    const int x0 = 1;
    // Outcomes: up, down, stay, then each neighbor.
    std::vector<long long> counts(3 + d, 0);
    std::vector<double> probs{0.25, 0.25, 0.25};
    for (int i = 0; i < d; ++i) probs.push_back(0.25 / d);
    const auto nb = g.neighbors(x0);
    WalkStream st(3, 0);
    for (int i = 0; i < 400000; ++i) {
      CylinderState s{x0, 5};
      ctx.step(s, st);
      if (s.y == 6) ++counts[0];
      else if (s.y == 4) ++counts[1];
      else if (s.x == x0) ++counts[2];
      else ++counts[3 + (std::find(nb.begin(), nb.end(), s.x) - nb.begin())];
    }
    CHECK(chi_square_gof(counts, probs).p > 1e-4);
  }
}

TEST_CASE("fast-forward cap") {
  const double l2 = 0.5 + 0.5 * std::cos(2 * M_PI / 8);
  const double tau = 1 / (1 - l2);
  CHECK(fastforward_cap(8, l2, 1e-9) == static_cast<long long>(std::ceil(tau * std::log(2 / 1e-9))));
  const long long s0 = fastforward_cap(8, l2, 0);
  CHECK(0.5 * std::sqrt(7.0) * std::pow(l2, s0) <= std::ldexp(1.0, -64));
  CHECK(0.5 * std::sqrt(7.0) * std::pow(l2, s0 - 1) > std::ldexp(1.0, -64));
}

namespace {

// Landing-column counts of `samples` excursions from (x0, y0) to level m.
std::vector<long long> landing(const WalkContext& ctx, int x0, long long y0, long long m, int samples, std::uint64_t seed) {
  std::vector<long long> counts(static_cast<std::size_t>(ctx.n()), 0);
  for (int i = 0; i < samples; ++i) {
    WalkStream st(seed, static_cast<std::uint64_t>(i));
    ++counts[first_hit_level({x0, y0}, ctx, st, m)];
  }
  return counts;
}

std::vector<double> hit_probs(const Spectrum& s, int x0, long long y0, long long m) {
  std::vector<double> p;
  for (int z = 0; z < s.size(); ++z) p.push_back(LayerHitFunction(s, z, m)(x0, y0));
  return p;
}

}  // namespace

TEST_CASE("excursion landing law matches the spectral layer-hitting probabilities") {
  const BaseGraph g = build_cycle(8);
  const Spectrum s = spectrum_for(g);
  for (double eps : {1e-9, 1e-3, 0.0}) {
    const WalkContext ctx(g, s, eps);
    CHECK(chi_square_gof(landing(ctx, 2, 0, 1, 100000, 5), hit_probs(s, 2, 0, 1)).p > 1e-4);
    CHECK(chi_square_gof(landing(ctx, 0, -3, 2, 100000, 6), hit_probs(s, 0, -3, 2)).p > 1e-4);
  }
  const BaseGraph p = build_generalized_petersen(12, 5);
  const Spectrum sp = spectrum_for(p);
  const WalkContext cp(p, sp);
  CHECK(chi_square_gof(landing(cp, 13, 0, 1, 100000, 7), hit_probs(sp, 13, 0, 1)).p > 1e-4);
  CHECK(chi_square_gof(landing(cp, 0, 2, 4, 100000, 8), hit_probs(sp, 0, 2, 4)).p > 1e-4);
}

TEST_CASE("bulk horizontal moves follow powers of the lazy kernel") {
  for (const BaseGraph& g : {build_cycle(7), build_torus(3, 2), build_generalized_petersen(5, 2)}) {
    const WalkContext ctx(g, spectrum_for(g));
    const int n = g.n_vertices();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x) {
      P(x, x) = 0.5;
      for (int y : g.neighbors(x)) P(x, y) += 0.5 / g.degree();
    }
    const int h = 3;
    Eigen::MatrixXd Ph = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < h; ++i) Ph = Ph * P;
    std::vector<long long> counts(n, 0);
    WalkStream st(9, 0);
    for (int i = 0; i < 200000; ++i) ++counts[ctx.horizontal_moves(0, h, st)];
    std::vector<double> probs(n);
    for (int y = 0; y < n; ++y) probs[y] = Ph(0, y);
    CHECK(chi_square_gof(counts, probs).p > 1e-4);
  }
}

TEST_CASE("release site is uniform") {
  std::vector<long long> counts(10, 0);
  for (int i = 0; i < 100000; ++i) {
    WalkStream st(1, static_cast<std::uint64_t>(i));
    const CylinderState s = release_site(st, 10);
    CHECK(s.y == 0);
    ++counts[s.x];
  }
  CHECK(chi_square_uniform(counts).p > 1e-4);
}

TEST_CASE("fast-forward with different eps keeps the landing law") {
  const BaseGraph g = build_cycle(8);
  const Spectrum s = spectrum_for(g);
  const WalkContext a(g, s, 0.0), b(g, s, 1e-6);
  CHECK(chi_square_homogeneity(landing(a, 3, -2, 3, 100000, 10), landing(b, 3, -2, 3, 100000, 11)).p > 1e-4);
}
