#include <doctest.h>

#include <cmath>

#include "idla/error.hpp"
#include "idla/stats.hpp"

using namespace idla;

TEST_CASE("compensated sum") {
  KahanSum s;
  s.add(1e16);
  for (int i = 0; i < 10; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 10.0);
}

TEST_CASE("normal cdf and chi-square tails") {
  CHECK(normal_cdf(0) == 0.5);
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(normal_cdf(-8) == doctest::Approx(6.22096057427178e-16).epsilon(1e-9));
  CHECK(chi_square_p(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-10));
  CHECK(chi_square_p(18.307038053275146, 10) == doctest::Approx(0.05).epsilon(1e-10));
  CHECK(chi_square_p(0, 3) == 1.0);
  CHECK_THROWS_AS(chi_square_p(1, 0), Error);
}

TEST_CASE("chi-square tests") {
  const ChiSquare u = chi_square_uniform({100, 100, 100, 100});
  CHECK(u.stat == 0);
  CHECK(u.dof == 3);
  CHECK(u.p == 1.0);
  const ChiSquare g = chi_square_gof({30, 10}, {0.5, 0.5});
  CHECK(g.stat == doctest::Approx(10.0));
  CHECK(g.dof == 1);
  // Sparse bins are pooled with their neighbours.
  const ChiSquare pooled = chi_square_gof({50, 1, 1, 48}, {0.49, 0.01, 0.01, 0.49});
  CHECK(pooled.dof < 3);
  const ChiSquare h = chi_square_homogeneity({10, 20, 30}, {10, 20, 30});
  CHECK(h.stat == doctest::Approx(0.0));
  CHECK(h.p == doctest::Approx(1.0));
  const ChiSquare hd = chi_square_homogeneity({100, 0}, {0, 100});
  CHECK(hd.p < 1e-10);
}

TEST_CASE("summaries, quantiles, fits") {
  const StatSummary s = summarize({1, 2, 3, 4});
  CHECK(s.mean == 2.5);
  CHECK(s.variance == doctest::Approx(5.0 / 3));
  CHECK(s.variance_se == doctest::Approx(std::sqrt(2.0 / 4) * 5.0 / 3));
  CHECK(s.mean_se == doctest::Approx(std::sqrt(5.0 / 3 / 4)));
  CHECK_FALSE(s.ks.has_value());
  CHECK_THROWS_AS(summarize({1.0}), Error);
  CHECK(summarize({-1, 1}, 1.0).ks.has_value());
  CHECK(ks_statistic({0.5}, [](double x) { return std::clamp(x, 0.0, 1.0); }) == doctest::Approx(0.5));
  CHECK(quantile({5, 1, 4, 2, 3}, 0.4) == 2);
  CHECK(quantile({5, 1, 4, 2, 3}, 1.0) == 5);
  CHECK(quantile({5, 1, 4, 2, 3}, 0.99) == 5);
  const OriginFit f = fit_through_origin({1, 2, 3}, {2, 4, 6});
  CHECK(f.slope == doctest::Approx(2));
  CHECK(f.r2 == doctest::Approx(1));
  CHECK(fit_through_origin({1, 2, 3}, {3, 1, 2}).r2 < 0.5);
}
