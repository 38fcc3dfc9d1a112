#include "idla/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "idla/error.hpp"

namespace idla {

void KahanSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v))
    comp_ += (sum_ - t) + v;
  else
    comp_ += (v - t) + sum_;
  sum_ = t;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) fail(ErrorKind::invalid_parameter, "KS statistic needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - F, F - i / n});
  }
  return d;
}

double chi_square_p(double stat, double dof) {
  if (!(dof > 0)) fail(ErrorKind::invalid_parameter, "chi-square needs dof > 0");
  if (stat <= 0) return 1.0;
  return boost::math::gamma_q(dof / 2, stat / 2);
}

namespace {

// Groups adjacent bins so that every group's weight reaches min_weight; a
// short tail is merged into the previous group.
std::vector<std::vector<std::size_t>> pool(const std::vector<double>& weight, double min_weight) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> cur;
  double acc = 0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    cur.push_back(i);
    acc += weight[i];
    if (acc >= min_weight) {
      groups.push_back(cur);
      cur.clear();
      acc = 0;
    }
  }
  if (!cur.empty()) {
    if (groups.empty())
      groups.push_back(cur);
    else
      groups.back().insert(groups.back().end(), cur.begin(), cur.end());
  }
  return groups;
}

}  // namespace

ChiSquare chi_square_gof(const std::vector<long long>& counts, const std::vector<double>& probs,
                         double min_expected) {
  if (counts.size() != probs.size() || counts.empty())
    fail(ErrorKind::invalid_parameter, "counts and probabilities must align");
  double total = 0;
  for (long long c : counts) total += static_cast<double>(c);
  std::vector<double> expected(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) expected[i] = probs[i] * total;
  const auto groups = pool(expected, min_expected);
  ChiSquare r;
  if (groups.size() < 2) return r;  // a single cell carries no information
  for (const auto& g : groups) {
    double o = 0, e = 0;
    for (std::size_t i : g) {
      o += static_cast<double>(counts[i]);
      e += expected[i];
    }
    if (e > 0) r.stat += (o - e) * (o - e) / e;
  }
  r.dof = static_cast<int>(groups.size()) - 1;
  r.p = chi_square_p(r.stat, r.dof);
  return r;
}

ChiSquare chi_square_uniform(const std::vector<long long>& counts) {
  return chi_square_gof(counts, std::vector<double>(counts.size(), 1.0 / static_cast<double>(counts.size())));
}

ChiSquare chi_square_homogeneity(const std::vector<long long>& a, const std::vector<long long>& b,
                                 double min_expected) {
  if (a.size() != b.size()) fail(ErrorKind::invalid_parameter, "histograms must align");
  double na = 0, nb = 0;
  for (long long v : a) na += static_cast<double>(v);
  for (long long v : b) nb += static_cast<double>(v);
  if (na == 0 || nb == 0) fail(ErrorKind::invalid_parameter, "empty histogram");
  // Pool on the smaller expected count of the two rows.
  std::vector<double> weight(a.size());
  const double smaller = std::min(na, nb) / (na + nb);
  for (std::size_t i = 0; i < a.size(); ++i) weight[i] = static_cast<double>(a[i] + b[i]) * smaller;
  const auto groups = pool(weight, min_expected);
  ChiSquare r;
  if (groups.size() < 2) return r;
  for (const auto& g : groups) {
    double oa = 0, ob = 0;
    for (std::size_t i : g) {
      oa += static_cast<double>(a[i]);
      ob += static_cast<double>(b[i]);
    }
    const double col = oa + ob;
    const double ea = col * na / (na + nb), eb = col * nb / (na + nb);
    if (ea > 0) r.stat += (oa - ea) * (oa - ea) / ea;
    if (eb > 0) r.stat += (ob - eb) * (ob - eb) / eb;
  }
  r.dof = static_cast<int>(groups.size()) - 1;
  r.p = chi_square_p(r.stat, r.dof);
  return r;
}

StatSummary summarize(const std::vector<double>& samples, std::optional<double> sigma2) {
  if (samples.size() < 2) fail(ErrorKind::invalid_parameter, "variance needs at least two samples");
  StatSummary s;
  s.count = static_cast<long long>(samples.size());
  const double M = static_cast<double>(samples.size());
  KahanSum sum;
  for (double v : samples) sum.add(v);
  s.mean = sum.value() / M;
  KahanSum sq;
  for (double v : samples) sq.add((v - s.mean) * (v - s.mean));
  s.variance = sq.value() / (M - 1);
  s.variance_se = std::sqrt(2.0 / M) * s.variance;
  s.mean_se = std::sqrt(s.variance / M);
  if (sigma2) {
    if (!(*sigma2 > 0)) fail(ErrorKind::invalid_parameter, "target variance must be positive");
    const double sd = std::sqrt(*sigma2);
    s.ks = ks_statistic(samples, [sd](double x) { return normal_cdf(x / sd); });
  }
  return s;
}

double quantile(std::vector<double> samples, double p) {
  if (samples.empty()) fail(ErrorKind::invalid_parameter, "quantile of empty sample");
  if (!(p > 0 && p <= 1)) fail(ErrorKind::invalid_parameter, "quantile level must lie in (0,1]");
  std::sort(samples.begin(), samples.end());
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(samples.size())));
  return samples[std::max<std::size_t>(rank, 1) - 1];
}

OriginFit fit_through_origin(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorKind::invalid_parameter, "fit needs >= 2 aligned points");
  double sxy = 0, sxx = 0, mean = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
    mean += y[i];
  }
  mean /= static_cast<double>(y.size());
  OriginFit f;
  f.slope = sxy / sxx;
  double res = 0, tot = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    res += (y[i] - f.slope * x[i]) * (y[i] - f.slope * x[i]);
    tot += (y[i] - mean) * (y[i] - mean);
  }
  f.r2 = tot > 0 ? 1 - res / tot : 1.0;
  return f;
}

}  // namespace idla
