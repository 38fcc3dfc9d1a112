#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace idla {

// Neumaier-compensated running sum.
class KahanSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

double normal_cdf(double x);
// One-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
// Upper tail P(chi2_dof > stat) via the regularized incomplete gamma function.
double chi_square_p(double stat, double dof);

struct ChiSquare {
  double stat = 0;
  int dof = 0;
  double p = 1;
};

// Goodness of fit against bin probabilities; adjacent bins are pooled until
// each expected count reaches min_expected.
ChiSquare chi_square_gof(const std::vector<long long>& counts, const std::vector<double>& probs,
                         double min_expected = 5.0);
ChiSquare chi_square_uniform(const std::vector<long long>& counts);
// Two-sample homogeneity test on a 2 x k table with the same pooling rule.
ChiSquare chi_square_homogeneity(const std::vector<long long>& a, const std::vector<long long>& b,
                                 double min_expected = 5.0);

struct StatSummary {
  long long count = 0;
  double mean = 0;
  double variance = 0;     // unbiased
  double variance_se = 0;  // sqrt(2/M) * variance
  double mean_se = 0;
  std::optional<double> ks;  // against N(0, sigma2) when a target variance is supplied
};

// Compensated two-pass moments in index order, so the result is independent
// of how the samples were produced. Needs at least two samples.
StatSummary summarize(const std::vector<double>& samples, std::optional<double> sigma2 = std::nullopt);

// Nearest-rank quantile: the ceil(p n)-th smallest sample.
double quantile(std::vector<double> samples, double p);

struct OriginFit {
  double slope = 0;
  double r2 = 0;
};
// Least squares y = slope * x; r2 = 1 - SS_res / SS_tot with SS_tot about the mean of y.
OriginFit fit_through_origin(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace idla
