#include "idla/observables.hpp"

#include <algorithm>
#include <cmath>

#include "idla/error.hpp"

namespace idla {

PairingResult discrepancy_pairing(const Cluster& c, const CylinderFunction& f, long long T, double a_n, int K,
                                  PairingPath path, PairingNorm norm) {
  const int N = c.base_size();
  PairingResult r;
  r.K = K;
  r.T = T;
  r.a_N = a_n;
  if (path == PairingPath::zero_average) {
    for (const auto& [x, y] : c.sites()) r.raw += f(x, y);
  } else {
    const long long h = T / N;  // R_{T/N} holds the levels <= floor(T/N)
    for (const auto& [x, y] : c.sites())
      if (y > h) r.raw += f(x, y);
    for (long long y = 1; y <= h; ++y)
      for (int x = 0; x < N; ++x)
        if (!c.contains(x, y)) r.raw -= f(x, y);
  }
  r.normalized = norm == PairingNorm::N ? r.raw / N : r.raw / std::sqrt(N * a_n);
  return r;
}

bool zero_average_check(const CylinderFunction& f, int n, const std::vector<long long>& levels) {
  for (long long y : levels) {
    double s = 0;
    for (int x = 0; x < n; ++x) s += f(x, y);
    if (std::abs(s) > 1e-9 * n) return false;
  }
  return true;
}

double q_n_statistic(const Cluster& c, const HarmonicExtension& ext) {
  const int N = c.base_size();
  const long long full = c.inner_radius();
  double sum = 0;
  for (long long y = 1; y <= full; ++y) sum += ext.layer_square_sum(static_cast<double>(y));
  for (const auto& [x, y] : c.sites())
    if (y > full) {
      const double v = ext(x, static_cast<double>(y));
      sum += v * v;
    }
  return sum / (N * ext.a_N());
}

double w_n_closed_form(const TestFunction& tf, const Spectrum& s, double a_n, long long T) {
  const double N = s.size();
  const double y = static_cast<double>(T) / (N * a_n);
  double w = 0;
  for (const auto& m : tf.modes()) {
    const double q = rescaled_rate(std::clamp(s.eigenvalue(m.k), 0.0, 1.0), a_n);
    const double a = m.alpha(y);
    w += a * a * -std::expm1(-2 * q * y) / (a_n * -std::expm1(-2 * q / a_n));
  }
  return w;
}

std::vector<double> martingale_trace_psi(const TrajectoryLog& log, const HarmonicExtension& ext) {
  const double N = ext.spectrum().size();
  std::vector<double> m{0.0};
  m.reserve(log.records.size() + 1);
  double acc = 0;
  for (const auto& r : log.records) {
    acc += ext(r.site.x, static_cast<double>(r.site.y)) / N;
    m.push_back(acc);
  }
  return m;
}

std::vector<double> martingale_trace_hzeta(const TrajectoryLog& log, const LayerHitFunction& h, int n) {
  std::vector<double> m{0.0};
  m.reserve(log.records.size() + 1);
  double acc = 0;
  for (const auto& r : log.records) {
    acc += h(r.site.x, r.site.y) - 1.0 / n;
    m.push_back(acc);
  }
  return m;
}

double log_term(double N, double T) { return std::log(N) + std::max(0.0, std::log(T / N)); }

double t_sharp(double N, double tau_mix) {
  const double l = std::log(N);
  return N * std::sqrt(tau_mix) * l * l;
}

double delta_n(double N, double T, double tau_mix, double C) {
  if (T < 1) fail(ErrorKind::invalid_parameter, "delta_n needs T >= 1");
  const double tm = std::min(T, t_sharp(N, tau_mix));
  return C * std::max(std::log(N), std::sqrt(tm / N * log_term(N, T)));
}

double ell_star_constant(double nu) { return 2 * std::sqrt(nu + 4); }

double ell_star(double N, double T, double nu) { return ell_star(N, T, nu, ell_star_constant(nu)); }

double ell_star(double N, double T, double /*nu*/, double C1) {
  if (T < 1) fail(ErrorKind::invalid_parameter, "ell_star needs T >= 1");
  return C1 * std::sqrt(T / N * log_term(N, T));
}

double apriori_tail_bound(double N, long long T, double h) {
  if (T < 0 || h < 0) fail(ErrorKind::invalid_parameter, "apriori bound needs T >= 0 and h >= 0");
  const double fh = std::floor(h);
  const double k = fh + 1;
  if (static_cast<double>(T) < k) return 0.0;
  const double Td = static_cast<double>(T);
  const double log_binom = std::lgamma(Td + 1) - std::lgamma(k + 1) - std::lgamma(Td - k + 1);
  const double log_bound = log_binom - fh * std::log(N);
  return log_bound >= 0 ? 1.0 : std::exp(log_bound);
}

BoundReport bound_report(double N, long long T, long long tau_mix, double nu, double C, double apriori_h) {
  BoundReport b;
  b.N = N;
  b.T = static_cast<double>(T);
  b.nu = nu;
  b.C = C;
  b.C1 = ell_star_constant(nu);
  b.tau_mix = tau_mix;
  b.t_sharp = t_sharp(N, static_cast<double>(tau_mix));
  b.L_T = log_term(N, b.T);
  b.delta_n = delta_n(N, b.T, static_cast<double>(tau_mix), C);
  b.ell_star = ell_star(N, b.T, nu);
  b.apriori_h = apriori_h;
  b.apriori_bound = apriori_tail_bound(N, T, apriori_h);
  return b;
}

}  // namespace idla
