#pragma once

#include <vector>

#include "idla/cluster.hpp"
#include "idla/harmonic.hpp"
#include "idla/idla.hpp"
#include "idla/spectral.hpp"

namespace idla {

enum class PairingPath { general, zero_average };
enum class PairingNorm { sqrt_N_aN, N };

struct PairingResult {
  double raw = 0;
  double normalized = 0;
  int K = 0;
  long long T = 0;
  double a_N = 1;
};

// <<D_T, f>>. The general path sums f over A \ R_{T/N} minus R_{T/N} \ A; the
// zero-average path sums f over A_+ and is valid only when every level of f
// sums to zero.
PairingResult discrepancy_pairing(const Cluster& c, const CylinderFunction& f, long long T, double a_n, int K,
                                  PairingPath path = PairingPath::zero_average,
                                  PairingNorm norm = PairingNorm::sqrt_N_aN);

// True iff |sum_x f(x, y)| <= 1e-9 N on every listed level.
bool zero_average_check(const CylinderFunction& f, int n, const std::vector<long long>& levels);

// Q_N = (1/(N a_N)) sum over A_+ of psi^2, with full layers summed in closed form.
double q_n_statistic(const Cluster& c, const HarmonicExtension& ext);
double w_n_closed_form(const TestFunction& tf, const Spectrum& s, double a_n, long long T);

// M(t) = (1/N) <<D_t, psi>> for t = 0..T.
std::vector<double> martingale_trace_psi(const TrajectoryLog& log, const HarmonicExtension& ext);
// M_zeta(t) = sum_{s <= t} (H_zeta(settlement_s) - 1/N) for t = 0..T.
std::vector<double> martingale_trace_hzeta(const TrajectoryLog& log, const LayerHitFunction& h, int n);

// log N + log_+(T/N)
double log_term(double N, double T);
double t_sharp(double N, double tau_mix);
double delta_n(double N, double T, double tau_mix, double C);
double ell_star_constant(double nu);  // 2 sqrt(nu + 4)
double ell_star(double N, double T, double nu);
double ell_star(double N, double T, double nu, double C1);
// min(1, N^-floor(h) binom(T, floor(h) + 1)) evaluated in log space.
double apriori_tail_bound(double N, long long T, double h);

struct BoundReport {
  double N = 0;
  double T = 0;
  double nu = 0;
  double C = 0;
  double C1 = 0;
  long long tau_mix = 0;
  double t_sharp = 0;
  double L_T = 0;
  double delta_n = 0;
  double ell_star = 0;
  double apriori_h = 0;
  double apriori_bound = 0;
};

BoundReport bound_report(double N, long long T, long long tau_mix, double nu, double C, double apriori_h);

}  // namespace idla
