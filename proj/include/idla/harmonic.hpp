#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "idla/graph.hpp"
#include "idla/spectral.hpp"

namespace idla {

// Scalar coefficient alpha_k(y): constant, polynomial c0 + c1 y + ..., or a
// table with linear interpolation (held constant outside the nodes).
class Coefficient {
 public:
  enum class Kind { constant, polynomial, table };

  static Coefficient constant(double c);
  static Coefficient polynomial(std::vector<double> coeffs);
  static Coefficient table(std::vector<double> ys, std::vector<double> values);

  double operator()(double y) const;
  // Upper bound on |alpha'| over [lo, hi].
  double lipschitz(double lo, double hi) const;
  Kind kind() const { return kind_; }
  const std::vector<double>& params() const { return a_; }
  const std::vector<double>& nodes() const { return ys_; }

 private:
  Kind kind_ = Kind::constant;
  std::vector<double> a_;
  std::vector<double> ys_;
};

struct Mode {
  int k = 2;
  Coefficient alpha = Coefficient::constant(1.0);
};

// phi(x, y) = sum_k alpha_k(y) f_k(x) over modes k >= 2.
class TestFunction {
 public:
  explicit TestFunction(std::vector<Mode> modes);
  const std::vector<Mode>& modes() const { return modes_; }
  int max_mode() const;
  double phi(const Spectrum& s, int x, double y) const;
  // Lattice extension phi(x, y / a_N).
  double lattice(const Spectrum& s, double a_n, int x, long long y) const;

 private:
  std::vector<Mode> modes_;
};

// psi(x, y) = sum_k alpha_k(T/(N a_N)) f_k(x) exp(q_k^N (y - T/N) / a_N).
class HarmonicExtension {
 public:
  HarmonicExtension(const Spectrum& s, const TestFunction& tf, double a_n, long long T);

  double operator()(int x, double y) const;
  double anchor() const { return anchor_; }  // T/N
  double a_N() const { return a_n_; }
  long long T() const { return T_; }
  const Spectrum& spectrum() const { return *s_; }
  const std::vector<int>& modes() const { return modes_; }
  const std::vector<double>& amplitudes() const { return amp_; }
  // q_k^N / a_N = arccosh(2 - lambda_k), per mode.
  const std::vector<double>& rates() const { return rate_; }
  // sum_x psi(x, y)^2 = N sum_k alpha_k^2 exp(2 q_k^N (y - T/N) / a_N).
  double layer_square_sum(double y) const;

 private:
  const Spectrum* s_;
  double a_n_;
  long long T_;
  double anchor_;
  std::vector<int> modes_;
  std::vector<double> amp_;
  std::vector<double> rate_;
};

double psi_eval(const HarmonicExtension& ext, int x, double y);

// H_zeta(x, y) = (1/N) sum_k f_k(x) f_k(zeta1) exp(q_k (y - zeta2)) for y <= zeta2, 0 above.
class LayerHitFunction {
 public:
  LayerHitFunction(const Spectrum& s, int zeta1, long long zeta2);
  double operator()(int x, long long y) const;
  int zeta1() const { return zeta1_; }
  long long zeta2() const { return zeta2_; }

 private:
  const Spectrum* s_;
  int zeta1_;
  long long zeta2_;
  std::vector<double> coef_;  // f_k(zeta1) / N
  std::vector<double> rate_;  // arccosh(2 - lambda_k)
};

double h_zeta_eval(const LayerHitFunction& h, int x, long long y);

double beta_eval(const TestFunction& tf, const HarmonicExtension& ext, int k, double y);

using CylinderFunction = std::function<double(int, long long)>;

// max over x and y_lo <= y <= y_hi of |(K f)(x, y) - f(x, y)|, K the cylinder walk kernel.
double harmonicity_residual(const CylinderFunction& f, const BaseGraph& g, long long y_lo, long long y_hi);

// sum_k alpha_k(y0)^2 (1 - exp(-2 gamma_k y0)) / (2 gamma_k); gammas align with tf.modes().
double variance_sigma2(const TestFunction& tf, double y0, const std::vector<double>& gammas);
double green_slice(double mu, double y, double y2);
double fgf_variance(const std::vector<double>& coeffs, const std::vector<double>& nus, double s);

// Layer-hitting probabilities from a sparse solve of the harmonic system on
// levels y_bottom < y < zeta2 with the delta at level zeta2 and the value 1/N
// at level y_bottom. The truncation error at level y is at most
// exp(-q_2 (y - y_bottom)) by the maximum principle.
class SlabSolution {
 public:
  SlabSolution(int n, long long y_bottom, long long zeta1, long long zeta2, Eigen::MatrixXd values)
      : n_(n), y_bottom_(y_bottom), zeta1_(zeta1), zeta2_(zeta2), values_(std::move(values)) {}
  double at(int x, long long y) const;
  long long y_bottom() const { return y_bottom_; }

 private:
  int n_;
  long long y_bottom_;
  long long zeta1_;
  long long zeta2_;
  Eigen::MatrixXd values_;  // row y - y_bottom - 1, column x
};

SlabSolution solve_layer_hit_slab(const BaseGraph& g, int zeta1, long long zeta2, long long y_bottom);

}  // namespace idla
