#include "idla/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "idla/error.hpp"

namespace idla {

Coefficient Coefficient::constant(double c) {
  Coefficient a;
  a.kind_ = Kind::constant;
  a.a_ = {c};
  return a;
}

Coefficient Coefficient::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) fail(ErrorKind::invalid_parameter, "polynomial coefficient needs at least one term");
  Coefficient a;
  a.kind_ = Kind::polynomial;
  a.a_ = std::move(coeffs);
  return a;
}

Coefficient Coefficient::table(std::vector<double> ys, std::vector<double> values) {
  if (ys.size() != values.size() || ys.size() < 2)
    fail(ErrorKind::invalid_parameter, "table coefficient needs >= 2 (y, value) nodes");
  for (std::size_t i = 1; i < ys.size(); ++i)
    if (!(ys[i] > ys[i - 1])) fail(ErrorKind::invalid_parameter, "table nodes must be increasing");
  Coefficient a;
  a.kind_ = Kind::table;
  a.ys_ = std::move(ys);
  a.a_ = std::move(values);
  return a;
}

double Coefficient::operator()(double y) const {
  switch (kind_) {
    case Kind::constant: return a_[0];
    case Kind::polynomial: {
      double v = 0;
      for (auto it = a_.rbegin(); it != a_.rend(); ++it) v = v * y + *it;
      return v;
    }
    case Kind::table: {
      if (y <= ys_.front()) return a_.front();
      if (y >= ys_.back()) return a_.back();
      const auto i = static_cast<std::size_t>(std::upper_bound(ys_.begin(), ys_.end(), y) - ys_.begin());
      const double t = (y - ys_[i - 1]) / (ys_[i] - ys_[i - 1]);
      return a_[i - 1] + t * (a_[i] - a_[i - 1]);
    }
  }
  return 0;
}

double Coefficient::lipschitz(double lo, double hi) const {
  switch (kind_) {
    case Kind::constant: return 0;
    case Kind::polynomial: {
      // |p'(y)| <= sum_j j |c_j| max(|lo|,|hi|)^(j-1)
      const double r = std::max(std::abs(lo), std::abs(hi));
      double bound = 0, power = 1;
      for (std::size_t j = 1; j < a_.size(); ++j) {
        bound += static_cast<double>(j) * std::abs(a_[j]) * power;
        power *= r;
      }
      return bound;
    }
    case Kind::table: {
      double slope = 0;
      for (std::size_t i = 1; i < ys_.size(); ++i)
        if (ys_[i] >= lo && ys_[i - 1] <= hi)
          slope = std::max(slope, std::abs((a_[i] - a_[i - 1]) / (ys_[i] - ys_[i - 1])));
      return slope;
    }
  }
  return 0;
}

TestFunction::TestFunction(std::vector<Mode> modes) : modes_(std::move(modes)) {
  if (modes_.empty()) fail(ErrorKind::invalid_parameter, "test function needs at least one mode");
  for (const auto& m : modes_)
    if (m.k < 2) fail(ErrorKind::invalid_parameter, "test function modes must have k >= 2");
}

int TestFunction::max_mode() const {
  int k = 0;
  for (const auto& m : modes_) k = std::max(k, m.k);
  return k;
}

double TestFunction::phi(const Spectrum& s, int x, double y) const {
  double v = 0;
  for (const auto& m : modes_) v += m.alpha(y) * s.f(m.k, x);
  return v;
}

double TestFunction::lattice(const Spectrum& s, double a_n, int x, long long y) const {
  return phi(s, x, static_cast<double>(y) / a_n);
}

HarmonicExtension::HarmonicExtension(const Spectrum& s, const TestFunction& tf, double a_n, long long T)
    : s_(&s), a_n_(a_n), T_(T), anchor_(static_cast<double>(T) / s.size()) {
  if (!(a_n > 0)) fail(ErrorKind::invalid_parameter, "a_N must be positive");
  if (tf.max_mode() > s.size()) fail(ErrorKind::invalid_parameter, "mode index exceeds N");
  for (const auto& m : tf.modes()) {
    modes_.push_back(m.k);
    amp_.push_back(m.alpha(anchor_ / a_n));
    rate_.push_back(vertical_rate(std::clamp(s.eigenvalue(m.k), 0.0, 1.0)));
  }
}

double HarmonicExtension::operator()(int x, double y) const {
  double v = 0;
  for (std::size_t i = 0; i < modes_.size(); ++i)
    v += amp_[i] * s_->f(modes_[i], x) * std::exp(rate_[i] * (y - anchor_));
  return v;
}

double HarmonicExtension::layer_square_sum(double y) const {
  // Cross terms vanish by orthogonality only for distinct modes; repeated
  // mode indices are merged first.
  std::vector<std::pair<int, double>> merged;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const double term = amp_[i] * std::exp(rate_[i] * (y - anchor_));
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& p) { return p.first == modes_[i]; });
    if (it == merged.end())
      merged.emplace_back(modes_[i], term);
    else
      it->second += term;
  }
  double sum = 0;
  for (const auto& [k, v] : merged) sum += v * v;
  return s_->size() * sum;
}

double psi_eval(const HarmonicExtension& ext, int x, double y) { return ext(x, y); }

LayerHitFunction::LayerHitFunction(const Spectrum& s, int zeta1, long long zeta2)
    : s_(&s), zeta1_(zeta1), zeta2_(zeta2) {
  if (zeta1 < 0 || zeta1 >= s.size()) fail(ErrorKind::invalid_parameter, "zeta_1 out of range");
  const int N = s.size();
  coef_.resize(N);
  rate_.resize(N);
  for (int k = 1; k <= N; ++k) {
    coef_[k - 1] = s.f(k, zeta1) / N;
    rate_[k - 1] = k == 1 ? 0.0 : vertical_rate(std::clamp(s.eigenvalue(k), 0.0, 1.0));
  }
}

double LayerHitFunction::operator()(int x, long long y) const {
  if (y > zeta2_) return 0.0;
  const double dy = static_cast<double>(y - zeta2_);
  const auto row = s_->vectors().row(x);
  double v = 0;
  for (std::size_t k = 0; k < coef_.size(); ++k) v += coef_[k] * row(static_cast<Eigen::Index>(k)) * std::exp(rate_[k] * dy);
  if (v < 0) {
    if (v < -1e-10) fail(ErrorKind::numeric_failure, "layer-hitting value below -1e-10");
    v = 0;
  }
  if (v > 1) {
    if (v > 1 + 1e-10) fail(ErrorKind::numeric_failure, "layer-hitting value above 1 + 1e-10");
    v = 1;
  }
  return v;
}

double h_zeta_eval(const LayerHitFunction& h, int x, long long y) { return h(x, y); }

double beta_eval(const TestFunction& tf, const HarmonicExtension& ext, int k, double y) {
  const auto& modes = tf.modes();
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (modes[i].k == k)
      return modes[i].alpha(y / ext.a_N()) - ext.amplitudes()[i] * std::exp(ext.rates()[i] * (y - ext.anchor()));
  fail(ErrorKind::invalid_parameter, "mode " + std::to_string(k) + " not in test function");
}

double harmonicity_residual(const CylinderFunction& f, const BaseGraph& g, long long y_lo, long long y_hi) {
  double worst = 0;
  for (long long y = y_lo; y <= y_hi; ++y)
    for (int x = 0; x < g.n_vertices(); ++x) {
      const auto nb = g.neighbors(x);
      double horizontal = 0;
      for (int z : nb) horizontal += f(z, y);
      const double fx = f(x, y);
      const double kf =
          0.25 * f(x, y + 1) + 0.25 * f(x, y - 1) + 0.5 * (0.5 * fx + 0.5 * horizontal / static_cast<double>(nb.size()));
      worst = std::max(worst, std::abs(kf - fx));
    }
  return worst;
}

double variance_sigma2(const TestFunction& tf, double y0, const std::vector<double>& gammas) {
  if (gammas.size() != tf.modes().size()) fail(ErrorKind::invalid_parameter, "one gamma per mode required");
  double s = 0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const double g = gammas[i];
    if (!(g > 0)) fail(ErrorKind::invalid_parameter, "gamma_k must be positive");
    const double a = tf.modes()[i].alpha(y0);
    s += a * a * -std::expm1(-2 * g * y0) / (2 * g);
  }
  return s;
}

double green_slice(double mu, double y, double y2) {
  if (!(mu > 0)) fail(ErrorKind::invalid_parameter, "mu must be positive");
  if (y < 0 || y2 < 0) fail(ErrorKind::invalid_parameter, "green_slice needs y, y' >= 0");
  const double r = std::sqrt(mu);
  return (std::exp(-r * std::abs(y - y2)) - std::exp(-r * (y + y2))) / (2 * r);
}

double fgf_variance(const std::vector<double>& coeffs, const std::vector<double>& nus, double s) {
  if (coeffs.size() != nus.size()) fail(ErrorKind::invalid_parameter, "one nu per coefficient required");
  if (!(s > 0)) fail(ErrorKind::invalid_parameter, "s must be positive");
  double v = 0;
  for (std::size_t i = 0; i < nus.size(); ++i) {
    if (!(nus[i] > 0)) fail(ErrorKind::invalid_parameter, "nu_k must be positive");
    v += coeffs[i] * coeffs[i] * std::pow(nus[i], -s);
  }
  return v;
}

double SlabSolution::at(int x, long long y) const {
  if (y > zeta2_) return 0.0;
  if (y == zeta2_) return x == zeta1_ ? 1.0 : 0.0;
  if (y <= y_bottom_) return 1.0 / n_;
  return values_(y - y_bottom_ - 1, x);
}

SlabSolution solve_layer_hit_slab(const BaseGraph& g, int zeta1, long long zeta2, long long y_bottom) {
  const int N = g.n_vertices();
  if (zeta1 < 0 || zeta1 >= N) fail(ErrorKind::invalid_parameter, "zeta_1 out of range");
  if (zeta2 - y_bottom < 2) fail(ErrorKind::invalid_parameter, "slab needs at least one interior level");
  const long long levels = zeta2 - y_bottom - 1;
  const long long unknowns = levels * N;
  auto id = [&](int x, long long y) { return static_cast<int>((y - y_bottom - 1) * N + x); };
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  for (long long y = y_bottom + 1; y < zeta2; ++y)
    for (int x = 0; x < N; ++x) {
      const int row = id(x, y);
      const auto nb = g.neighbors(x);
      // u - (1/4)u(y+1) - (1/4)u(y-1) - (1/4)u(x) - (1/(4d)) sum u(x') = 0
      trip.emplace_back(row, row, 1.0 - 0.25);
      for (int z : nb) trip.emplace_back(row, id(z, y), -0.25 / static_cast<double>(nb.size()));
      if (y + 1 == zeta2)
        rhs(row) += x == zeta1 ? 0.25 : 0.0;
      else
        trip.emplace_back(row, id(x, y + 1), -0.25);
      if (y - 1 == y_bottom)
        rhs(row) += 0.25 / N;
      else
        trip.emplace_back(row, id(x, y - 1), -0.25);
    }
  Eigen::SparseMatrix<double> A(unknowns, unknowns);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) fail(ErrorKind::numeric_failure, "slab factorization failed");
  const Eigen::VectorXd u = lu.solve(rhs);
  if (lu.info() != Eigen::Success) fail(ErrorKind::numeric_failure, "slab solve failed");
  Eigen::MatrixXd values(levels, N);
  for (long long y = y_bottom + 1; y < zeta2; ++y)
    for (int x = 0; x < N; ++x) values(y - y_bottom - 1, x) = u(id(x, y));
  return SlabSolution(N, y_bottom, zeta1, zeta2, std::move(values));
}

}  // namespace idla
