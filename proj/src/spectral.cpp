#include "idla/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "idla/error.hpp"

namespace idla {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Real eigenvector of the lazy cycle kernel on Z_n indexed by frequency m.
double cycle_basis(int n, int m, int c) {
  if (m == 0) return 1.0;
  if (2 * m == n) return (c % 2 == 0) ? 1.0 : -1.0;
  const long long phase = (static_cast<long long>(std::min(m, n - m)) * c) % n;
  const double angle = kTwoPi * static_cast<double>(phase) / n;
  return 2 * m < n ? std::numbers::sqrt2 * std::cos(angle) : std::numbers::sqrt2 * std::sin(angle);
}

// Groups consecutive (descending) eigenvalues whose spacing is within the
// relative block tolerance. Returns [begin, end) index pairs.
std::vector<std::pair<int, int>> blocks_of(const std::vector<double>& ev, double block_tol) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(ev.size());
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || std::abs(ev[i] - ev[i - 1]) > block_tol * std::max(1.0, std::abs(ev[i]))) {
      out.emplace_back(start, i);
      start = i;
    }
  }
  return out;
}

}  // namespace

Spectrum::Spectrum(std::vector<double> eigenvalues, Matrix vectors, Provenance provenance,
                   std::vector<std::vector<int>> frequencies)
    : eigenvalues_(std::move(eigenvalues)),
      vectors_(std::move(vectors)),
      provenance_(provenance),
      frequencies_(std::move(frequencies)) {}

const std::vector<int>& Spectrum::frequency(int k) const {
  static const std::vector<int> empty;
  return frequencies_.empty() ? empty : frequencies_[k - 1];
}

Spectrum closed_form_cycle(int n) {
  if (n < 3) fail(ErrorKind::invalid_parameter, "cycle needs N >= 3");
  std::vector<double> ev(n);
  std::vector<std::vector<int>> freq(n);
  Spectrum::Matrix V(n, n);
  // f_1 = 1; f_{2j} = sqrt2 cos, f_{2j+1} = sqrt2 sin; f_N = (-1)^x for even N.
  auto fill = [&](int col, int m) {
    ev[col] = 0.5 + 0.5 * std::cos(kTwoPi * std::min(m, n - m) / n);
    freq[col] = {m};
    for (int x = 0; x < n; ++x) V(x, col) = cycle_basis(n, m, x);
  };
  fill(0, 0);
  for (int j = 1; 2 * j < n; ++j) {
    fill(2 * j - 1, j);
    fill(2 * j, n - j);
  }
  if (n % 2 == 0) {
    fill(n - 1, n / 2);
    ev[n - 1] = 0.0;
  }
  return Spectrum(std::move(ev), std::move(V), Provenance::closed_form, std::move(freq));
}

Spectrum closed_form_torus(int n, int dim) {
  if (n < 3 || dim < 1) fail(ErrorKind::invalid_parameter, "torus needs n >= 3 and dim >= 1");
  const BaseGraph g = build_torus(n, dim);  // validates the size
  const int N = g.n_vertices();
  struct Mode {
    std::vector<int> m;
    double lambda;
  };
  std::vector<Mode> modes(N);
  for (int v = 0; v < N; ++v) {
    std::vector<int> m(dim);
    std::vector<double> cosines(dim);
    int rest = v;
    for (int i = 0; i < dim; ++i) {
      m[i] = rest % n;
      rest /= n;
      cosines[i] = std::cos(kTwoPi * std::min(m[i], n - m[i]) / n);
    }
    // Sorted summation keeps equal eigenvalues bitwise equal under permutations of m.
    std::sort(cosines.begin(), cosines.end());
    double sum = 0;
    for (double c : cosines) sum += c;
    // Lexicographic order on m compares coordinate 0 first.
    modes[v] = {m, 0.5 + sum / (2.0 * dim)};
  }
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    return a.m < b.m;
  });
  std::vector<double> ev(N);
  std::vector<std::vector<int>> freq(N);
  Spectrum::Matrix V(N, N);
  for (int k = 0; k < N; ++k) {
    ev[k] = modes[k].lambda;
    freq[k] = modes[k].m;
    for (int x = 0; x < N; ++x) {
      double val = 1.0;
      int rest = x;
      for (int i = 0; i < dim; ++i) {
        val *= cycle_basis(n, modes[k].m[i], rest % n);
        rest /= n;
      }
      V(x, k) = val;
    }
  }
  if (std::abs(ev[N - 1]) < 1e-15) ev[N - 1] = 0.0;
  return Spectrum(std::move(ev), std::move(V), Provenance::closed_form, std::move(freq));
}

Spectrum decompose(const BaseGraph& g, double tol, int vertex_cap) {
  const int N = g.n_vertices();
  if (N > vertex_cap)
    fail(ErrorKind::invalid_parameter,
         "N = " + std::to_string(N) + " exceeds the eigensolver cap " + std::to_string(vertex_cap));
  if (N < 1) fail(ErrorKind::invalid_parameter, "empty graph");
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, N);
  for (int x = 0; x < N; ++x) {
    P(x, x) = 0.5;
    const auto nb = g.neighbors(x);
    for (int y : nb) P(x, y) += 0.5 / static_cast<double>(nb.size());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
  if (es.info() != Eigen::Success) fail(ErrorKind::numeric_failure, "eigensolver did not converge");

  std::vector<double> ev(N);
  Eigen::MatrixXd raw(N, N);
  for (int k = 0; k < N; ++k) {
    ev[k] = es.eigenvalues()(N - 1 - k);
    raw.col(k) = es.eigenvectors().col(N - 1 - k);
  }

  Spectrum::Matrix V(N, N);
  const double scale = std::sqrt(static_cast<double>(N));
  for (auto [b, e] : blocks_of(ev, kBlockTolerance)) {
    const int m = e - b;
    const Eigen::MatrixXd B = raw.middleCols(b, m);
    std::vector<Eigen::VectorXd> basis;
    for (int seed = 0; seed < N && static_cast<int>(basis.size()) < m; ++seed) {
      Eigen::VectorXd v = B * B.row(seed).transpose();  // projection of e_seed onto the block
      for (const auto& u : basis) v -= u.dot(v) * u;
      for (const auto& u : basis) v -= u.dot(v) * u;
      const double norm = v.norm();
      if (norm < 1e-6) continue;
      v /= norm;
      const double cutoff = 1e-9 * v.cwiseAbs().maxCoeff();
      for (int i = 0; i < N; ++i)
        if (std::abs(v(i)) > cutoff) {
          if (v(i) < 0) v = -v;
          break;
        }
      basis.push_back(v);
    }
    if (static_cast<int>(basis.size()) != m)
      fail(ErrorKind::numeric_failure, "could not fix a basis for a degenerate eigenspace");
    for (int j = 0; j < m; ++j) V.col(b + j) = basis[j] * scale;
    // Eigenvalues inside a block are reported as the block mean.
    const double mean = std::accumulate(ev.begin() + b, ev.begin() + e, 0.0) / m;
    for (int j = b; j < e; ++j) ev[j] = mean;
  }
  // lambda_1 = 1 is simple for a connected graph and its eigenvector is constant.
  if (std::abs(ev[0] - 1.0) <= tol) {
    ev[0] = 1.0;
    V.col(0).setOnes();
  }
  for (double& l : ev)
    if (l < 0 && l > -tol) l = 0.0;
  Spectrum s(std::move(ev), std::move(V), Provenance::numeric);
  check_spectrum(g, s, tol);
  return s;
}

Spectrum spectrum_for(const BaseGraph& g, int vertex_cap) {
  if (g.family() == Family::cycle) return closed_form_cycle(g.params()[0]);
  if (g.family() == Family::torus) return closed_form_torus(g.params()[0], g.params()[1]);
  return decompose(g, 1e-9, vertex_cap);
}

void check_spectrum(const BaseGraph& g, const Spectrum& s, double tol) {
  const int N = s.size();
  if (N != g.n_vertices()) fail(ErrorKind::numeric_failure, "spectrum size does not match graph");
  if (std::abs(s.eigenvalue(1) - 1.0) > tol) fail(ErrorKind::numeric_failure, "lambda_1 != 1");
  if (N > 1 && s.eigenvalue(2) >= 1.0 - tol)
    fail(ErrorKind::numeric_failure, "lambda_1 is not simple (graph disconnected?)");
  if (s.eigenvalue(N) < -tol) fail(ErrorKind::numeric_failure, "negative eigenvalue");
  for (int k = 2; k <= N; ++k)
    if (s.eigenvalue(k) > s.eigenvalue(k - 1) + tol)
      fail(ErrorKind::numeric_failure, "eigenvalues not descending");
  const auto& F = s.vectors();
  for (int x = 0; x < N; ++x)
    if (std::abs(F(x, 0) - 1.0) > tol) fail(ErrorKind::numeric_failure, "f_1 is not constant");
  const Eigen::MatrixXd G = F.transpose() * F / static_cast<double>(N);
  const double ortho = (G - Eigen::MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff();
  if (ortho > tol)
    fail(ErrorKind::numeric_failure, "orthonormality violated by " + std::to_string(ortho));
  double resid = 0;
  for (int x = 0; x < N; ++x) {
    const auto nb = g.neighbors(x);
    const double w = 0.5 / static_cast<double>(nb.size());
    for (int k = 0; k < N; ++k) {
      double pf = 0.5 * F(x, k);
      for (int y : nb) pf += w * F(y, k);
      resid = std::max(resid, std::abs(pf - s.eigenvalues()[k] * F(x, k)));
    }
  }
  if (resid > tol) fail(ErrorKind::numeric_failure, "eigen-residual " + std::to_string(resid));
}

SpectrumDiff compare_spectra(const Spectrum& a, const Spectrum& b, double block_tol) {
  if (a.size() != b.size()) fail(ErrorKind::invalid_parameter, "spectra of different sizes");
  const int N = a.size();
  SpectrumDiff d;
  for (int k = 0; k < N; ++k)
    d.eigenvalue_max_diff =
        std::max(d.eigenvalue_max_diff, std::abs(a.eigenvalues()[k] - b.eigenvalues()[k]));
  const auto ba = blocks_of(a.eigenvalues(), block_tol);
  const auto bb = blocks_of(b.eigenvalues(), block_tol);
  if (ba != bb) {
    d.projector_max_diff = std::numeric_limits<double>::infinity();
    return d;
  }
  d.blocks = static_cast<int>(ba.size());
  for (auto [s, e] : ba) {
    const Eigen::MatrixXd Fa = a.vectors().middleCols(s, e - s);
    const Eigen::MatrixXd Fb = b.vectors().middleCols(s, e - s);
    const Eigen::MatrixXd Pa = Fa * Fa.transpose() / static_cast<double>(N);
    const Eigen::MatrixXd Pb = Fb * Fb.transpose() / static_cast<double>(N);
    d.projector_max_diff = std::max(d.projector_max_diff, (Pa - Pb).cwiseAbs().maxCoeff());
  }
  return d;
}

double vertical_rate(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    fail(ErrorKind::invalid_parameter, "vertical_rate needs lambda in [0,1]");
  // arccosh(1 + u) written with log1p to keep precision as lambda -> 1.
  const double u = 1.0 - lambda;
  return std::log1p(u + std::sqrt(u * (2.0 + u)));
}

double rescaled_rate(double lambda, double a_n) {
  if (!(a_n > 0)) fail(ErrorKind::invalid_parameter, "a_N must be positive");
  return a_n * vertical_rate(lambda);
}

double default_a_N(const BaseGraph& g, const Spectrum& s) {
  if (g.family() == Family::cycle) return g.params()[0];
  if (g.family() == Family::torus) return g.params()[0];
  if (s.size() < 2) fail(ErrorKind::invalid_parameter, "a_N needs at least two vertices");
  return 1.0 / std::sqrt(2.0 * (1.0 - s.eigenvalue(2)));
}

namespace {

double tv_row(const Spectrum& s, int x, long long t) {
  const int N = s.size();
  if (t == 0) return 1.0 - 1.0 / N;
  const auto& F = s.vectors();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(N);
  for (int k = 1; k < N; ++k) {
    const double p = std::pow(s.eigenvalues()[k], static_cast<double>(t));
    if (std::abs(p) > 1e-300) c(k) = p * F(x, k);
  }
  const Eigen::VectorXd dev = F * c / static_cast<double>(N);
  return 0.5 * dev.cwiseAbs().sum();
}

}  // namespace

double tv_to_uniform(const BaseGraph& g, const Spectrum& s, long long t) {
  if (g.transitive_by_construction()) return tv_row(s, 0, t);
  double worst = 0;
  for (int x = 0; x < s.size(); ++x) worst = std::max(worst, tv_row(s, x, t));
  return worst;
}

long long mixing_time(const BaseGraph& g, const Spectrum& s) {
  const int N = s.size();
  constexpr double threshold = 0.25 + 1e-12;
  auto ok = [&](long long t) { return tv_to_uniform(g, s, t) <= threshold; };
  if (ok(0)) return 0;
  const double tau_rel = N > 1 ? 1.0 / (1.0 - s.eigenvalue(2)) : 1.0;
  const double cap = 64.0 * tau_rel * std::log(4.0 * N) + 1.0;
  long long hi = 1;
  while (!ok(hi)) {
    hi *= 2;
    if (static_cast<double>(hi) > 2 * cap)
      fail(ErrorKind::numeric_failure, "mixing time search exceeded 64 tau_rel log(4N)");
  }
  long long lo = hi / 2;  // ok(lo) is false (or lo = 0)
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  if (static_cast<double>(hi) > cap)
    fail(ErrorKind::numeric_failure, "mixing time exceeds 64 tau_rel log(4N)");
  return hi;
}

std::optional<double> gamma_closed_form(const BaseGraph& g, const Spectrum& s, int k) {
  if (!s.has_frequencies()) return std::nullopt;
  if (g.family() != Family::cycle && g.family() != Family::torus) return std::nullopt;
  const int n = g.params()[0];
  const int dim = g.family() == Family::torus ? g.params()[1] : 1;
  double m2 = 0;
  for (int m : s.frequency(k)) {
    const double f = std::min(m, n - m);
    m2 += f * f;
  }
  return std::numbers::pi * std::sqrt(m2) * std::sqrt(2.0 / dim);
}

ScalingBundle build_scaling(const BaseGraph& g, const Spectrum& s, int K, std::optional<double> a_override) {
  const int N = s.size();
  if (K < 1 || K > N) fail(ErrorKind::invalid_parameter, "K must lie in [1, N]");
  if (N < 2) fail(ErrorKind::invalid_parameter, "scaling needs N >= 2");
  ScalingBundle b;
  b.N = N;
  b.a_N = a_override ? *a_override : default_a_N(g, s);
  if (!(b.a_N > 0)) fail(ErrorKind::invalid_parameter, "a_N must be positive");
  for (int k = 1; k <= K; ++k) b.lambdas.push_back(s.eigenvalue(k));
  for (int k = 2; k <= K; ++k) {
    b.gamma.push_back(b.a_N * std::sqrt(2.0 * (1.0 - s.eigenvalue(k))));
    b.q_rates.push_back(rescaled_rate(s.eigenvalue(k), b.a_N));
  }
  b.tau_rel = 1.0 / (1.0 - s.eigenvalue(2));
  b.tau_mix = mixing_time(g, s);
  const double logN = std::log(static_cast<double>(N));
  b.t_sharp = N * std::sqrt(static_cast<double>(b.tau_mix)) * logN * logN;
  return b;
}

bool AssumptionReport::ok() const {
  if (!gap_vanishes) return false;
  for (const auto& m : modes)
    if (m.diverging || m.collapsing) return false;
  return true;
}

AssumptionReport check_assumption_spectral(const std::string& label,
                                           const std::function<BaseGraph(int)>& make,
                                           const std::vector<int>& sizes, int K) {
  if (sizes.size() < 2) fail(ErrorKind::invalid_parameter, "need at least two sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1]) fail(ErrorKind::invalid_parameter, "sizes must be increasing");
  AssumptionReport r;
  r.family = label;
  r.sizes = sizes;
  std::vector<std::vector<double>> lambdas;
  for (int n : sizes) {
    const BaseGraph g = make(n);
    const Spectrum s = spectrum_for(g);
    if (K > s.size()) fail(ErrorKind::invalid_parameter, "K exceeds graph size");
    r.n_vertices.push_back(s.size());
    r.a_N.push_back(default_a_N(g, s));
    r.spectral_gap.push_back(1.0 - s.eigenvalue(2));
    lambdas.emplace_back(s.eigenvalues().begin(), s.eigenvalues().begin() + K);
  }
  r.gap_vanishes = r.spectral_gap.back() < 0.9 * r.spectral_gap.front();
  const std::size_t L = sizes.size();
  for (int k = 2; k <= K; ++k) {
    ModeConvergence m;
    m.k = k;
    for (std::size_t i = 0; i < L; ++i)
      m.sequence.push_back(r.a_N[i] * std::sqrt(2.0 * (1.0 - lambdas[i][k - 1])));
    const double last = m.sequence[L - 1];
    const double prev = m.sequence[L - 2];
    m.last_gap = std::abs(last - prev);
    const double al = r.a_N[L - 1] * r.a_N[L - 1];
    const double ap = r.a_N[L - 2] * r.a_N[L - 2];
    m.extrapolated = al != ap ? (al * last - ap * prev) / (al - ap) : last;
    m.collapsing = last < 1e-6 || (prev > 0 && last / prev < 0.6);
    bool growing = last / std::max(prev, 1e-300) > 1.5;
    if (L >= 3) {
      const double prev_gap = std::abs(prev - m.sequence[L - 3]);
      growing = growing || (m.last_gap > 1e-3 * std::abs(last) && m.last_gap >= prev_gap && last > prev);
    }
    m.diverging = growing || !std::isfinite(last);
    r.modes.push_back(m);
  }
  return r;
}

AssumptionReport check_assumption_spectral(const std::string& family, const std::vector<int>& sizes,
                                           int K, const std::vector<int>& fixed) {
  return check_assumption_spectral(
      family,
      [&](int n) {
        std::vector<int> p{n};
        p.insert(p.end(), fixed.begin(), fixed.end());
        return build_family(family, p);
      },
      sizes, K);
}

std::string spectrum_csv(const Spectrum& s, double a_n) {
  std::ostringstream out;
  out.precision(17);
  out << "k,lambda_k,nu_k,q_k,q_k_rescaled,gamma_k_estimate\n";
  for (int k = 1; k <= s.size(); ++k) {
    const double l = std::clamp(s.eigenvalue(k), 0.0, 1.0);
    out << k << ',' << s.eigenvalue(k) << ',' << s.nu(k) << ',' << vertical_rate(l) << ','
        << rescaled_rate(l, a_n) << ',' << a_n * std::sqrt(2.0 * (1.0 - l)) << '\n';
  }
  return out.str();
}

}  // namespace idla
