#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "idla/graph.hpp"

namespace idla {

enum class Provenance { closed_form, numeric };

// Eigenpairs of the lazy kernel P_N. Modes are numbered k = 1..N with
// eigenvalues descending; f_1 is the constant function 1 and every f_k has
// (1/N) sum_x f_k(x)^2 = 1.
class Spectrum {
 public:
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Spectrum(std::vector<double> eigenvalues, Matrix vectors, Provenance provenance,
           std::vector<std::vector<int>> frequencies = {});

  int size() const { return static_cast<int>(eigenvalues_.size()); }
  double eigenvalue(int k) const { return eigenvalues_[k - 1]; }
  double nu(int k) const { return 1.0 - eigenvalues_[k - 1]; }
  double f(int k, int x) const { return vectors_(x, k - 1); }
  // Row x holds (f_1(x), ..., f_N(x)).
  const Matrix& vectors() const { return vectors_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  Provenance provenance() const { return provenance_; }
  // Frequency vector m of mode k for closed-form cycle/torus spectra, empty otherwise.
  const std::vector<int>& frequency(int k) const;
  bool has_frequencies() const { return !frequencies_.empty(); }

 private:
  std::vector<double> eigenvalues_;
  Matrix vectors_;
  Provenance provenance_;
  std::vector<std::vector<int>> frequencies_;
};

inline constexpr int kDefaultVertexCap = 4096;
inline constexpr double kBlockTolerance = 1e-9;

// Dense symmetric eigendecomposition of P_N with a deterministic basis inside
// each multiplicity block.
Spectrum decompose(const BaseGraph& g, double tol = 1e-9, int vertex_cap = kDefaultVertexCap);
Spectrum closed_form_cycle(int n);
Spectrum closed_form_torus(int n, int dim);
// Closed form for cycle and torus families, decompose() otherwise.
Spectrum spectrum_for(const BaseGraph& g, int vertex_cap = kDefaultVertexCap);

// Throws numeric-failure when a spectrum violates its invariants at tolerance tol.
void check_spectrum(const BaseGraph& g, const Spectrum& s, double tol);

struct SpectrumDiff {
  double eigenvalue_max_diff = 0;
  double projector_max_diff = 0;
  int blocks = 0;
};
// Basis-independent comparison: eigenvalue multisets and the orthogonal
// projectors onto each multiplicity block.
SpectrumDiff compare_spectra(const Spectrum& a, const Spectrum& b, double block_tol = kBlockTolerance);

// q = arccosh(2 - lambda).
double vertical_rate(double lambda);
// q^N = a_N * arccosh(2 - lambda).
double rescaled_rate(double lambda, double a_n);
double default_a_N(const BaseGraph& g, const Spectrum& s);

// Total-variation distance to uniform after t steps, maximized over the rows
// that must be examined (row 0 for built-in families, all rows otherwise).
double tv_to_uniform(const BaseGraph& g, const Spectrum& s, long long t);
long long mixing_time(const BaseGraph& g, const Spectrum& s);

// gamma_k limit for cycle/torus modes with a_N = n: pi |m| sqrt(2/dim), m folded to min(m, n-m).
std::optional<double> gamma_closed_form(const BaseGraph& g, const Spectrum& s, int k);

struct ScalingBundle {
  double a_N = 1;
  int N = 0;
  std::vector<double> gamma;    // gamma[k-2] = a_N sqrt(2(1 - lambda_k)), k = 2..K
  std::vector<double> q_rates;  // q_rates[k-2] = q_k^N, k = 2..K
  double tau_rel = 1;
  long long tau_mix = 0;
  double t_sharp = 0;
  std::vector<double> lambdas;  // lambda_1..lambda_K

  // Eigenvalue of the rescaled operator L_N: 2 a_N^2 (1 - lambda_k).
  double laplacian_eigenvalue(int k) const { return 2 * a_N * a_N * (1 - lambdas[k - 1]); }
};

ScalingBundle build_scaling(const BaseGraph& g, const Spectrum& s, int K,
                            std::optional<double> a_override = std::nullopt);

struct ModeConvergence {
  int k = 0;
  std::vector<double> sequence;  // a_N sqrt(2(1 - lambda_k)) per size
  double last_gap = 0;
  double extrapolated = 0;  // Richardson step assuming O(a_N^-2) error
  bool diverging = false;
  bool collapsing = false;
};

struct AssumptionReport {
  std::string family;
  std::vector<int> sizes;
  std::vector<int> n_vertices;
  std::vector<double> a_N;
  std::vector<double> spectral_gap;
  bool gap_vanishes = true;
  std::vector<ModeConvergence> modes;
  bool ok() const;
};

AssumptionReport check_assumption_spectral(const std::string& label,
                                           const std::function<BaseGraph(int)>& make,
                                           const std::vector<int>& sizes, int K);
// family is a built-in family name; each size becomes the first parameter and
// `fixed` supplies the rest (torus dim, Petersen k).
AssumptionReport check_assumption_spectral(const std::string& family, const std::vector<int>& sizes,
                                           int K, const std::vector<int>& fixed = {});

// CSV with columns k,lambda_k,nu_k,q_k,q_k_rescaled,gamma_k_estimate.
std::string spectrum_csv(const Spectrum& s, double a_n);

}  // namespace idla
