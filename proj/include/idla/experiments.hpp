#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "idla/graph.hpp"
#include "idla/harmonic.hpp"
#include "idla/stats.hpp"

namespace idla {

struct GraphConfig {
  std::string family = "cycle";
  std::vector<int> params{8};
  std::string path;
  std::optional<double> a_N;
  BaseGraph build() const;
  // Same family with the size parameter (first parameter) replaced.
  BaseGraph build_size(int size) const;
};

struct Tolerances {
  double variance_rel = 0.2;
  double ks_max = 0.06;
  double gap_var_frac = 0.1;
  double p_min = 1e-3;
  double n_se = 3.0;          // error bars added to every tolerance verdict
  double slab_max_diff = 1e-8;
  double coverage = 0.99;     // corridor coverage for the fitted constant
};

struct ExperimentConfig {
  std::string name;
  GraphConfig graph;
  std::vector<int> sizes;
  double y0 = 1.0;
  std::vector<Mode> modes{Mode{}};
  long long replicates = 100;
  std::uint64_t master_seed = 1;
  double fastforward_eps = 1e-9;
  int threads = 0;  // 0 = hardware concurrency
  long long T = 0;
  std::vector<double> h_grid{3, 4, 5, 6, 7, 8};
  long long level = 10;
  long long trials = 100000;
  std::vector<long long> stop_heights{2, 5};
  std::vector<long long> T_values{16, 64};
  std::vector<std::string> graphs;
  long long resamples = 1000;
  long long permutations = 100;
  long long coupling_trials = 100;
  long long init_shift = 5;
  double corridor_C = 1.0;
  double nu = 1.0;
  int zeta1 = 0;
  long long zeta2 = 4;
  long long window_lo = -12;
  std::vector<std::pair<int, long long>> starts{{0, 3}, {3, 0}, {5, -6}};
  long long mc_walks = 100000;
  bool negative_control = false;
  Tolerances tol;
  std::string output_dir = ".";
  std::string source_text;  // raw config bytes, for hashing and echo
  nlohmann::json source_json = nlohmann::json::object();
};

// Unknown tables or keys raise parse-error.
ExperimentConfig config_from_json(const nlohmann::json& j, const std::string& source_text = "");
ExperimentConfig config_from_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
TestFunction test_function(const ExperimentConfig& cfg);

int resolve_threads(int threads);

// Runs f(i) for i = 0..count-1 on `threads` workers and returns the results in
// index order. The first exception by index is rethrown after all workers join.
template <class R, class F>
std::vector<R> parallel_map(long long count, int threads, F&& f) {
  std::vector<R> out(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<long long> next{0};
  auto worker = [&] {
    for (long long i; (i = next.fetch_add(1)) < count;) {
      try {
        out[static_cast<std::size_t>(i)] = f(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(resolve_threads(threads), static_cast<int>(std::max(1LL, count))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// Output of every driver: machine-readable summary, per-row CSV, and an
// overall verdict under the configured tolerances.
struct ExperimentResult {
  nlohmann::json summary;
  std::string csv;
  bool pass = false;
};

// Formats a double with 17 significant digits (round-trip exact).
std::string fmt(double v);

ExperimentResult exp_gff_clt(const ExperimentConfig& cfg);
ExperimentResult exp_max_fluct(const ExperimentConfig& cfg);
ExperimentResult exp_apriori_tail(const ExperimentConfig& cfg);
ExperimentResult exp_hit_uniformity(const ExperimentConfig& cfg);
ExperimentResult exp_abelian_suite(const ExperimentConfig& cfg);
ExperimentResult exp_hzeta_validation(const ExperimentConfig& cfg);
// Zero-mean checks of M_N(T) for psi and of M_zeta(T) for the stopped process.
ExperimentResult exp_martingale(const ExperimentConfig& cfg);
// Settlement histograms of the last particle under two fast-forward tolerances.
ExperimentResult exp_fastforward_fidelity(const ExperimentConfig& cfg, double eps_a, double eps_b);

ExperimentResult run_experiment(const std::string& name, const ExperimentConfig& cfg);
const std::vector<std::string>& experiment_names();

}  // namespace idla
