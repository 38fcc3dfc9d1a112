#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "idla/error.hpp"
#include "idla/experiments.hpp"

using namespace idla;

TEST_CASE("parallel_map keeps index order and rethrows the first failure") {
  const auto v = parallel_map<long long>(1000, 4, [](long long i) { return i * i; });
  for (long long i = 0; i < 1000; ++i) CHECK(v[i] == i * i);
  try {
    parallel_map<int>(50, 3, [](long long i) -> int {
      if (i == 7 || i == 30) throw std::runtime_error("boom " + std::to_string(i));
      return 0;
    });
    FAIL("no exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "boom 7");
  }
  CHECK(parallel_map<int>(0, 2, [](long long) { return 1; }).empty());
}

TEST_CASE("gff smoke run") {
  ExperimentConfig c = config_from_text("[graph]\nfamily = \"cycle\"\nn = 16\n[experiment]\nreplicates = 4\ny0 = 0.5\n");
  const ExperimentResult r = exp_gff_clt(c);
  CHECK(std::isfinite(r.summary["pairing_phi"]["variance"].get<double>()));
  CHECK(r.summary.contains("config_hash"));
  CHECK(r.summary["T"] == 16 * 8);
  CHECK(r.csv.rfind("replicate,T,pairing_phi,pairing_psi,inner_radius,outer_height,Q_N\n", 0) == 0);
  c.replicates = 1;
  CHECK_THROWS_AS(exp_gff_clt(c), Error);
}

TEST_CASE("experiment output does not depend on the thread count") {
  ExperimentConfig c = config_from_text(
      "[graph]\nfamily = \"cycle\"\nn = 8\n[experiment]\nreplicates = 24\nT = 40\nh_grid = [2, 3, 4]\n"
      "trials = 3000\nlevel = 4\nresamples = 20\npermutations = 5\ncoupling_trials = 5\nT_values = [16]\n"
      "graphs = [\"cycle:8\"]\n");
  for (const char* name : {"gff_clt", "apriori_tail", "hit_uniformity", "abelian", "martingale"}) {
    CAPTURE(name);
    c.threads = 1;
    const ExperimentResult a = run_experiment(name, c);
    c.threads = 5;
    const ExperimentResult b = run_experiment(name, c);
    CHECK(a.csv == b.csv);
    CHECK(a.summary.dump() == b.summary.dump());
  }
}

TEST_CASE("hit-uniformity negative control is detected") {
  ExperimentConfig c = config_from_text("[experiment]\ngraphs = [\"cycle:8\"]\nlevel = 3\ntrials = 20000\nnegative_control = true\n");
  const ExperimentResult r = exp_hit_uniformity(c);
  CHECK(r.summary["graphs"][0]["p"].get<double>() < 1e-3);
  CHECK_FALSE(r.pass);
}

TEST_CASE("unknown experiment name") {
  CHECK_THROWS_AS(run_experiment("nope", ExperimentConfig{}), Error);
  CHECK(experiment_names().size() == 8);
}
