#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "idla/config.hpp"
#include "idla/error.hpp"
#include "idla/experiments.hpp"
#include "idla/graph.hpp"
#include "idla/idla.hpp"
#include "idla/manifest.hpp"
#include "idla/observables.hpp"
#include "idla/snapshot.hpp"
#include "idla/spectral.hpp"
#include "idla/walk.hpp"

using namespace idla;
using nlohmann::json;

namespace {

struct Globals {
  std::string config;
  std::string out = ".";
  int threads = -1;  // -1: keep the config value
  std::optional<std::uint64_t> seed;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::missing_file, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig load(const Globals& g) {
  ExperimentConfig cfg = g.config.empty() ? config_from_text("") : load_config(g.config);
  if (g.threads >= 0) cfg.threads = g.threads;
  if (g.seed) cfg.master_seed = *g.seed;
  if (g.out != ".") cfg.output_dir = g.out;
  return cfg;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

RunManifest manifest_for(const std::string& command, const ExperimentConfig& cfg) {
  RunManifest m(command, cfg.source_text, cfg.source_json);
  m.set("master_seed", cfg.master_seed);
  m.set("threads", resolve_threads(cfg.threads));
  return m;
}

int cmd_spectrum(const Globals& g) {
  const ExperimentConfig cfg = load(g);
  const BaseGraph graph = cfg.graph.build();
  const Spectrum s = spectrum_for(graph);
  const double a = cfg.graph.a_N ? *cfg.graph.a_N : default_a_N(graph, s);
  RunManifest m = manifest_for("spectrum", cfg);
  m.set("graph", graph.label());
  m.add_output(out_path(cfg, "spectrum.csv"), spectrum_csv(s, a));
  m.write(out_path(cfg, "spectrum_manifest.json"));
  return 0;
}

int cmd_simulate(const Globals& g) {
  const ExperimentConfig cfg = load(g);
  const BaseGraph graph = cfg.graph.build();
  const Spectrum s = spectrum_for(graph);
  const double a = cfg.graph.a_N ? *cfg.graph.a_N : default_a_N(graph, s);
  const long long T = cfg.T > 0 ? cfg.T : graph.n_vertices() * static_cast<long long>(std::floor(cfg.y0 * a));
  const WalkContext ctx(graph, s, cfg.fastforward_eps);
  RunOptions opts;
  opts.audit = true;
  const RunResult res = run(ctx, T, cfg.master_seed, opts);
  RunManifest m = manifest_for("simulate", cfg);
  m.set("graph", graph.label());
  m.set("T", T);
  m.set("inner_radius", res.cluster.inner_radius());
  m.set("outer_height", res.cluster.outer_height());
  m.add_output(out_path(cfg, "snapshot.txt"), write_snapshot(graph, res.cluster, T));
  m.write(out_path(cfg, "simulate_manifest.json"));
  return 0;
}

int cmd_experiment(const Globals& g, const std::string& name, bool strict) {
  const ExperimentConfig cfg = load(g);
  const ExperimentResult r = run_experiment(name, cfg);
  RunManifest m = manifest_for("experiment " + name, cfg);
  m.set("pass", r.pass);
  m.add_output(out_path(cfg, name + ".csv"), r.csv);
  m.add_output(out_path(cfg, name + "_summary.json"), r.summary.dump(2) + "\n");
  m.write(out_path(cfg, name + "_manifest.json"));
  std::cout << name << ": " << (r.pass ? "pass" : "fail") << "\n";
  return strict && !r.pass ? 1 : 0;
}

// Structural checks on the configured graph and its spectrum, then the abelian property suite.
int cmd_validate(const Globals& g) {
  const ExperimentConfig cfg = load(g);
  const BaseGraph graph = cfg.graph.family == "file" ? load_adjacency_file(cfg.graph.path) : cfg.graph.build();
  const ValidationReport v = validate(graph);
  json ledger{{"graph", graph.label()},
              {"regular", v.regular},
              {"symmetric", v.symmetric},
              {"irreflexive", v.irreflexive},
              {"connected", v.connected},
              {"failures", v.failures},
              {"vertex_transitive_by_construction", graph.transitive_by_construction()}};
  bool ok = v.ok();
  if (ok) {
    const Spectrum s = spectrum_for(graph);
    check_spectrum(graph, s, 1e-8);
    ledger["spectrum_checked"] = true;
    ExperimentConfig suite = cfg;
    if (suite.graphs.empty()) {
      std::string spec = cfg.graph.family == "file" ? "file:" + cfg.graph.path : cfg.graph.family;
      if (cfg.graph.family != "file")
        for (int p : cfg.graph.params) spec += ":" + std::to_string(p);
      suite.graphs = {spec};
    }
    const ExperimentResult r = exp_abelian_suite(suite);
    ledger["properties"] = r.summary["tests"];
    ok = ok && r.pass;
  }
  ledger["pass"] = ok;
  RunManifest m = manifest_for("validate", cfg);
  m.add_output(out_path(cfg, "validate_ledger.json"), ledger.dump(2) + "\n");
  m.write(out_path(cfg, "validate_manifest.json"));
  std::cout << "validate: " << (ok ? "pass" : "fail") << "\n";
  return ok ? 0 : 1;
}

int cmd_export(const Globals& g, const std::string& snapshot) {
  const Snapshot s = load_snapshot_file(snapshot);
  const std::string text = export_geometry(s).dump(2) + "\n";
  const std::string dir = g.out;
  write_file_atomic((std::filesystem::path(dir) / "geometry.json").string(), text);
  return 0;
}

int cmd_bounds(const Globals& g, double N, long long T, double nu, double C, double h, long long tau) {
  if (tau <= 0) {
    if (g.config.empty()) fail(ErrorKind::invalid_parameter, "bounds needs --tau-mix or a --config graph");
    const ExperimentConfig cfg = load(g);
    const BaseGraph graph = cfg.graph.build();
    tau = mixing_time(graph, spectrum_for(graph));
    N = graph.n_vertices();
  }
  if (!(N >= 1) || T < 0) fail(ErrorKind::invalid_parameter, "bounds needs N >= 1 and T >= 0");
  const BoundReport r = bound_report(N, T, tau, nu, C, h);
  const json j{{"N", r.N},        {"T", r.T},         {"nu", r.nu},     {"C", r.C},
               {"C1", r.C1},      {"tau_mix", r.tau_mix}, {"t_sharp", r.t_sharp}, {"L_T", r.L_T},
               {"delta_n", r.delta_n}, {"ell_star", r.ell_star}, {"apriori_h", r.apriori_h},
               {"apriori_bound", r.apriori_bound}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int report(ErrorKind kind, const std::string& msg) {
  const int code = exit_code(kind);
  std::cerr << json{{"error", to_string(kind)}, {"message", msg}, {"exit_code", code}}.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Internal DLA on cylinder graphs"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "TOML config file");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--threads", g.threads, "worker threads (0 = auto)");
  app.add_option("--seed", g.seed, "master seed override");

  auto* spectrum = app.add_subcommand("spectrum", "write the spectrum CSV");
  auto* simulate = app.add_subcommand("simulate", "run one cluster and write a snapshot");
  auto* experiment = app.add_subcommand("experiment", "run a named experiment");
  std::string name;
  bool strict = false;
  experiment->add_option("name", name, "experiment name")->required()->check(CLI::IsMember(experiment_names()));
  experiment->add_flag("--strict", strict, "exit 1 when the verdict fails");
  auto* validate_cmd = app.add_subcommand("validate", "graph checks and abelian property suite");
  auto* export_cmd = app.add_subcommand("export-geometry", "snapshot to geometry JSON");
  std::string snapshot;
  export_cmd->add_option("snapshot", snapshot, "snapshot file")->required();
  auto* bounds = app.add_subcommand("bounds", "print the bound report as JSON");
  double N = 0, nu = 1, C = 1, h = 3;
  long long T = 0, tau = 0;
  bounds->add_option("--N", N, "base size");
  bounds->add_option("--T", T, "particles")->required();
  bounds->add_option("--nu", nu, "probability exponent");
  bounds->add_option("--C", C, "corridor constant");
  bounds->add_option("--height", h, "a-priori tail height");
  bounds->add_option("--tau-mix", tau, "mixing time (computed from --config when absent)");
  for (auto* sub : {spectrum, simulate, experiment, validate_cmd, export_cmd, bounds}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(ErrorKind::parse_error, e.what());
  }
  try {
    if (*spectrum) return cmd_spectrum(g);
    if (*simulate) return cmd_simulate(g);
    if (*experiment) return cmd_experiment(g, name, strict);
    if (*validate_cmd) return cmd_validate(g);
    if (*export_cmd) return cmd_export(g, snapshot);
    if (*bounds) return cmd_bounds(g, N, T, nu, C, h, tau);
  } catch (const Error& e) {
    return report(e.kind(), e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return report(ErrorKind::io_error, e.what());
  } catch (const std::exception& e) {
    return report(ErrorKind::numeric_failure, e.what());
  }
  return 0;
}
