#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "idla/config.hpp"
#include "idla/error.hpp"
#include "idla/experiments.hpp"
#include "idla/graph.hpp"
#include "idla/idla.hpp"
#include "idla/snapshot.hpp"
#include "idla/spectral.hpp"

using namespace idla;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an idla::Error");
  return ErrorKind::io_error;
}

}  // namespace

TEST_CASE("TOML subset parser") {
  const auto j = parse_toml(R"(# comment
top = 1
[graph]
family = "torus"   # trailing comment
n = 8
dim = 2
a_N = 8.5
[rng]
master_seed = 0xFFFFFFFFFFFFFFFF
[experiment]
sizes = [
  16,
  32, # more
]
flag = true
neg = -3e-2
[[mode]]
k = 2
[[mode]]
k = 3
params = [1.0, "x"]
)");
  CHECK(j["top"] == 1);
  CHECK(j["graph"]["family"] == "torus");
  CHECK(j["graph"]["a_N"] == 8.5);
  CHECK(j["rng"]["master_seed"].get<std::uint64_t>() == 0xFFFFFFFFFFFFFFFFull);
  CHECK(j["experiment"]["sizes"] == nlohmann::json::array({16, 32}));
  CHECK(j["experiment"]["flag"] == true);
  CHECK(j["experiment"]["neg"].get<double>() == doctest::Approx(-0.03));
  CHECK(j["mode"].size() == 2);
  CHECK(j["mode"][1]["params"][1] == "x");
  CHECK(kind_of([] { parse_toml("a = 1\na = 2\n"); }) == ErrorKind::parse_error);
  CHECK(kind_of([] { parse_toml("a = \n"); }) == ErrorKind::parse_error);
  CHECK(kind_of([] { parse_toml("[x\n"); }) == ErrorKind::parse_error);
  CHECK(kind_of([] { parse_toml("s = \"open\n"); }) == ErrorKind::parse_error);
}

TEST_CASE("experiment config rejects unknown keys and bad values") {
  const ExperimentConfig c = config_from_text("[graph]\nfamily = \"petersen\"\nn = 12\nk = 5\n[experiment]\nreplicates = 7\n");
  CHECK(c.graph.build() == build_generalized_petersen(12, 5));
  CHECK(c.replicates == 7);
  CHECK(kind_of([] { config_from_text("[graph]\nfamily = \"cycle\"\nn = 8\nsize = 3\n"); }) == ErrorKind::parse_error);
  CHECK(kind_of([] { config_from_text("[experimnt]\nreplicates = 3\n"); }) == ErrorKind::parse_error);
  CHECK(kind_of([] { config_from_text("[experiment]\nreplicates = \"many\"\n"); }) == ErrorKind::parse_error);
  CHECK(kind_of([] { config_from_text("[graph]\nfamily = \"torus\"\nn = 8\n"); }) == ErrorKind::parse_error);
  CHECK(kind_of([] { config_from_text("[graph]\nfamily = \"cycle\"\nn = -8\n"); }) == ErrorKind::invalid_parameter);
  CHECK(kind_of([] { config_from_text("[rng]\nfastforward_eps = 2.0\n"); }) == ErrorKind::invalid_parameter);
  CHECK(kind_of([] { config_from_text("[[mode]]\nk = 1\n"); }) == ErrorKind::invalid_parameter);
  CHECK(kind_of([] { load_config("no/such/config.toml"); }) == ErrorKind::missing_file);
  CHECK(kind_of([] { config_from_text("[graph]\nfamily = \"file\"\npath = \"no/such.adj\"\n").graph.build(); }) ==
        ErrorKind::missing_file);
}

TEST_CASE("shipped configs load") {
  for (const auto& e : std::filesystem::directory_iterator(IDLA_SOURCE_DIR "/configs")) {
    CAPTURE(e.path().string());
    const ExperimentConfig c = load_config(e.path().string());
    CHECK(c.source_json.is_object());
    CHECK_FALSE(c.source_text.empty());
  }
}

TEST_CASE("git blob hashes") {
  CHECK(git_blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("snapshot round trip is bit exact") {
  for (const BaseGraph& g : {build_cycle(8), build_torus(3, 2), build_generalized_petersen(12, 5)}) {
    const WalkContext ctx(g, spectrum_for(g));
    const Cluster c = run(ctx, 50, 4).cluster;
    const std::string text = write_snapshot(g, c, 50);
    const Snapshot s = read_snapshot(text);
    CHECK(s.cluster == c);
    CHECK(s.T == 50);
    CHECK(write_snapshot(snapshot_graph(s), s.cluster, s.T) == text);
    CHECK(snapshot_graph(s) == g);
  }
}

TEST_CASE("snapshot format and validation") {
  const BaseGraph g = build_cycle(4);
  Cluster c(4);
  c.insert(1, 1);
  c.insert(0, 2);
  c.insert(3, 1);
  CHECK(write_snapshot(g, c, 3) == "idla-snapshot v1\ngraph cycle 4\nN 4 T 3\n1 1\n3 1\n0 2\n");
  CHECK(kind_of([] { read_snapshot("idla-snapshot v2\ngraph cycle 4\nN 4 T 0\n"); }) == ErrorKind::parse_error);
  CHECK(kind_of([] { read_snapshot("idla-snapshot v1\ngraph cycle 4\nN 4 T 2\n3 1\n1 1\n"); }) == ErrorKind::parse_error);
  CHECK(kind_of([] { read_snapshot("idla-snapshot v1\ngraph cycle 4\nN 4 T 1\n9 1\n"); }) == ErrorKind::parse_error);
}

TEST_CASE("geometry export") {
  const BaseGraph g = build_cycle(8);
  Cluster c(8);
  c.insert(2, 1);
  const auto j = export_geometry(read_snapshot(write_snapshot(g, c, 1)));
  REQUIRE(j["sites"].size() == 1);
  CHECK(j["sites"][0]["x"] == 2);
  CHECK(j["sites"][0]["y"] == 1);
  CHECK(j["sites"][0]["angle"].get<double>() == doctest::Approx(M_PI / 2));
  const BaseGraph t = build_torus(3, 2);
  Cluster ct(9);
  ct.insert(5, 1);
  const auto jt = export_geometry(read_snapshot(write_snapshot(t, ct, 1)));
  CHECK(jt["sites"][0]["coords"] == nlohmann::json::array({2, 1}));
  const BaseGraph p = build_generalized_petersen(5, 2);
  Cluster cp(10);
  cp.insert(7, 1);
  const auto jp = export_geometry(read_snapshot(write_snapshot(p, cp, 1)));
  const auto pos = jp["sites"][0]["position"];
  CHECK(std::hypot(pos[0].get<double>(), pos[1].get<double>()) == doctest::Approx(0.5));
}
