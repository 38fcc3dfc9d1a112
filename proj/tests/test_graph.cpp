#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "idla/error.hpp"
#include "idla/graph.hpp"

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

std::set<int> nbrs(const BaseGraph& g, int x) {
  const auto s = g.neighbors(x);
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("cycle neighbors and degree") {
  const BaseGraph g = build_cycle(5);
  CHECK(g.n_vertices() == 5);
  CHECK(g.degree() == 2);
  CHECK(nbrs(g, 0) == std::set<int>{1, 4});
  CHECK(nbrs(g, 3) == std::set<int>{2, 4});
  CHECK(validate(g).ok());
}

TEST_CASE("torus uses mixed radix with the first coordinate fastest") {
  const BaseGraph g = build_torus(3, 2);
  CHECK(g.n_vertices() == 9);
  CHECK(g.degree() == 4);
  // vertex 4 = (1, 1)
  CHECK(nbrs(g, 4) == std::set<int>{3, 5, 1, 7});
  CHECK(nbrs(g, 0) == std::set<int>{1, 2, 3, 6});
  CHECK(validate(g).ok());
}

TEST_CASE("generalized Petersen graphs") {
  const BaseGraph nauru = build_generalized_petersen(12, 5);
  CHECK(nauru.n_vertices() == 24);
  CHECK(nauru.degree() == 3);
  CHECK(nbrs(nauru, 0) == std::set<int>{1, 11, 12});
  CHECK(nbrs(nauru, 12) == std::set<int>{0, 12 + 5, 12 + 7});
  CHECK(validate(nauru).ok());
  CHECK(validate(build_generalized_petersen(5, 2)).ok());
  CHECK(validate(build_generalized_petersen(10, 3)).ok());  // 3^2 = -1 mod 10
  CHECK(kind_of([] { build_generalized_petersen(7, 2); }) == ErrorKind::not_vertex_transitive);
  CHECK(kind_of([] { build_generalized_petersen(10, 5); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("complete graph and hypercube") {
  const BaseGraph k5 = build_complete(5);
  CHECK(k5.degree() == 4);
  CHECK(nbrs(k5, 2) == std::set<int>{0, 1, 3, 4});
  const BaseGraph q3 = build_hypercube(3);
  CHECK(q3.n_vertices() == 8);
  CHECK(nbrs(q3, 5) == std::set<int>{4, 7, 1});
}

TEST_CASE("invalid sizes are rejected") {
  CHECK(kind_of([] { build_cycle(2); }) == ErrorKind::invalid_parameter);
  CHECK(kind_of([] { build_torus(2, 2); }) == ErrorKind::invalid_parameter);
  CHECK(kind_of([] { build_hypercube(0); }) == ErrorKind::invalid_parameter);
  CHECK(kind_of([] { build_family("moebius", {4}); }) == ErrorKind::invalid_parameter);
  CHECK(kind_of([] { build_family("torus", {4}); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("lazy kernel rows are exact") {
  for (const BaseGraph& g : {build_cycle(7), build_torus(3, 2), build_generalized_petersen(12, 5), build_complete(4)}) {
    for (int x = 0; x < g.n_vertices(); ++x) {
      const KernelRow r = kernel_row(g, x);
      CHECK(r.sum() == Rational(1));
      CHECK(r.at(x) == Rational(1, 2));
      for (int y : g.neighbors(x)) CHECK(r.at(y) == Rational(1, 2 * g.degree()));
    }
  }
}

TEST_CASE("graph specs") {
  CHECK(build_from_spec("cycle:8") == build_cycle(8));
  CHECK(build_from_spec("torus:3:2") == build_torus(3, 2));
  CHECK(build_from_spec("petersen:12:5") == build_generalized_petersen(12, 5));
  CHECK(kind_of([] { build_from_spec("cycle:x"); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("adjacency file loader") {
  const std::string path = "test_graph_loader.adj";
  {
    std::ofstream out(path);
    out << "4\n0: 1 3\n1: 0 2\n2: 1 3\n3: 2 0\n";
  }
  const BaseGraph g = load_adjacency_file(path);
  CHECK(g == build_cycle(4));
  CHECK(g.family() == Family::loaded);
  CHECK_FALSE(g.transitive_by_construction());
  CHECK(validate(g).ok());
  {
    std::ofstream out(path);
    out << "4\n0: 1\n1: 0 2\n2: 1 3\n3: 2\n";
  }
  const ValidationReport v = validate(load_adjacency_file(path));
  CHECK_FALSE(v.regular);
  CHECK_FALSE(v.ok());
  {
    std::ofstream out(path);
    out << "4\n0: 1\n1: 0\n2: 3\n3: 2\n";
  }
  CHECK_FALSE(validate(load_adjacency_file(path)).connected);
  {
    std::ofstream out(path);
    out << "3\n0: 1 7\n";
  }
  CHECK(kind_of([&] { load_adjacency_file(path); }) == ErrorKind::parse_error);
  std::remove(path.c_str());
  CHECK(kind_of([] { load_adjacency_file("no/such/file.adj"); }) == ErrorKind::missing_file);
}
