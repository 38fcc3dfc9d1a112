#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace idla {

enum class Family { cycle, torus, petersen, complete, hypercube, loaded };

const char* to_string(Family f);
Family family_from_string(const std::string& s);

// Finite base graph V_N. Vertices are 0..N-1; adjacency lists are sorted.
// Instances built by the family constructors are regular, symmetric, connected
// and vertex-transitive. Graphs made through from_adjacency carry whatever the
// caller supplied and should be passed through validate().
class BaseGraph {
 public:
  static BaseGraph from_adjacency(std::string label, std::vector<std::vector<int>> adjacency,
                                  Family family = Family::loaded, std::vector<int> params = {});

  const std::string& label() const { return label_; }
  Family family() const { return family_; }
  const std::vector<int>& params() const { return params_; }
  int n_vertices() const { return static_cast<int>(offsets_.size()) - 1; }
  // Common degree, or 0 if the adjacency is irregular.
  int degree() const { return degree_; }
  std::span<const int> neighbors(int x) const {
    return {adj_.data() + offsets_[x], adj_.data() + offsets_[x + 1]};
  }
  // Neighbor table laid out as x*degree + i; only meaningful for regular graphs.
  const int* flat_neighbors() const { return adj_.data(); }
  // True for the built-in families, which are transitive by construction.
  bool transitive_by_construction() const { return family_ != Family::loaded; }

  bool operator==(const BaseGraph& o) const { return offsets_ == o.offsets_ && adj_ == o.adj_; }

 private:
  std::string label_;
  Family family_ = Family::loaded;
  std::vector<int> params_;
  std::vector<int> offsets_{0};
  std::vector<int> adj_;
  int degree_ = 0;
};

BaseGraph build_cycle(int n);
BaseGraph build_torus(int n, int dim);
BaseGraph build_generalized_petersen(int n, int k);
BaseGraph build_complete(int n);
BaseGraph build_hypercube(int dim);

// Whitespace separated adjacency file: first token N, then for each vertex a
// line "x: n1 n2 ...". Only regularity and connectivity can be checked for such
// input; transitivity is the caller's responsibility.
BaseGraph load_adjacency_file(const std::string& path);

// Builds a graph from a family name and integer parameters, e.g. ("torus", {8, 2}).
BaseGraph build_family(const std::string& family, const std::vector<int>& params);
// Parses specs of the form "cycle:8", "torus:3:2", "petersen:12:5".
BaseGraph build_from_spec(const std::string& spec);

using Rational = boost::rational<std::int64_t>;

struct KernelRow {
  int source = 0;
  std::vector<std::pair<int, Rational>> entries;  // sorted by vertex id, self included
  Rational sum() const;
  Rational at(int y) const;
};

// Row x of the lazy kernel: 1/2 on x, 1/(2d) on each neighbor.
KernelRow kernel_row(const BaseGraph& g, int x);

struct ValidationReport {
  bool regular = true;
  bool symmetric = true;
  bool irreflexive = true;
  bool connected = true;
  std::vector<std::string> failures;
  bool ok() const { return regular && symmetric && irreflexive && connected; }
};

ValidationReport validate(const BaseGraph& g);

}  // namespace idla
