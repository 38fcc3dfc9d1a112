#include "idla/graph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "idla/error.hpp"

namespace idla {

const char* to_string(Family f) {
  switch (f) {
    case Family::cycle: return "cycle";
    case Family::torus: return "torus";
    case Family::petersen: return "petersen";
    case Family::complete: return "complete";
    case Family::hypercube: return "hypercube";
    case Family::loaded: return "file";
  }
  return "file";
}

Family family_from_string(const std::string& s) {
  if (s == "cycle") return Family::cycle;
  if (s == "torus") return Family::torus;
  if (s == "petersen") return Family::petersen;
  if (s == "complete") return Family::complete;
  if (s == "hypercube") return Family::hypercube;
  if (s == "file") return Family::loaded;
  fail(ErrorKind::invalid_parameter, "unknown graph family '" + s + "'");
}

BaseGraph BaseGraph::from_adjacency(std::string label, std::vector<std::vector<int>> adjacency,
                                    Family family, std::vector<int> params) {
  BaseGraph g;
  g.label_ = std::move(label);
  g.family_ = family;
  g.params_ = std::move(params);
  g.offsets_.assign(1, 0);
  int deg = adjacency.empty() ? 0 : static_cast<int>(adjacency[0].size());
  for (auto& row : adjacency) {
    std::sort(row.begin(), row.end());
    if (static_cast<int>(row.size()) != deg) deg = -1;
    g.adj_.insert(g.adj_.end(), row.begin(), row.end());
    g.offsets_.push_back(static_cast<int>(g.adj_.size()));
  }
  g.degree_ = deg < 0 ? 0 : deg;
  return g;
}

BaseGraph build_cycle(int n) {
  if (n < 3) fail(ErrorKind::invalid_parameter, "cycle needs N >= 3, got " + std::to_string(n));
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) adj[i] = {(i + n - 1) % n, (i + 1) % n};
  return BaseGraph::from_adjacency("cycle(" + std::to_string(n) + ")", std::move(adj), Family::cycle, {n});
}

BaseGraph build_torus(int n, int dim) {
  if (n < 3) fail(ErrorKind::invalid_parameter, "torus needs n >= 3");
  if (dim < 1) fail(ErrorKind::invalid_parameter, "torus needs dim >= 1");
  std::int64_t total = 1;
  for (int i = 0; i < dim; ++i) {
    total *= n;
    if (total > std::numeric_limits<int>::max() / 2)
      fail(ErrorKind::invalid_parameter, "torus size n^dim overflows");
  }
  const int N = static_cast<int>(total);
  std::vector<std::vector<int>> adj(N);
  for (int v = 0; v < N; ++v) {
    int stride = 1;
    for (int i = 0; i < dim; ++i) {
      const int c = (v / stride) % n;
      adj[v].push_back(v + (((c + 1) % n) - c) * stride);
      adj[v].push_back(v + (((c + n - 1) % n) - c) * stride);
      stride *= n;
    }
  }
  return BaseGraph::from_adjacency("torus(" + std::to_string(n) + "," + std::to_string(dim) + ")",
                                   std::move(adj), Family::torus, {n, dim});
}

BaseGraph build_generalized_petersen(int n, int k) {
  if (n < 3) fail(ErrorKind::invalid_parameter, "GP(n,k) needs n >= 3");
  if (k < 1 || 2 * k >= n) fail(ErrorKind::invalid_parameter, "GP(n,k) needs 1 <= k < n/2");
  const int k2 = (k * k) % n;
  if (k2 != 1 % n && k2 != n - 1)
    fail(ErrorKind::not_vertex_transitive,
         "GP(" + std::to_string(n) + "," + std::to_string(k) + ") is not vertex-transitive (k^2 != +-1 mod n)");
  std::vector<std::vector<int>> adj(2 * n);
  for (int i = 0; i < n; ++i) {
    adj[i] = {(i + 1) % n, (i + n - 1) % n, n + i};
    adj[n + i] = {i, n + (i + k) % n, n + (i + n - k) % n};
  }
  return BaseGraph::from_adjacency("GP(" + std::to_string(n) + "," + std::to_string(k) + ")",
                                   std::move(adj), Family::petersen, {n, k});
}

BaseGraph build_complete(int n) {
  if (n < 2) fail(ErrorKind::invalid_parameter, "complete graph needs N >= 2");
  if (n > 1 << 14) fail(ErrorKind::invalid_parameter, "complete graph too large");
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) adj[i].push_back(j);
  return BaseGraph::from_adjacency("complete(" + std::to_string(n) + ")", std::move(adj),
                                   Family::complete, {n});
}

BaseGraph build_hypercube(int dim) {
  if (dim < 1 || dim > 24) fail(ErrorKind::invalid_parameter, "hypercube needs 1 <= dim <= 24");
  const int N = 1 << dim;
  std::vector<std::vector<int>> adj(N);
  for (int v = 0; v < N; ++v)
    for (int i = 0; i < dim; ++i) adj[v].push_back(v ^ (1 << i));
  return BaseGraph::from_adjacency("hypercube(" + std::to_string(dim) + ")", std::move(adj),
                                   Family::hypercube, {dim});
}

BaseGraph load_adjacency_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::missing_file, "cannot open graph file " + path);
  int n = 0;
  if (!(in >> n) || n < 1) fail(ErrorKind::parse_error, "graph file must start with N >= 1");
  std::vector<std::vector<int>> adj(n);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) fail(ErrorKind::parse_error, "expected 'x: neighbors' in " + path);
    int x = 0;
    try {
      x = std::stoi(line.substr(0, colon));
    } catch (const std::exception&) {
      fail(ErrorKind::parse_error, "bad vertex id in " + path);
    }
    if (x < 0 || x >= n) fail(ErrorKind::parse_error, "vertex id out of range in " + path);
    std::istringstream rest(line.substr(colon + 1));
    int y = 0;
    while (rest >> y) {
      if (y < 0 || y >= n) fail(ErrorKind::parse_error, "neighbor id out of range in " + path);
      adj[x].push_back(y);
    }
  }
  return BaseGraph::from_adjacency("file(" + path + ")", std::move(adj));
}

BaseGraph build_family(const std::string& family, const std::vector<int>& p) {
  auto need = [&](std::size_t k) {
    if (p.size() != k)
      fail(ErrorKind::invalid_parameter,
           family + " takes " + std::to_string(k) + " parameter(s), got " + std::to_string(p.size()));
  };
  switch (family_from_string(family)) {
    case Family::cycle: need(1); return build_cycle(p[0]);
    case Family::torus: need(2); return build_torus(p[0], p[1]);
    case Family::petersen: need(2); return build_generalized_petersen(p[0], p[1]);
    case Family::complete: need(1); return build_complete(p[0]);
    case Family::hypercube: need(1); return build_hypercube(p[0]);
    case Family::loaded: break;
  }
  fail(ErrorKind::invalid_parameter, "file graphs need a path, not integer parameters");
}

BaseGraph build_from_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.empty()) fail(ErrorKind::invalid_parameter, "empty graph spec");
  if (parts[0] == "file") {
    if (parts.size() != 2) fail(ErrorKind::invalid_parameter, "file spec is file:PATH");
    return load_adjacency_file(parts[1]);
  }
  std::vector<int> params;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    try {
      std::size_t used = 0;
      params.push_back(std::stoi(parts[i], &used));
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
    } catch (const std::exception&) {
      fail(ErrorKind::invalid_parameter, "bad integer in graph spec '" + spec + "'");
    }
  }
  return build_family(parts[0], params);
}

Rational KernelRow::sum() const {
  Rational s(0);
  for (const auto& [y, p] : entries) s += p;
  return s;
}

Rational KernelRow::at(int y) const {
  for (const auto& [v, p] : entries)
    if (v == y) return p;
  return Rational(0);
}

KernelRow kernel_row(const BaseGraph& g, int x) {
  if (x < 0 || x >= g.n_vertices()) fail(ErrorKind::invalid_parameter, "vertex id out of range");
  const auto nb = g.neighbors(x);
  const std::int64_t d = static_cast<std::int64_t>(nb.size());
  KernelRow row;
  row.source = x;
  row.entries.emplace_back(x, Rational(1, 2));
  for (int y : nb) row.entries.emplace_back(y, Rational(1, 2 * d));
  std::sort(row.entries.begin(), row.entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

ValidationReport validate(const BaseGraph& g) {
  ValidationReport r;
  const int n = g.n_vertices();
  if (n == 0) {
    r.connected = false;
    r.failures.push_back("graph has no vertices");
    return r;
  }
  const auto d0 = g.neighbors(0).size();
  for (int x = 0; x < n; ++x) {
    const auto nb = g.neighbors(x);
    if (nb.size() != d0 || nb.empty()) {
      if (r.regular) r.failures.push_back("irregular: vertex " + std::to_string(x) + " has degree " +
                                          std::to_string(nb.size()));
      r.regular = false;
    }
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const int y = nb[i];
      if (y == x) {
        if (r.irreflexive) r.failures.push_back("self-loop at vertex " + std::to_string(x));
        r.irreflexive = false;
      }
      if (i > 0 && nb[i - 1] == y) {
        if (r.regular) r.failures.push_back("repeated edge at vertex " + std::to_string(x));
        r.regular = false;
      }
      const auto back = g.neighbors(y);
      if (!std::binary_search(back.begin(), back.end(), x)) {
        if (r.symmetric)
          r.failures.push_back("asymmetric: " + std::to_string(x) + " lists " + std::to_string(y) +
                               " but not conversely");
        r.symmetric = false;
      }
    }
  }
  // Connectivity over the undirected closure so an asymmetric list is not
  // double-reported as disconnected.
  std::vector<std::vector<int>> und(n);
  for (int x = 0; x < n; ++x)
    for (int y : g.neighbors(x)) {
      und[x].push_back(y);
      und[y].push_back(x);
    }
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : und[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        q.push(y);
      }
  }
  if (count != n) {
    r.connected = false;
    r.failures.push_back("disconnected: reached " + std::to_string(count) + " of " + std::to_string(n) +
                         " vertices from 0");
  }
  return r;
}

}  // namespace idla
