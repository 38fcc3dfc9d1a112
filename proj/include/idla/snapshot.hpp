#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "idla/cluster.hpp"
#include "idla/graph.hpp"

namespace idla {

struct Snapshot {
  std::string family;               // cycle, torus, petersen, complete, hypercube, file
  std::vector<std::string> params;  // integer parameters, or the path for file graphs
  long long T = 0;
  Cluster cluster{1};
};

// "idla-snapshot v1", "graph <family> <params>", "N <int> T <int>", then one
// "x y" line per occupied site above level 0 sorted by (y, x).
std::string write_snapshot(const BaseGraph& g, const Cluster& c, long long T);
Snapshot read_snapshot(const std::string& text);
Snapshot load_snapshot_file(const std::string& path);
std::string snapshot_hash(const BaseGraph& g, const Cluster& c, long long T);

// Rebuilds the base graph named in a snapshot header.
BaseGraph snapshot_graph(const Snapshot& s);

// Per-site records with the family's canonical embedding: angle 2 pi x / N on
// cycles, grid coordinates on tori, a two-ring layout for generalized Petersen
// graphs, and the bare vertex id otherwise.
nlohmann::json export_geometry(const Snapshot& s);

}  // namespace idla
