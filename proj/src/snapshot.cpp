#include "idla/snapshot.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "idla/config.hpp"
#include "idla/error.hpp"

namespace idla {

std::string write_snapshot(const BaseGraph& g, const Cluster& c, long long T) {
  std::ostringstream out;
  out << "idla-snapshot v1\n";
  out << "graph " << to_string(g.family());
  if (g.family() == Family::loaded) {
    // label is "file(<path>)"
    const std::string& l = g.label();
    out << ' ' << (l.size() > 6 ? l.substr(5, l.size() - 6) : l);
  }
  for (int p : g.params()) out << ' ' << p;
  out << "\nN " << g.n_vertices() << " T " << T << '\n';
  for (const auto& [x, y] : c.sites()) out << x << ' ' << y << '\n';
  return out.str();
}

Snapshot read_snapshot(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto bad = [](const std::string& msg) -> void { fail(ErrorKind::parse_error, "snapshot: " + msg); };
  if (!std::getline(in, line) || line != "idla-snapshot v1") bad("missing 'idla-snapshot v1' header");
  Snapshot s;
  if (!std::getline(in, line)) bad("missing graph line");
  {
    std::istringstream gl(line);
    std::string word;
    gl >> word;
    if (word != "graph") bad("expected 'graph <family> <params>'");
    if (!(gl >> s.family)) bad("missing family");
    std::string p;
    while (gl >> p) s.params.push_back(p);
  }
  int n = 0;
  if (!std::getline(in, line)) bad("missing N/T line");
  {
    std::istringstream nl(line);
    std::string a, b;
    if (!(nl >> a >> n >> b >> s.T) || a != "N" || b != "T" || n < 1) bad("expected 'N <int> T <int>'");
  }
  s.cluster = Cluster(n);
  long long prev_y = 0;
  int prev_x = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream sl(line);
    int x = 0;
    long long y = 0;
    std::string extra;
    if (!(sl >> x >> y) || (sl >> extra)) bad("malformed site line '" + line + "'");
    if (x < 0 || x >= n || y < 1) bad("site out of range '" + line + "'");
    if (y < prev_y || (y == prev_y && x <= prev_x)) bad("sites not sorted by (y, x)");
    prev_y = y;
    prev_x = x;
    s.cluster.insert(x, y);
  }
  return s;
}

Snapshot load_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::missing_file, "cannot open snapshot " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_snapshot(ss.str());
}

std::string snapshot_hash(const BaseGraph& g, const Cluster& c, long long T) {
  return git_blob_hash(write_snapshot(g, c, T));
}

BaseGraph snapshot_graph(const Snapshot& s) {
  if (s.family == "file") {
    if (s.params.size() != 1) fail(ErrorKind::parse_error, "file snapshot needs a path");
    return load_adjacency_file(s.params[0]);
  }
  std::vector<int> p;
  for (const auto& t : s.params) {
    try {
      p.push_back(std::stoi(t));
    } catch (const std::exception&) {
      fail(ErrorKind::parse_error, "snapshot graph parameter '" + t + "' is not an integer");
    }
  }
  return build_family(s.family, p);
}

nlohmann::json export_geometry(const Snapshot& s) {
  using nlohmann::json;
  const int N = s.cluster.base_size();
  json out;
  out["graph"] = {{"family", s.family}, {"params", s.params}};
  out["N"] = N;
  out["T"] = s.T;
  std::vector<int> p;
  if (s.family != "file")
    for (const auto& t : s.params) p.push_back(std::stoi(t));
  json sites = json::array();
  for (const auto& [x, y] : s.cluster.sites()) {
    json rec{{"x", x}, {"y", y}};
    if (s.family == "cycle") {
      rec["angle"] = 2 * std::numbers::pi * x / N;
    } else if (s.family == "torus" && p.size() == 2) {
      json coords = json::array();
      int rest = x;
      for (int i = 0; i < p[1]; ++i) {
        coords.push_back(rest % p[0]);
        rest /= p[0];
      }
      rec["coords"] = coords;
    } else if (s.family == "petersen" && p.size() == 2) {
      const int n = p[0];
      const int i = x % n;
      const double r = x < n ? 1.0 : 0.5;
      const double a = 2 * std::numbers::pi * i / n;
      rec["position"] = {r * std::cos(a), r * std::sin(a)};
    }
    sites.push_back(std::move(rec));
  }
  out["sites"] = std::move(sites);
  return out;
}

}  // namespace idla
