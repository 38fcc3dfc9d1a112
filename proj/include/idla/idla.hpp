#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "idla/cluster.hpp"
#include "idla/rng.hpp"
#include "idla/walk.hpp"

namespace idla {

inline constexpr long long kNoStop = std::numeric_limits<long long>::max();

// A particle: its random stream, and optionally a fixed release column
// (balanced release); otherwise the column is drawn from the stream.
struct Trajectory {
  StreamId stream;
  int fixed_column = -1;
};

struct Settlement {
  int release_x = 0;
  int x = 0;
  long long y = 0;
  bool frozen = false;  // reached the stop level
};

struct TrajectoryRecord {
  Trajectory trajectory;
  Settlement site;
};

struct TrajectoryLog {
  std::vector<TrajectoryRecord> records;
  std::vector<Trajectory> trajectories() const;
};

struct FrozenLedger {
  long long h = 0;
  std::vector<long long> counts;  // N_x
  long long settled_below = 0;
  long long frozen_total() const;
};

struct RunOptions {
  bool keep_log = false;
  // Check |A_+(t)| = t and outer_height <= t after every particle.
  bool audit = false;
};

struct RunResult {
  Cluster cluster;
  std::optional<TrajectoryLog> log;
};

struct StoppedResult {
  Cluster cluster;
  FrozenLedger ledger;
  std::optional<TrajectoryLog> log;
};

// Releases one particle and settles it at the first visited site outside
// the cluster, or freezes it on reaching stop_level. The site (x, stop_level)
// joins the cluster idempotently when frozen.
Settlement add_particle(Cluster& c, const WalkContext& ctx, const Trajectory& tr, long long stop_level = kNoStop);

// Particle t (0-based) uses stream (seed, t).
RunResult run(const WalkContext& ctx, long long T, std::uint64_t seed, const RunOptions& opts = {});
StoppedResult run_stopped(const WalkContext& ctx, long long T, long long h, std::uint64_t seed,
                          const RunOptions& opts = {});
// Site-stack IDLA: instead of one stream per particle, the k-th departure
// from a site uses the k-th instruction of that site's stack (stream
// (derive_seed(stack_seed, site), k)). Particles start at (column, 0) and are
// processed in list order; the final cluster does not depend on that order.
Cluster stack_replay(const WalkContext& ctx, Cluster initial, const std::vector<int>& release_columns,
                     std::uint64_t stack_seed);
// m particles per column, slot i = c*m + s released at column c, driven by
// site stacks keyed by seed. Column-major order unless `order` (a permutation
// of 0..N*m-1) is given.
Cluster run_balanced(const WalkContext& ctx, long long m, std::uint64_t seed);
Cluster run_balanced(const WalkContext& ctx, long long m, std::uint64_t seed, const std::vector<long long>& order);
Cluster replay(const WalkContext& ctx, Cluster initial, const std::vector<Trajectory>& trajectories,
               long long stop_level = kNoStop);
// Two runs with identical streams except particle j (1-based), which uses
// (seed2, j - 1) in the second run.
std::pair<Cluster, Cluster> resample_one(const WalkContext& ctx, long long T, std::uint64_t seed, long long j,
                                         std::uint64_t seed2);

// Total number of per-particle conservation/height audits performed (all threads).
long long audit_checks_performed();

}  // namespace idla
