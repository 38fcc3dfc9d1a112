#include "idla/idla.hpp"

#include <atomic>
#include <unordered_map>

#include "idla/error.hpp"

namespace idla {

namespace {

std::atomic<long long> g_audits{0};

void audit_step(const Cluster& c, long long t) {
  if (c.size() != t)
    fail(ErrorKind::numeric_failure, "conservation violated: |A_+| = " + std::to_string(c.size()) +
                                         " after " + std::to_string(t) + " particles");
  if (c.outer_height() > t) fail(ErrorKind::numeric_failure, "outer height exceeds particle count");
  g_audits.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

std::vector<Trajectory> TrajectoryLog::trajectories() const {
  std::vector<Trajectory> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.trajectory);
  return out;
}

long long FrozenLedger::frozen_total() const {
  long long s = 0;
  for (long long c : counts) s += c;
  return s;
}

Settlement add_particle(Cluster& c, const WalkContext& ctx, const Trajectory& tr, long long stop_level) {
  WalkStream st(tr.stream);
  Settlement out;
  CylinderState s = tr.fixed_column >= 0 ? CylinderState{tr.fixed_column, 0} : release_site(st, ctx.n());
  out.release_x = s.x;
  std::uint64_t steps = 0;
  s = ctx.walk_until_exit(s, stop_level, st, steps, [&c](int x, long long y) { return c.contains(x, y); });
  out.frozen = s.y >= stop_level;
  out.x = s.x;
  out.y = s.y;
  c.insert(s.x, s.y);
  return out;
}

RunResult run(const WalkContext& ctx, long long T, std::uint64_t seed, const RunOptions& opts) {
  if (T < 0) fail(ErrorKind::invalid_parameter, "T must be >= 0");
  RunResult r{Cluster(ctx.n()), std::nullopt};
  if (opts.keep_log) r.log.emplace().records.reserve(static_cast<std::size_t>(T));
  for (long long t = 0; t < T; ++t) {
    const Trajectory tr{{seed, static_cast<std::uint64_t>(t)}};
    const Settlement s = add_particle(r.cluster, ctx, tr);
    if (opts.keep_log) r.log->records.push_back({tr, s});
    if (opts.audit) audit_step(r.cluster, t + 1);
  }
  return r;
}

StoppedResult run_stopped(const WalkContext& ctx, long long T, long long h, std::uint64_t seed,
                          const RunOptions& opts) {
  if (h < 1) fail(ErrorKind::invalid_parameter, "stop level h must be >= 1");
  if (T < 0) fail(ErrorKind::invalid_parameter, "T must be >= 0");
  StoppedResult r{Cluster(ctx.n()), FrozenLedger{h, std::vector<long long>(ctx.n(), 0), 0}, std::nullopt};
  if (opts.keep_log) r.log.emplace().records.reserve(static_cast<std::size_t>(T));
  for (long long t = 0; t < T; ++t) {
    const Trajectory tr{{seed, static_cast<std::uint64_t>(t)}};
    const Settlement s = add_particle(r.cluster, ctx, tr, h);
    if (s.frozen)
      ++r.ledger.counts[s.x];
    else
      ++r.ledger.settled_below;
    if (opts.keep_log) r.log->records.push_back({tr, s});
    if (opts.audit && r.cluster.outer_height() > h) fail(ErrorKind::numeric_failure, "stopped cluster left R_h");
  }
  return r;
}

Cluster run_balanced(const WalkContext& ctx, long long m, std::uint64_t seed) {
  if (m < 1) fail(ErrorKind::invalid_parameter, "m must be >= 1");
  std::vector<long long> order(static_cast<std::size_t>(ctx.n() * m));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<long long>(i);
  return run_balanced(ctx, m, seed, order);
}

Cluster run_balanced(const WalkContext& ctx, long long m, std::uint64_t seed, const std::vector<long long>& order) {
  if (m < 1) fail(ErrorKind::invalid_parameter, "m must be >= 1");
  const long long total = ctx.n() * m;
  if (static_cast<long long>(order.size()) != total)
    fail(ErrorKind::invalid_parameter, "order must list every (column, slot) once");
  std::vector<char> seen(static_cast<std::size_t>(total), 0);
  std::vector<int> columns;
  columns.reserve(order.size());
  for (long long i : order) {
    if (i < 0 || i >= total || seen[i]) fail(ErrorKind::invalid_parameter, "order is not a permutation");
    seen[i] = 1;
    columns.push_back(static_cast<int>(i / m));
  }
  return stack_replay(ctx, Cluster(ctx.n()), columns, seed);
}

namespace {

// The k-th departure from site z uses stream (seed_z, k). A departure from
// level 0 is the whole excursion up to level 1, which is legitimate because
// every site at or below level 0 stays occupied.
class SiteStacks {
 public:
  SiteStacks(const WalkContext& ctx, std::uint64_t seed) : ctx_(ctx), seed_(seed) {}

  CylinderState pop(CylinderState s) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.y)) << 32) | static_cast<std::uint32_t>(s.x);
    WalkStream st(derive_seed(seed_, key), used_[key]++);
    if (s.y <= 0) {
      std::uint64_t steps = 0;
      return ctx_.fastforward(s, 1, st, steps);
    }
    ctx_.step(s, st);
    return s;
  }

 private:
  const WalkContext& ctx_;
  std::uint64_t seed_;
  std::unordered_map<std::uint64_t, std::uint64_t> used_;
};

}  // namespace

Cluster stack_replay(const WalkContext& ctx, Cluster initial, const std::vector<int>& release_columns,
                     std::uint64_t stack_seed) {
  if (initial.base_size() != ctx.n()) fail(ErrorKind::invalid_parameter, "initial cluster over a different base");
  SiteStacks stacks(ctx, stack_seed);
  for (int x0 : release_columns) {
    if (x0 < 0 || x0 >= ctx.n()) fail(ErrorKind::invalid_parameter, "release column out of range");
    CylinderState s{x0, 0};
    std::uint64_t steps = 0;
    while (initial.contains(s.x, s.y)) {
      s = stacks.pop(s);
      if (++steps > ctx.step_budget()) ctx.budget_error();
    }
    initial.insert(s.x, s.y);
  }
  return initial;
}

Cluster replay(const WalkContext& ctx, Cluster initial, const std::vector<Trajectory>& trajectories,
               long long stop_level) {
  if (initial.base_size() != ctx.n()) fail(ErrorKind::invalid_parameter, "initial cluster over a different base");
  for (const auto& tr : trajectories) add_particle(initial, ctx, tr, stop_level);
  return initial;
}

std::pair<Cluster, Cluster> resample_one(const WalkContext& ctx, long long T, std::uint64_t seed, long long j,
                                         std::uint64_t seed2) {
  if (j < 1 || j > T) fail(ErrorKind::invalid_parameter, "resample index must satisfy 1 <= j <= T");
  std::vector<Trajectory> a, b;
  for (long long t = 0; t < T; ++t) {
    a.push_back({{seed, static_cast<std::uint64_t>(t)}});
    b.push_back({{t == j - 1 ? seed2 : seed, static_cast<std::uint64_t>(t)}});
  }
  return {replay(ctx, Cluster(ctx.n()), a), replay(ctx, Cluster(ctx.n()), b)};
}

long long audit_checks_performed() { return g_audits.load(); }

}  // namespace idla
