#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "idla/error.hpp"
#include "idla/graph.hpp"
#include "idla/rng.hpp"
#include "idla/spectral.hpp"

namespace idla {

struct CylinderState {
  int x = 0;
  long long y = 0;
  bool operator==(const CylinderState&) const = default;
};

inline constexpr double kDefaultFastforwardEps = 1e-9;
inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000'000ull;

// Number of horizontal moves after which an excursion's column is replaced by
// a uniform draw. eps > 0 gives ceil(tau_rel ln(2/eps)). eps = 0 gives the
// smallest s with (1/2) sqrt(N-1) lambda_2^s <= 2^-64, i.e. the replacement is
// exact to the resolution of the random source.
long long fastforward_cap(int n_vertices, double lambda2, double eps);

// Everything a walker needs from the base graph, packed for the hot loop.
class WalkContext {
 public:
  WalkContext(const BaseGraph& g, const Spectrum& s, double eps = kDefaultFastforwardEps,
              std::uint64_t step_budget = kDefaultStepBudget);
  WalkContext(const BaseGraph& g, double lambda2, double eps = kDefaultFastforwardEps,
              std::uint64_t step_budget = kDefaultStepBudget);

  const BaseGraph& graph() const { return *g_; }
  int n() const { return n_; }
  int degree() const { return d_; }
  double eps() const { return eps_; }
  long long s_cap() const { return s_cap_; }
  std::uint64_t step_budget() const { return budget_; }

  // One step of the cylinder walk consuming exactly one 32-bit word (plus a
  // fresh draw in the rare Lemire rejection case). Returns true for a
  // horizontal step (including the lazy stay).
  bool step(CylinderState& s, WalkStream& st) const {
    const std::uint32_t w = st.next_u32();
    switch (w >> 30) {
      case 0: ++s.y; return false;
      case 1: --s.y; return false;
      default: break;
    }
    if (((w >> 29) & 1u) == 0 || d_ == 0) return true;  // lazy half of P_N
    const std::uint32_t low = w & kLowMask;
    std::uint32_t i;
    if (pow2_) {
      i = low & (static_cast<std::uint32_t>(d_) - 1);
    } else {
      const std::uint64_t m = static_cast<std::uint64_t>(low) * static_cast<std::uint32_t>(d_);
      i = (static_cast<std::uint32_t>(m) & kLowMask) < reject_below_
              ? st.uniform_below(static_cast<std::uint32_t>(d_))
              : static_cast<std::uint32_t>(m >> kLowBits);
    }
    s.x = nbr_[static_cast<std::size_t>(s.x) * d_ + i];
    return true;
  }

  // Runs the walk from s (s.y < target) until it first reaches level target.
  // After more than s_cap horizontal moves the column is replaced by a uniform
  // draw and the walk jumps to (x, target). The vertical path is generated 8
  // steps per table lookup and the horizontal moves are applied in bulk at the
  // end; the result depends only on the stream, never on any cluster.
  CylinderState fastforward(CylinderState s, long long target, WalkStream& st, std::uint64_t& steps) const;

  // Walks from s until the first visited site with y >= stop_level or with
  // inside(x, y) false, fast-forwarding whenever y <= 0 (so inside must hold
  // on every site with y <= 0). When 2d is a power of two each step takes
  // 2 + log2(2d) bits of a 64-bit word and is applied without branches; the
  // word is discarded once the walk leaves. The bits a step consumes never
  // depend on `inside`, so shared streams give shared paths.
  template <class Inside>
  CylinderState walk_until_exit(CylinderState s, long long stop_level, WalkStream& st, std::uint64_t& steps,
                                Inside&& inside) const {
    for (;;) {
      if (s.y <= 0) s = fastforward(s, 1, st, steps);
      if (s.y >= stop_level || !inside(s.x, s.y)) return s;
      if (packed_steps_ > 0) {
        std::uint64_t w = st.next_u64();
        const std::size_t width = 2 * static_cast<std::size_t>(d_);
        const std::uint64_t move_mask = (1ull << lazy_bits_) - 1;
        for (int i = 0; i < packed_steps_; ++i) {
          const auto two = static_cast<unsigned>(w & 3u);
          const int moved = lazy_table_[static_cast<std::size_t>(s.x) * width + ((w >> 2) & move_mask)];
          w >>= 2 + lazy_bits_;
          s.y += static_cast<long long>(two == 0) - static_cast<long long>(two == 1);
          s.x = two >= 2 ? moved : s.x;
          ++steps;
          if (s.y <= 0 || s.y >= stop_level || !inside(s.x, s.y)) break;
        }
      } else {
        step(s, st);
        ++steps;
      }
      if (steps > budget_) budget_error();
    }
  }

  // Applies h moves of the lazy kernel P_N starting from x.
  int horizontal_moves(int x, long long h, WalkStream& st) const;

  [[noreturn]] void budget_error() const;

 private:
  static constexpr int kLowBits = 29;
  static constexpr std::uint32_t kLowMask = (1u << kLowBits) - 1;

  void init(double lambda2, double eps, std::uint64_t budget);

  const BaseGraph* g_;
  const int* nbr_;
  std::vector<int> lazy_table_;  // row x: d copies of x, then the neighbors
  int lazy_bits_ = 0;            // log2(2d) when 2d is a power of two, else 0
  bool cycle_ = false;
  int packed_steps_ = 0;         // steps per 64-bit word in walk_until_exit, 0 = unpacked
  int n_;
  int d_;
  bool pow2_;
  std::uint32_t reject_below_;
  double eps_;
  long long s_cap_;
  std::uint64_t budget_;
};

CylinderState step(CylinderState s, const WalkContext& ctx, WalkStream& st);
CylinderState release_site(WalkStream& st, int n);
// State at the first visit of level 1 from a start with y <= 0.
CylinderState fastforward_subzero(CylinderState s, const WalkContext& ctx, WalkStream& st);
// Column at the first hitting time of level m > s.y. Below level min(m, 1)
// the walk is fast-forwarded; above it every step is simulated.
int first_hit_level(CylinderState s, const WalkContext& ctx, WalkStream& st, long long m);

}  // namespace idla
