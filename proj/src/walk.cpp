#include "idla/walk.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

namespace idla {

long long fastforward_cap(int n_vertices, double lambda2, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) fail(ErrorKind::invalid_parameter, "fastforward_eps must lie in [0,1)");
  if (n_vertices <= 1 || lambda2 <= 0.0) return 0;
  if (lambda2 >= 1.0) fail(ErrorKind::invalid_parameter, "lambda_2 must be < 1");
  if (eps > 0.0) {
    const double tau_rel = 1.0 / (1.0 - lambda2);
    return static_cast<long long>(std::ceil(tau_rel * std::log(2.0 / eps)));
  }
  const double target = 64.0 * std::log(2.0) + std::log(0.5 * std::sqrt(n_vertices - 1.0));
  return static_cast<long long>(std::ceil(target / -std::log(lambda2)));
}

WalkContext::WalkContext(const BaseGraph& g, const Spectrum& s, double eps, std::uint64_t step_budget)
    : g_(&g) {
  init(s.size() > 1 ? s.eigenvalue(2) : 0.0, eps, step_budget);
}

WalkContext::WalkContext(const BaseGraph& g, double lambda2, double eps, std::uint64_t step_budget)
    : g_(&g) {
  init(lambda2, eps, step_budget);
}

void WalkContext::init(double lambda2, double eps, std::uint64_t budget) {
  n_ = g_->n_vertices();
  d_ = g_->degree();
  if (n_ > 1 && d_ == 0) fail(ErrorKind::invalid_parameter, "walks need a regular base graph");
  if (d_ > static_cast<int>(kLowMask)) fail(ErrorKind::invalid_parameter, "degree too large");
  nbr_ = g_->flat_neighbors();
  pow2_ = d_ > 0 && (d_ & (d_ - 1)) == 0;
  reject_below_ = d_ > 0 ? static_cast<std::uint32_t>((1u << kLowBits) % static_cast<std::uint32_t>(d_)) : 0;
  cycle_ = d_ == 2 && (g_->family() == Family::cycle ||
                       (g_->family() == Family::torus && g_->params().size() == 2 && g_->params()[1] == 1));
  if (d_ > 0) {
    const int width = 2 * d_;
    lazy_table_.resize(static_cast<std::size_t>(n_) * width);
    for (int x = 0; x < n_; ++x) {
      const auto nb = g_->neighbors(x);
      for (int i = 0; i < d_; ++i) {
        lazy_table_[static_cast<std::size_t>(x) * width + i] = x;
        lazy_table_[static_cast<std::size_t>(x) * width + d_ + i] = nb[i];
      }
    }
    lazy_bits_ = (width & (width - 1)) == 0 ? std::countr_zero(static_cast<unsigned>(width)) : 0;
    packed_steps_ = lazy_bits_ > 0 ? 64 / (2 + lazy_bits_) : 0;
  }
  eps_ = eps;
  s_cap_ = fastforward_cap(n_, lambda2, eps);
  budget_ = budget;
}

void WalkContext::budget_error() const {
  fail(ErrorKind::budget_exceeded,
       "walk exceeded the step budget of " + std::to_string(budget_) + " steps");
}

CylinderState step(CylinderState s, const WalkContext& ctx, WalkStream& st) {
  ctx.step(s, st);
  return s;
}

CylinderState release_site(WalkStream& st, int n) {
  if (n < 1) fail(ErrorKind::invalid_parameter, "release needs N >= 1");
  return {n == 1 ? 0 : static_cast<int>(st.uniform_below(static_cast<std::uint32_t>(n))), 0};
}

CylinderState fastforward_subzero(CylinderState s, const WalkContext& ctx, WalkStream& st) {
  if (s.y > 0) fail(ErrorKind::invalid_parameter, "fastforward_subzero needs y <= 0");
  std::uint64_t steps = 0;
  return ctx.fastforward(s, 1, st, steps);
}

int first_hit_level(CylinderState s, const WalkContext& ctx, WalkStream& st, long long m) {
  if (m <= s.y) fail(ErrorKind::invalid_parameter, "first_hit_level needs m > y");
  const long long floor_level = std::min(m, 1LL);
  std::uint64_t steps = 0;
  while (s.y < m) {
    if (s.y < floor_level) {
      s = ctx.fastforward(s, floor_level, st, steps);
      continue;
    }
    if (++steps > ctx.step_budget()) ctx.budget_error();
    ctx.step(s, st);
  }
  return s.x;
}

}  // namespace idla

namespace idla {

namespace {

// Two bits per vertical-chain step: 0 up, 1 down, 2 or 3 horizontal.
struct Chunk {
  std::int8_t net;        // ups minus downs over 8 steps
  std::int8_t max_rise;   // maximum over prefixes of ups minus downs
  std::int8_t horizontal; // number of horizontal steps
};

const std::array<Chunk, 65536>& chunk_table() {
  static const std::array<Chunk, 65536> table = [] {
    std::array<Chunk, 65536> t{};
    for (std::uint32_t w = 0; w < 65536; ++w) {
      int net = 0, rise = 0, h = 0;
      for (int i = 0; i < 8; ++i) {
        const std::uint32_t two = (w >> (2 * i)) & 3u;
        if (two == 0) ++net;
        else if (two == 1) --net;
        else ++h;
        rise = std::max(rise, net);
      }
      t[w] = {static_cast<std::int8_t>(net), static_cast<std::int8_t>(rise), static_cast<std::int8_t>(h)};
    }
    return t;
  }();
  return table;
}

}  // namespace

CylinderState WalkContext::fastforward(CylinderState s, long long target, WalkStream& st,
                                       std::uint64_t& steps) const {
  const auto& table = chunk_table();
  long long need = target - s.y;
  long long h = 0;
  while (need > 0) {
    const std::uint64_t w = st.next_u64();
    for (int c = 0; c < 4 && need > 0; ++c) {
      const std::uint32_t bits = static_cast<std::uint32_t>(w >> (16 * c)) & 0xFFFFu;
      const Chunk& e = table[bits];
      if (e.max_rise < need && h + e.horizontal <= s_cap_) {
        need -= e.net;
        h += e.horizontal;
        steps += 8;
        continue;
      }
      for (int i = 0; i < 8; ++i) {
        ++steps;
        const std::uint32_t two = (bits >> (2 * i)) & 3u;
        if (two == 0) {
          if (--need == 0) break;
        } else if (two == 1) {
          ++need;
        } else if (++h > s_cap_) {
          s.x = n_ == 1 ? 0 : static_cast<int>(st.uniform_below(static_cast<std::uint32_t>(n_)));
          s.y = target;
          return s;
        }
      }
    }
    if (steps > budget_) budget_error();
  }
  s.x = horizontal_moves(s.x, h, st);
  s.y = target;
  return s;
}

int WalkContext::horizontal_moves(int x, long long h, WalkStream& st) const {
  if (h == 0 || d_ == 0) return x;
  if (cycle_) {
    // A lazy cycle move is b1 + b2 - 1 for two fair bits, so h moves shift x
    // by popcount(2h bits) - h.
    long long shift = -h;
    long long left = 2 * h;
    while (left >= 64) {
      shift += std::popcount(st.next_u64());
      left -= 64;
    }
    if (left > 0) shift += std::popcount(st.next_u64() & ((1ull << left) - 1));
    long long r = (x + shift) % n_;
    return static_cast<int>(r < 0 ? r + n_ : r);
  }
  const std::size_t width = 2 * static_cast<std::size_t>(d_);
  if (lazy_bits_ > 0) {
    const std::uint64_t mask = (1ull << lazy_bits_) - 1;
    const int per_word = 64 / lazy_bits_;
    while (h > 0) {
      std::uint64_t w = st.next_u64();
      for (int i = 0; i < per_word && h > 0; ++i, --h) {
        x = lazy_table_[static_cast<std::size_t>(x) * width + (w & mask)];
        w >>= lazy_bits_;
      }
    }
    return x;
  }
  for (; h > 0; --h) x = lazy_table_[static_cast<std::size_t>(x) * width + st.uniform_below(static_cast<std::uint32_t>(width))];
  return x;
}

}  // namespace idla
