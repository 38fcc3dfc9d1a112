#pragma once

#include <array>
#include <cstdint>

namespace idla {

// Philox4x32-10 counter-based generator (Salmon et al. 2011).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
      key[0] += W0;
      key[1] += W1;
    }
    return ctr;
  }
};

// splitmix64 finalizer, used to turn (master seed, replicate, ...) into stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return mix64(mix64(mix64(master) ^ a) ^ (b + 0x632BE59BD9B4E019ull));
}

struct StreamId {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  bool operator==(const StreamId&) const = default;
};

// Random words for one trajectory. The Philox key is the stream seed and the
// counter is (index, block number), so a stream is reproducible from its id
// alone and streams with different ids never share a counter block.
class WalkStream {
 public:
  explicit WalkStream(StreamId id) : id_(id) {}
  WalkStream(std::uint64_t seed, std::uint64_t index) : id_{seed, index} {}

  StreamId id() const { return id_; }
  std::uint64_t words_consumed() const { return block_ * 4 - (4 - pos_); }

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }
  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }
  // Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  // Exactly uniform on {0..n-1} (Lemire's multiply with rejection). n >= 1.
  std::uint32_t uniform_below(std::uint32_t n) {
    std::uint64_t m = static_cast<std::uint64_t>(next_u32()) * n;
    auto low = static_cast<std::uint32_t>(m);
    if (low < n) {
      const std::uint32_t threshold = (0u - n) % n;
      while (low < threshold) {
        m = static_cast<std::uint64_t>(next_u32()) * n;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

 private:
  void refill() {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(id_.index),
                                  static_cast<std::uint32_t>(id_.index >> 32),
                                  static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32)};
    buf_ = Philox4x32::generate(
        ctr, {static_cast<std::uint32_t>(id_.seed), static_cast<std::uint32_t>(id_.seed >> 32)});
    ++block_;
    pos_ = 0;
  }

  StreamId id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

}  // namespace idla
