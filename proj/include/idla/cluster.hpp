#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace idla {

// Open-addressing set of packed (x, y) sites, y >= 1.
class SiteSet {
 public:
  SiteSet() { rehash(64); }

  static std::uint64_t pack(int x, long long y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(y)) << 32) | static_cast<std::uint32_t>(x);
  }
  bool contains(std::uint64_t key) const {
    for (std::size_t i = slot(key);; i = (i + 1) & mask_) {
      const std::uint64_t k = table_[i];
      if (k == key) return true;
      if (k == kEmpty) return false;
    }
  }
  bool insert(std::uint64_t key);
  std::size_t size() const { return size_; }
  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t k : table_)
      if (k != kEmpty) f(static_cast<int>(static_cast<std::uint32_t>(k)), static_cast<long long>(static_cast<std::int32_t>(k >> 32)));
  }

 private:
  static constexpr std::uint64_t kEmpty = ~0ull;
  std::size_t slot(std::uint64_t key) const { return (key * 0x9E3779B97F4A7C15ull) >> shift_; }
  void rehash(std::size_t capacity);

  std::vector<std::uint64_t> table_;
  std::size_t mask_ = 0;
  int shift_ = 64;
  std::size_t size_ = 0;
};

// Occupied set A = R_0 union A_+ on the cylinder. Membership: y <= 0, or
// y <= filled height of the column, or (x, y) stored in the site set.
class Cluster {
 public:
  explicit Cluster(int n_vertices);
  // R_k: every level 1..k filled (k >= 0).
  static Cluster half_cylinder(int n_vertices, long long k);

  int base_size() const { return static_cast<int>(filled_.size()); }
  // Number of occupied sites above level 0 (the particle count t for IDLA).
  long long size() const { return static_cast<long long>(set_.size()); }

  bool contains(int x, long long y) const {
    if (y <= filled_[x]) return true;
    if (y > max_level_) return false;
    return set_.contains(SiteSet::pack(x, y));
  }
  // Adds (x, y), y >= 1. Returns false if the site was already occupied.
  bool insert(int x, long long y);

  long long filled_height(int x) const { return filled_[x]; }
  // Largest h with R_h contained in the cluster.
  long long inner_radius() const;
  // Highest occupied level, 0 for an empty A_+.
  long long outer_height() const { return max_level_; }

  // Occupied sites above level 0 sorted by (y, x).
  std::vector<std::pair<int, long long>> sites() const;
  bool subset_of(const Cluster& other) const;
  long long symmetric_difference(const Cluster& other) const;
  bool operator==(const Cluster& other) const;

  // Recomputes the per-column summaries from the site set; throws on mismatch.
  void audit() const;

 private:
  SiteSet set_;
  std::vector<long long> filled_;
  long long max_level_ = 0;
};

}  // namespace idla
