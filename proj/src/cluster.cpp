#include "idla/cluster.hpp"

#include <algorithm>
#include <bit>

#include "idla/error.hpp"

namespace idla {

void SiteSet::rehash(std::size_t capacity) {
  std::vector<std::uint64_t> old = std::move(table_);
  table_.assign(capacity, kEmpty);
  mask_ = capacity - 1;
  shift_ = 64 - std::countr_zero(capacity);
  size_ = 0;
  for (std::uint64_t k : old)
    if (k != kEmpty) insert(k);
}

bool SiteSet::insert(std::uint64_t key) {
  if (2 * (size_ + 1) > table_.size()) rehash(table_.size() * 2);
  for (std::size_t i = slot(key);; i = (i + 1) & mask_) {
    if (table_[i] == key) return false;
    if (table_[i] == kEmpty) {
      table_[i] = key;
      ++size_;
      return true;
    }
  }
}

Cluster::Cluster(int n_vertices) : filled_(static_cast<std::size_t>(n_vertices), 0) {
  if (n_vertices < 1) fail(ErrorKind::invalid_parameter, "cluster needs N >= 1");
}

Cluster Cluster::half_cylinder(int n_vertices, long long k) {
  if (k < 0) fail(ErrorKind::invalid_parameter, "R_k needs k >= 0");
  Cluster c(n_vertices);
  for (long long y = 1; y <= k; ++y)
    for (int x = 0; x < n_vertices; ++x) c.insert(x, y);
  return c;
}

bool Cluster::insert(int x, long long y) {
  if (x < 0 || x >= base_size()) fail(ErrorKind::invalid_parameter, "column out of range");
  if (y < 1) fail(ErrorKind::invalid_parameter, "only sites above level 0 can be added");
  if (!set_.insert(SiteSet::pack(x, y))) return false;
  max_level_ = std::max(max_level_, y);
  if (y == filled_[x] + 1) {
    long long h = y;
    while (h + 1 <= max_level_ && set_.contains(SiteSet::pack(x, h + 1))) ++h;
    filled_[x] = h;
  }
  return true;
}

long long Cluster::inner_radius() const { return *std::min_element(filled_.begin(), filled_.end()); }

std::vector<std::pair<int, long long>> Cluster::sites() const {
  std::vector<std::pair<int, long long>> out;
  out.reserve(set_.size());
  set_.for_each([&](int x, long long y) { out.emplace_back(x, y); });
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  return out;
}

bool Cluster::subset_of(const Cluster& other) const {
  if (other.base_size() != base_size()) return false;
  bool ok = true;
  set_.for_each([&](int x, long long y) { ok = ok && other.contains(x, y); });
  return ok;
}

long long Cluster::symmetric_difference(const Cluster& other) const {
  if (other.base_size() != base_size()) fail(ErrorKind::invalid_parameter, "clusters over different bases");
  long long d = 0;
  set_.for_each([&](int x, long long y) { d += other.contains(x, y) ? 0 : 1; });
  other.set_.for_each([&](int x, long long y) { d += contains(x, y) ? 0 : 1; });
  return d;
}

bool Cluster::operator==(const Cluster& other) const {
  return base_size() == other.base_size() && size() == other.size() && subset_of(other);
}

void Cluster::audit() const {
  std::vector<long long> filled(filled_.size(), 0);
  long long top = 0;
  for (const auto& [x, y] : sites()) {
    top = std::max(top, y);
    if (y == filled[x] + 1) filled[x] = y;
  }
  if (top != max_level_) fail(ErrorKind::numeric_failure, "cluster max level out of sync");
  if (filled != filled_) fail(ErrorKind::numeric_failure, "cluster filled heights out of sync");
}

}  // namespace idla
