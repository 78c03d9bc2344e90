#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace ccshuffle::detail {

// 1-based binary indexed tree over nonnegative integer weights.
class Fenwick {
 public:
  explicit Fenwick(int size) : tree_(static_cast<std::size_t>(size) + 1, 0) {}

  // O(size) construction with every weight set to `w`.
  void fill(std::int64_t w) {
    const int n = size();
    for (int i = 1; i <= n; ++i) tree_[i] = w;
    for (int i = 1; i <= n; ++i) {
      const int parent = i + (i & -i);
      if (parent <= n) tree_[parent] += tree_[i];
    }
  }

  int size() const { return static_cast<int>(tree_.size()) - 1; }

  void add(int i, std::int64_t delta) {
    for (; i <= size(); i += i & -i) tree_[i] += delta;
  }

  std::int64_t prefix(int i) const {
    std::int64_t s = 0;
    for (; i > 0; i -= i & -i) s += tree_[i];
    return s;
  }

  // Smallest i with prefix(i) >= target, or size()+1 if there is none.
  int lower_bound(std::int64_t target) const {
    int pos = 0;
    const int n = size();
    for (int step = std::bit_floor(static_cast<unsigned>(n)); step > 0; step >>= 1) {
      const int next = pos + step;
      if (next <= n && tree_[next] < target) {
        pos = next;
        target -= tree_[next];
      }
    }
    return pos + 1;
  }

 private:
  std::vector<std::int64_t> tree_;
};

}  // namespace ccshuffle::detail
