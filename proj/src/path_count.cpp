#include "ccshuffle/path_count.hpp"

#include <functional>
#include <stdexcept>

namespace ccshuffle {

bool is_valid_path(const LPath& path, const LVector& l) {
  const int n = l.n();
  if (static_cast<int>(path.y.size()) != n) return false;
  if (path.y.front() < 1 || path.y.back() != n) return false;
  for (int i = 1; i < n; ++i) {
    const int cur = path.y[i - 1];
    const int next = path.y[i];
    if (next < cur) return false;
    if (cur <= l.at(i) && next == cur) return false;
  }
  return true;
}

BigInt count_paths(const LVector& l) {
  const int n = l.n();
  // ways[y] = number of valid prefixes Y_1..Y_i with Y_i = y.
  std::vector<BigInt> ways(static_cast<std::size_t>(n) + 1, 0);
  for (int y = 1; y <= n; ++y) ways[y] = 1;
  std::vector<BigInt> next(ways.size());
  for (int i = 1; i < n; ++i) {
    const int li = l.at(i);
    BigInt below = 0;  // sum of ways[y'] over y' < y
    for (int y = 1; y <= n; ++y) {
      next[y] = below;
      if (y > li) next[y] += ways[y];
      below += ways[y];
    }
    std::swap(ways, next);
  }
  return ways[n];
}

std::vector<LPath> enumerate_paths(const LVector& l) {
  const int n = l.n();
  if (n > kMaxEnumerateN) {
    throw std::length_error("enumerate_paths: n = " + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxEnumerateN));
  }
  std::vector<LPath> out;
  LPath current;
  current.y.resize(static_cast<std::size_t>(n));
  std::function<void(int, int)> extend = [&](int i, int lowest) {
    // i: 0-based index of the step being chosen; lowest: smallest legal Y_i.
    for (int y = lowest; y <= n; ++y) {
      current.y[i] = y;
      if (i == n - 1) {
        if (y == n) out.push_back(current);
        continue;
      }
      extend(i + 1, y <= l.at(i + 1) ? y + 1 : y);
    }
  };
  extend(0, 1);
  return out;
}

BigInt catalan(int n) {
  if (n < 0) throw std::invalid_argument("catalan: negative n");
  return binomial(2 * static_cast<unsigned>(n), static_cast<unsigned>(n)) / (n + 1);
}

std::vector<Permutation> perms_with_lvector(const LVector& l) {
  const int n = l.n();
  if (n > kMaxLVectorInverseN) {
    throw std::length_error("perms_with_lvector: n = " + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxLVectorInverseN));
  }
  // Arrange cards 1..n-1: card k has I_k = l_{n-k} - (n-k) lower cards to
  // its right, so it sits after (k-1-I_k) of the cards 1..k-1.
  std::vector<int> row;
  row.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n - 1; ++k) {
    const int inv = (k >= 2 && k <= n - 1 && n >= 3) ? l.at(n - k) - (n - k) : 0;
    row.insert(row.begin() + (k - 1 - inv), k);
  }
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int pos = 1; pos <= n; ++pos) {
    std::vector<int> cards = row;
    cards.insert(cards.begin() + (pos - 1), n);
    out.emplace_back(std::move(cards));
  }
  return out;
}

void for_each_lvector(int n, const std::function<void(const LVector&)>& visit) {
  if (n < 1) throw std::invalid_argument("for_each_lvector: n must be positive");
  if (n <= 2) {
    visit(LVector::staircase(n));
    return;
  }
  std::vector<int> v(static_cast<std::size_t>(n - 1));
  for (int j = 1; j <= n - 1; ++j) v[j - 1] = j;
  v[n - 2] = n - 1;
  while (true) {
    visit(LVector(n, v));
    // odometer over l_1..l_{n-2}, last coordinate fastest
    int j = n - 2;
    while (j >= 1 && v[j - 1] == n - 1) {
      v[j - 1] = j;
      --j;
    }
    if (j == 0) break;
    ++v[j - 1];
  }
}

ExtremalScan extremal_scan(int n) {
  if (n < 1) throw std::invalid_argument("extremal_scan: n must be positive");
  if (n > kMaxScanN) {
    throw std::length_error("extremal_scan: n = " + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxScanN) + " ((n-1)! l-vectors)");
  }
  ExtremalScan scan;
  bool first = true;
  for_each_lvector(n, [&](const LVector& l) {
    BigInt c = count_paths(l);
    ++scan.scanned;
    if (first || c < scan.min) {
      scan.min = c;
      scan.argmin = l;
      scan.min_count = 1;
    } else if (c == scan.min) {
      ++scan.min_count;
    }
    if (first || c > scan.max) {
      scan.max = c;
      scan.argmax = l;
      scan.max_count = 1;
    } else if (c == scan.max) {
      ++scan.max_count;
    }
    first = false;
  });
  return scan;
}

std::string dyck_bijection(const LPath& path) {
  const int n = static_cast<int>(path.y.size());
  if (n < 1 || !is_valid_path(path, LVector::staircase(n))) {
    throw std::invalid_argument("dyck_bijection: path is not a staircase l-path");
  }
  std::string word;
  word.reserve(2 * static_cast<std::size_t>(n));
  int prev = 0;
  for (int y : path.y) {
    word.append(static_cast<std::size_t>(y - prev), 'H');
    word.push_back('T');
    prev = y;
  }
  return word;
}

bool is_dyck_word(const std::string& word) {
  int height = 0;
  for (char c : word) {
    if (c == 'H') {
      ++height;
    } else if (c == 'T') {
      if (--height < 0) return false;
    } else {
      return false;
    }
  }
  return height == 0 && word.size() % 2 == 0;
}

}  // namespace ccshuffle
