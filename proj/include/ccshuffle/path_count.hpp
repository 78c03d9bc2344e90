#pragma once

#include "ccshuffle/numeric.hpp"
#include "ccshuffle/permutation.hpp"

#include <string>
#include <vector>

namespace ccshuffle {

/// A nondecreasing l-path Y_1 <= ... <= Y_n = n, rising strictly after
/// every step i with Y_i <= l_i.
struct LPath {
  std::vector<int> y;

  friend bool operator==(const LPath&, const LPath&) = default;
  friend auto operator<=>(const LPath&, const LPath&) = default;
};

bool is_valid_path(const LPath& path, const LVector& l);

/// N_n(l), the number of nondecreasing l-paths of length n. Forward DP over
/// (step, height) with prefix sums: O(n^2) big-integer additions.
BigInt count_paths(const LVector& l);

inline constexpr int kMaxEnumerateN = 14;

/// All l-paths in lexicographic order. Throws std::length_error for n > 14.
std::vector<LPath> enumerate_paths(const LVector& l);

BigInt catalan(int n);

inline constexpr int kMaxLVectorInverseN = 10;

/// The n permutations sharing the given l-vector, ordered by the position of
/// card n (1..n). Throws std::length_error for n > 10.
std::vector<Permutation> perms_with_lvector(const LVector& l);

struct ExtremalScan {
  BigInt min;
  LVector argmin;
  std::uint64_t min_count = 0;  // how many l attain the minimum
  BigInt max;
  LVector argmax;
  std::uint64_t max_count = 0;
  std::uint64_t scanned = 0;    // (n-1)!
};

inline constexpr int kMaxScanN = 9;

/// Exhaustive min/max of N_n(l) over every valid l; n <= 9.
ExtremalScan extremal_scan(int n);

/// Calls `visit` for every valid l of size n in lexicographic order.
void for_each_lvector(int n, const std::function<void(const LVector&)>& visit);

/// Y_1 H's, a T, Y_2-Y_1 H's, a T, ..., Y_n-Y_{n-1} H's, a T. Requires a
/// path valid for the staircase l = (1, ..., n-1).
std::string dyck_bijection(const LPath& path);

/// n H's, n T's, and no prefix with more T's than H's.
bool is_dyck_word(const std::string& word);

}  // namespace ccshuffle
