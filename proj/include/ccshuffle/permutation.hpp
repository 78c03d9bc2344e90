#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccshuffle {

/// A deck of n cards numbered 1..n. Positions and card numbers are 1-based:
/// card_at(j) is the number of the card in position j from the left.
class Permutation {
 public:
  Permutation() = default;

  /// Throws std::invalid_argument unless `cards` is a bijection of {1..n}.
  explicit Permutation(std::vector<int> cards);

  int size() const { return static_cast<int>(cards_.size()); }
  int card_at(int position) const { return cards_[position - 1]; }
  int position_of(int card) const;

  std::span<const int> cards() const { return cards_; }

  Permutation inverse() const;

  /// p.compose(q).card_at(j) = p.card_at(q.card_at(j)). Applying to a deck in
  /// state p the position moves that take id to q yields p.compose(q).
  Permutation compose(const Permutation& q) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> cards, Unchecked) : cards_(std::move(cards)) {}
  friend Permutation identity(int n);
  friend Permutation unrank_permutation(int n, std::uint64_t rank);
  friend Permutation reversed_identity(int n);

  std::vector<int> cards_;
};

Permutation identity(int n);
Permutation reversed_identity(int n);

/// Lexicographic rank in S_n, 0-based; n <= 20.
std::uint64_t rank_permutation(const Permutation& p);
Permutation unrank_permutation(int n, std::uint64_t rank);
std::uint64_t factorial_u64(int n);

/// Visits every permutation of S_n in lexicographic order.
void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit);

/// "3 1 2"
std::string format_permutation(const Permutation& p);
Permutation parse_permutation(std::string_view text);

/// I_j for j = 2..n-1: inversions between card j and lower-numbered cards,
/// i.e. the number of cards k < j lying to the right of card j.
struct InversionProfile {
  int n = 0;
  std::vector<int> counts;  // counts[j - 2] = I_j

  int at(int j) const { return counts[j - 2]; }
};

InversionProfile inversion_profile(const Permutation& p);

/// l = (l_1, ..., l_{n-1}) with j <= l_j <= n-1. Validated on construction.
class LVector {
 public:
  LVector() = default;
  LVector(int n, std::vector<int> values);

  int n() const { return n_; }
  int at(int j) const { return values_[j - 1]; }
  std::span<const int> values() const { return values_; }

  static LVector staircase(int n);   // (1, 2, ..., n-1)
  static LVector saturated(int n);   // (n-1, ..., n-1)

  friend bool operator==(const LVector&, const LVector&) = default;
  friend auto operator<=>(const LVector&, const LVector&) = default;

 private:
  int n_ = 1;
  std::vector<int> values_;
};

/// l_{n-1} = n-1, l_j = j + I_{n-j}(p). For n = 1 the vector is empty; for
/// n = 2 it is (1).
LVector l_vector(const Permutation& p);

/// "l: 1 2 3"
std::string format_lvector(const LVector& l);
LVector parse_lvector(std::string_view text);

}  // namespace ccshuffle
