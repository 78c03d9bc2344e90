#include "ccshuffle/permutation.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ccshuffle {

Permutation::Permutation(std::vector<int> cards) : cards_(std::move(cards)) {
  const int n = size();
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int c : cards_) {
    if (c < 1 || c > n || seen[c]) {
      throw std::invalid_argument("not a permutation of 1..n");
    }
    seen[c] = 1;
  }
}

int Permutation::position_of(int card) const {
  auto it = std::find(cards_.begin(), cards_.end(), card);
  if (it == cards_.end()) throw std::out_of_range("card not in deck");
  return static_cast<int>(it - cards_.begin()) + 1;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(cards_.size());
  for (int j = 0; j < size(); ++j) inv[cards_[j] - 1] = j + 1;
  return Permutation(std::move(inv), Unchecked{});
}

Permutation Permutation::compose(const Permutation& q) const {
  if (q.size() != size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> out(cards_.size());
  for (int j = 0; j < size(); ++j) out[j] = cards_[q.cards_[j] - 1];
  return Permutation(std::move(out), Unchecked{});
}

Permutation identity(int n) {
  if (n < 1) throw std::invalid_argument("identity: n must be positive");
  std::vector<int> cards(static_cast<std::size_t>(n));
  std::iota(cards.begin(), cards.end(), 1);
  return Permutation(std::move(cards), Permutation::Unchecked{});
}

Permutation reversed_identity(int n) {
  if (n < 1) throw std::invalid_argument("reversed_identity: n must be positive");
  std::vector<int> cards(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) cards[j] = n - j;
  return Permutation(std::move(cards), Permutation::Unchecked{});
}

std::uint64_t factorial_u64(int n) {
  if (n < 0 || n > 20) throw std::out_of_range("factorial_u64: n out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t rank_permutation(const Permutation& p) {
  const int n = p.size();
  if (n > 20) throw std::out_of_range("rank_permutation: n > 20");
  std::uint64_t rank = 0;
  std::uint32_t used = 0;
  for (int j = 0; j < n; ++j) {
    const int c = p.cards()[j];
    // number of unused cards smaller than c
    const std::uint32_t below = (1u << (c - 1)) - 1u;
    const int smaller = (c - 1) - std::popcount(used & below);
    rank += static_cast<std::uint64_t>(smaller) * factorial_u64(n - 1 - j);
    used |= 1u << (c - 1);
  }
  return rank;
}

Permutation unrank_permutation(int n, std::uint64_t rank) {
  if (n < 1 || n > 20) throw std::out_of_range("unrank_permutation: n out of range");
  if (rank >= factorial_u64(n)) throw std::out_of_range("unrank_permutation: rank too large");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> cards;
  cards.reserve(pool.size());
  for (int j = n - 1; j >= 0; --j) {
    const std::uint64_t f = factorial_u64(j);
    const auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    cards.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation(std::move(cards), Permutation::Unchecked{});
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit) {
  std::vector<int> cards(static_cast<std::size_t>(n));
  std::iota(cards.begin(), cards.end(), 1);
  do {
    visit(Permutation(cards));
  } while (std::next_permutation(cards.begin(), cards.end()));
}

std::string format_permutation(const Permutation& p) {
  std::string out;
  for (int j = 1; j <= p.size(); ++j) {
    if (j > 1) out += ' ';
    out += std::to_string(p.card_at(j));
  }
  return out;
}

Permutation parse_permutation(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<int> cards;
  int c = 0;
  while (in >> c) cards.push_back(c);
  if (!in.eof()) throw std::invalid_argument("malformed permutation: " + std::string(text));
  if (cards.empty()) throw std::invalid_argument("empty permutation");
  return Permutation(std::move(cards));
}

InversionProfile inversion_profile(const Permutation& p) {
  InversionProfile prof;
  prof.n = p.size();
  if (prof.n < 3) return prof;
  const Permutation inv = p.inverse();
  prof.counts.resize(static_cast<std::size_t>(prof.n - 2));
  for (int j = 2; j <= prof.n - 1; ++j) {
    int count = 0;
    const int pos_j = inv.card_at(j);
    for (int k = 1; k < j; ++k) count += inv.card_at(k) > pos_j ? 1 : 0;
    prof.counts[j - 2] = count;
  }
  return prof;
}

LVector::LVector(int n, std::vector<int> values) : n_(n), values_(std::move(values)) {
  if (n < 1) throw std::invalid_argument("LVector: n must be positive");
  if (static_cast<int>(values_.size()) != n - 1) {
    throw std::invalid_argument("LVector: expected n-1 entries");
  }
  for (int j = 1; j <= n - 1; ++j) {
    const int v = values_[j - 1];
    if (v < j || v > n - 1) {
      throw std::invalid_argument("LVector: entry l_" + std::to_string(j) + " = " +
                                  std::to_string(v) + " outside [" + std::to_string(j) +
                                  ", " + std::to_string(n - 1) + "]");
    }
  }
}

LVector LVector::staircase(int n) {
  std::vector<int> v(static_cast<std::size_t>(std::max(n - 1, 0)));
  std::iota(v.begin(), v.end(), 1);
  return LVector(n, std::move(v));
}

LVector LVector::saturated(int n) {
  return LVector(n, std::vector<int>(static_cast<std::size_t>(std::max(n - 1, 0)), n - 1));
}

LVector l_vector(const Permutation& p) {
  const int n = p.size();
  if (n < 3) return LVector::staircase(n);
  const InversionProfile prof = inversion_profile(p);
  std::vector<int> v(static_cast<std::size_t>(n - 1));
  for (int j = 1; j <= n - 2; ++j) v[j - 1] = j + prof.at(n - j);
  v[n - 2] = n - 1;
  return LVector(n, std::move(v));
}

std::string format_lvector(const LVector& l) {
  std::string out = "l:";
  for (int v : l.values()) out += ' ' + std::to_string(v);
  return out;
}

LVector parse_lvector(std::string_view text) {
  std::string s(text);
  if (s.rfind("l:", 0) == 0) s.erase(0, 2);
  std::istringstream in(s);
  std::vector<int> values;
  int v = 0;
  while (in >> v) values.push_back(v);
  if (!in.eof()) throw std::invalid_argument("malformed l-vector: " + std::string(text));
  const int n = static_cast<int>(values.size()) + 1;
  return LVector(n, std::move(values));
}

}  // namespace ccshuffle
