#include "ccshuffle/shuffle.hpp"

#include "ccshuffle/fenwick.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ccshuffle {

Permutation remove_reinsert(const Permutation& row, int card, int pos) {
  const int n = row.size();
  if (card < 1 || card > n) throw std::out_of_range("remove_reinsert: card " + std::to_string(card) + " not in deck");
  if (pos < 1 || pos > n) throw std::out_of_range("remove_reinsert: position " + std::to_string(pos) + " out of range");
  std::vector<int> cards(row.cards().begin(), row.cards().end());
  const int from = row.position_of(card) - 1;
  cards.erase(cards.begin() + from);
  cards.insert(cards.begin() + (pos - 1), card);
  return Permutation(std::move(cards));
}

Permutation apply_plan(const Permutation& start, const InsertionPlan& plan) {
  const int n = start.size();
  if (plan.order.size() != n || static_cast<int>(plan.positions.size()) != n) {
    throw std::invalid_argument("apply_plan: plan size does not match deck size");
  }
  std::vector<int> cards(start.cards().begin(), start.cards().end());
  for (int j = 0; j < n; ++j) {
    const int card = plan.order.card_at(j + 1);
    const int pos = plan.positions[j];
    if (pos < 1 || pos > n) throw std::out_of_range("apply_plan: position out of range");
    auto it = std::find(cards.begin(), cards.end(), card);
    cards.erase(it);
    cards.insert(cards.begin() + (pos - 1), card);
  }
  return Permutation(std::move(cards));
}

Permutation card_cyclic_plan_order(const Permutation& start) { return start; }

// Starting from the identity, card t is always the leftmost card not yet
// moved. The row is tracked as blocks: block c (c = t+1..n) holds the moved
// cards lying between unmoved card c-1 and unmoved card c, followed by card
// c itself; block n+1 is the tail after card n. A Fenwick tree over block
// sizes turns each reinsertion position into the card's rank among the
// moved cards. Moved cards never move again, so the final row is the list
// built by inserting card t at that rank, which is resolved backwards with
// a second Fenwick tree over free slots.
Permutation card_cyclic_from_identity(std::span<const int> positions) {
  const int n = static_cast<int>(positions.size());
  if (n < 1) throw std::invalid_argument("card_cyclic_from_identity: empty deck");

  detail::Fenwick blocks(n + 1);
  blocks.fill(1);
  blocks.add(n + 1, -1);  // tail block starts empty
  std::vector<std::int64_t> gap(static_cast<std::size_t>(n) + 2, 0);
  std::vector<int> rank(static_cast<std::size_t>(n) + 1, 0);

  for (int t = 1; t <= n; ++t) {
    const int w = positions[t - 1];
    if (w < 1 || w > n) throw std::out_of_range("card_cyclic_from_identity: position out of range");

    // Remove card t; the moved cards in front of it join the next block.
    const std::int64_t before = gap[t];
    blocks.add(t, -(before + 1));
    blocks.add(t + 1, before);
    gap[t + 1] += before;

    int c = n + 1;
    if (w <= n - 1) c = blocks.lower_bound(w);
    // Cards before the insertion point: w-1, of which c-t-1 are unmoved.
    rank[t] = (w - 1) - (c - t - 1) + 1;
    blocks.add(c, 1);
    gap[c] += 1;
  }

  detail::Fenwick free_slots(n);
  free_slots.fill(1);
  std::vector<int> cards(static_cast<std::size_t>(n));
  for (int t = n; t >= 1; --t) {
    const int slot = free_slots.lower_bound(rank[t]);
    cards[slot - 1] = t;
    free_slots.add(slot, -1);
  }
  return Permutation(std::move(cards));
}

Permutation card_cyclic_shuffle(const Permutation& start, std::span<const int> positions) {
  if (static_cast<int>(positions.size()) != start.size()) {
    throw std::invalid_argument("card_cyclic_shuffle: size mismatch");
  }
  return start.compose(card_cyclic_from_identity(positions));
}

std::vector<int> draw_positions(int n, CounterRng& rng) {
  std::vector<int> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = rng.uniform_int(1, n);
  return w;
}

Permutation sample_shuffle(const Permutation& start, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  const auto w = draw_positions(start.size(), rng);
  return card_cyclic_shuffle(start, w);
}

}  // namespace ccshuffle
