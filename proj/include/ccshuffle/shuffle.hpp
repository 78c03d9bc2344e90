#pragma once

#include "ccshuffle/permutation.hpp"
#include "ccshuffle/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ccshuffle {

/// One full pass of removals: the j-th card removed is order.card_at(j) and
/// it is reinserted so that it occupies positions[j-1] in the resulting row.
struct InsertionPlan {
  Permutation order;
  std::vector<int> positions;

  int size() const { return order.size(); }
};

/// Removes `card` and reinserts it so that it ends up in position `pos` of
/// the n-card row; cards formerly at positions >= pos shift right.
Permutation remove_reinsert(const Permutation& row, int card, int pos);

/// Applies plan.order[1..n] sequentially. O(n^2); the reference semantics.
Permutation apply_plan(const Permutation& start, const InsertionPlan& plan);

/// The card-cyclic removal order: cards are taken in the deck's original
/// left-to-right order, so the order equals `start` itself.
Permutation card_cyclic_plan_order(const Permutation& start);

/// Result of the card-cyclic shuffle from the identity with reinsertion
/// positions `positions` (1-based, each in 1..n). Same result as
/// apply_plan(identity(n), {identity(n), positions}) in O(n log n).
Permutation card_cyclic_from_identity(std::span<const int> positions);

/// Card-cyclic shuffle of `start` with the given positions. Relabels the
/// identity result, which is exact because the removal order follows
/// positions, not card numbers.
Permutation card_cyclic_shuffle(const Permutation& start, std::span<const int> positions);

/// n independent uniform draws on {1..n}, consumed from `rng` in order.
std::vector<int> draw_positions(int n, CounterRng& rng);

/// Card-cyclic to random insertion shuffle of `start` driven by the stream
/// (seed, stream). Deterministic in (start, seed, stream).
Permutation sample_shuffle(const Permutation& start, std::uint64_t seed, std::uint64_t stream);

}  // namespace ccshuffle
