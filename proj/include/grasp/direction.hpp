/**
 * @file direction.hpp
 * @brief The conclusion calculus: maps a multiset of study conclusions to a
 *        raw evidence direction (positive / negative / mixed).
 */
#pragma once

#include <vector>

#include "grasp/types.hpp"

namespace grasp {

/// Per-side tally of a conclusion multiset.
struct ConclusionCounts {
  int positive = 0;
  int equivocal = 0;
  int negative = 0;

  int total() const { return positive + equivocal + negative; }
  /// Equivocal findings sit on the negative side of every tally.
  int non_positive() const { return equivocal + negative; }
};

ConclusionCounts count_conclusions(const std::vector<Conclusion>& conclusions);

/**
 * Resolves the raw direction of a nonempty conclusion multiset:
 *  - Positive iff every conclusion is positive;
 *  - Negative iff no conclusion is positive (equivocal and/or negative only);
 *  - Mixed iff at least one positive coexists with an equivocal or negative.
 *
 * @throws std::invalid_argument "no evidence at this cell" when empty.
 */
RawDirection resolve_raw_direction(const std::vector<Conclusion>& conclusions);

/// Same calculus on a precomputed tally (total() must be nonzero).
RawDirection resolve_raw_direction(const ConclusionCounts& counts);

}  // namespace grasp
