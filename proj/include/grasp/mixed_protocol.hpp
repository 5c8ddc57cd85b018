/**
 * @file mixed_protocol.hpp
 * @brief The mixed-evidence protocol: classify studies by matching and
 *        quality (Class A/B/C), then resolve a mixed cell by class dominance
 *        and conclusion majority, descending classes on ties.
 */
#pragma once

#include <string>
#include <vector>

#include "grasp/types.hpp"

namespace grasp {

/// True iff no matching dimension contradicts the tool specification
/// (Mismatch on any dimension defeats matching; Unreported never does).
bool is_matching(const MatchingProfile& matching);

/// True iff no quality criterion is inadequate (Unreported counts toward
/// adequate, mirroring the matching rule).
bool is_high_quality(const QualityProfile& quality);

/// Class A = matching and high quality; B = exactly one of the two; C = neither.
EvidenceClass classify_study(const EvidenceItem& item);

/// Result of resolving one mixed cell, with the human-readable decision steps.
struct ResolvedDirection {
  Direction value = Direction::Unresolved;
  std::vector<std::string> trace;  ///< each class examined, both tallies, the decision
};

/**
 * Resolves a mixed cell: for the highest study class present (A > B > C),
 * compare positive conclusions against equivocal+negative ones; an unequal
 * tally decides MixedPositive/MixedNegative, a tie descends to the next class
 * present, and a tie persisting through every class yields Unresolved (left
 * to expert adjudication via record overrides).
 *
 * @pre resolve_raw_direction over the items' conclusions is Mixed.
 * @throws std::logic_error "protocol applies to mixed evidence only" otherwise.
 */
ResolvedDirection resolve_mixed(const std::vector<EvidenceItem>& items);

}  // namespace grasp
