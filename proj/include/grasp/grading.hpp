/**
 * @file grading.hpp
 * @brief The grading engine: assigns evidence items to grade cells, resolves
 *        each cell's direction, and walks the ladder to the final grade.
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grasp/types.hpp"

namespace grasp {

/// One cell's resolution: which items populate it, the computed direction,
/// any expert override applied, and the human-readable decision steps.
struct CellResolution {
  GradeCell cell = GradeCell::C3;
  std::vector<std::string> items;  ///< evidence ids, display order
  Direction direction = Direction::Positive;  ///< computed from the evidence
  std::optional<Override> override_applied;   ///< expert adjudication, if any
  std::vector<std::string> trace;

  /// Override direction when present, computed direction otherwise — the
  /// direction the ladder actually consults.
  Direction effective_direction() const {
    return override_applied ? override_applied->direction : direction;
  }
};

/// The full grading outcome for one record.
struct GradingResult {
  std::string tool;  ///< slug when graded via a catalog, profile name otherwise
  std::map<GradeCell, CellResolution> cells;  ///< populated cells only
  std::optional<GradeCell> final_grade;       ///< nullopt = Ungraded
  std::string justification;
  /// Marker per populated cell (e.g. "±+"). C2 is omitted whenever C1 is also
  /// populated: C1 pools every external item including the C2 anchor, so a
  /// separate C2 mark would duplicate it (summary rows never mark C2).
  std::map<GradeCell, std::string> markers;

  /// "C1", "A2", ... or "Ungraded".
  std::string grade_name() const {
    return final_grade ? std::string(display_name(*final_grade)) : "Ungraded";
  }
};

/**
 * Assigns evidence items to grade cells:
 *  - internal validation: sufficient -> C3, insufficient -> C0;
 *  - external validation, ordered by year: when the items' dataset_count sum
 *    is >= 2 the earliest item populates C2 and every external item
 *    (earliest included) populates C1; a single dataset populates C2 only;
 *  - usability -> B1; potential effect -> B2;
 *  - impact by study design: experimental -> A1, observational -> A2,
 *    subjective -> A3.
 */
std::map<GradeCell, std::vector<EvidenceItem>> assign_cells(
    const std::vector<EvidenceItem>& evidence);

/**
 * Resolves one populated cell: raw direction from the conclusions, refined by
 * the mixed-evidence protocol when mixed, with any matching expert override
 * from `overrides` recorded (the trace shows both directions).
 *
 * @pre items nonempty.
 */
CellResolution resolve_cell(GradeCell cell, const std::vector<EvidenceItem>& items,
                            const std::vector<Override>& overrides);

/**
 * Grades a record: resolves every populated cell, then walks the ladder
 * A1 -> C3; the first cell whose effective direction is positive or
 * mixed-positive is the final grade. When nothing qualifies, a populated C0
 * grades C0; a record with no evidence at all is Ungraded.
 *
 * @param tool_id identifier carried into the result (slug or display name);
 *        defaults to the profile name.
 * @throws std::invalid_argument "record invalid" when validation reports errors.
 */
GradingResult final_grade(const ToolRecord& record, const std::string& tool_id = "");

struct WhatIfResult {
  GradingResult before;
  GradingResult after;
  std::string delta;  ///< "C1 → A1" (also printed when unchanged: "B1 → B1")
};

/**
 * Regrades the record with one hypothetical item appended.
 * @throws std::invalid_argument when the hypothetical does not validate
 *         against the record (e.g. duplicate id) or the record is invalid.
 */
WhatIfResult whatif(const ToolRecord& record, const EvidenceItem& hypothetical);

struct UpliftOption {
  GradeCell target_grade = GradeCell::A1;
  int required_items = 0;  ///< smallest count of positive class-A hypotheticals
  std::string description;
};

/**
 * For each ladder cell above the record's current grade, the smallest number
 * of positive, fully matching, high-quality hypothetical items (of that
 * cell's own evaluation type) that flips the cell to effective-positive;
 * computed by simulation. Unattainable cells (e.g. pinned negative by an
 * override) are omitted. Best targets first; empty when already at A1.
 */
std::vector<UpliftOption> minimal_uplift(const ToolRecord& record);

/// Summary "Studies" tally: every item counts once, and a pooling external
/// item (dataset_count k > 1) additionally counts its k pooled datasets.
int reported_study_count(const std::vector<EvidenceItem>& evidence);

}  // namespace grasp
