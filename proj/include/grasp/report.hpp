/**
 * @file report.hpp
 * @brief Rendering of grading results: detailed per-tool reports, corpus
 *        summary tables, and reported-measure listings, as Markdown or JSON.
 *
 * All output is deterministic — no timestamps, no locale dependence, stable
 * ordering everywhere.
 */
#pragma once

#include <string>

#include "grasp/corpus.hpp"
#include "grasp/grading.hpp"
#include "grasp/types.hpp"

namespace grasp {

enum class ReportFormat { Markdown, Json };

/// The one-line marker key printed under tables:
/// "+ positive evidence; - negative evidence; ..."
std::string marker_legend();

/// Shortest clean decimal for a reported value: trailing zeros trimmed,
/// integral values without a decimal point (e.g. 0.68, 14.1, 90).
std::string format_number(double value);

/**
 * Full per-tool report: tool information table, evaluation levels walked
 * from first validation to post-implementation impact (grouped by phase,
 * with per-cell direction, studies, and decision trace), final grade with
 * marker row, justification, and labeled references.
 */
std::string render_detailed_report(const ToolRecord& record, const GradingResult& result,
                                   ReportFormat format);

/// One-row-per-tool corpus table, weakest grade first (ties: year, then
/// name), with per-cell marker columns and the legend.
std::string render_summary(const Catalog& catalog, ReportFormat format);

/**
 * Reported measures grouped into Discrimination & Calibration (accuracy
 * statistics wherever they were reported), Usability, and
 * Post-implementation Impact. Values are echoed verbatim with their units,
 * confidence intervals, p-values, and cutoffs; nothing is recomputed.
 */
std::string render_measures(const ToolRecord& record, const GradingResult& result,
                            ReportFormat format);

}  // namespace grasp
