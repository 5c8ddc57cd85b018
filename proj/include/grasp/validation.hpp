/**
 * @file validation.hpp
 * @brief Report-style validation of tool profiles, evidence items, and
 *        whole records. Problems are collected, never thrown.
 */
#pragma once

#include <string>
#include <vector>

#include "grasp/types.hpp"

namespace grasp {

enum class Severity { Error, Warning };

struct ValidationIssue {
  Severity severity = Severity::Error;
  std::string field;    ///< dotted path, e.g. "profile.year" or "evidence[2].dataset_count"
  std::string message;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  void add_error(std::string field, std::string message);
  void add_warning(std::string field, std::string message);
  /// Appends another report's issues, prefixing each field with `prefix`.
  void merge(const ValidationReport& other, const std::string& prefix = "");

  int error_count() const;
  int warning_count() const;
  /// True when the report carries no errors (warnings are fine).
  bool ok() const { return error_count() == 0; }
};

/// Checks profile invariants: nonempty name, valid year range (1900..current
/// year), non-negative citations. Empty optional text fields draw warnings.
ValidationReport validate_tool_profile(const ToolProfile& profile);

/// Checks item invariants: dataset_count present iff external validation and
/// >= 1; impact_category only on usability/potential-effect/impact items;
/// measure sanity (ci_low <= ci_high, p_value in [0,1], vocabulary names).
ValidationReport validate_evidence_item(const EvidenceItem& item);

/// Whole-record validation: profile + every item (fields prefixed with their
/// position) + record-level invariants (unique evidence ids, sane overrides).
ValidationReport validate_record(const ToolRecord& record);

/// True if `name` is in the measure vocabulary or is an "other:<text>" label.
bool is_known_measure_name(const std::string& name);

/// Human-readable display label for a measure name ("auc_c_statistic" ->
/// "AUC/c-statistic"; "other:Foo" -> "Foo").
std::string measure_display_name(const std::string& name);

}  // namespace grasp
