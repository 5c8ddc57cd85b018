/**
 * @file json_io.hpp
 * @brief JSON (de)serialization of tool records with schema diagnostics and a
 *        canonical, byte-stable output form.
 *
 * Parsing is shape-level: unknown fields, wrong types, missing required
 * fields, and out-of-vocabulary enum values are collected (all of them, not
 * just the first). Semantic rules live in validation.hpp and run separately.
 *
 * The canonical form emitted by serialize_record is deterministic:
 * lexicographically sorted keys, two-space indent, a single trailing newline,
 * raw UTF-8 (no \u escapes), and whole numbers written as JSON integers.
 * Parsing canonical text and serializing again reproduces it byte for byte.
 */
#pragma once

#include <optional>
#include <string>

#include "grasp/types.hpp"
#include "grasp/validation.hpp"

namespace grasp {

struct ParseResult {
  /// Present iff `issues` carries no errors.
  std::optional<ToolRecord> record;
  /// Schema problems; syntax errors cite "line L, column C".
  ValidationReport issues;
};

/// Result of parsing a standalone evidence-item document (hypothetical
/// studies fed to the what-if analysis).
struct ParseItemResult {
  std::optional<EvidenceItem> item;
  ValidationReport issues;
};

/**
 * Parses a full record document: {"profile": ..., "evidence": [...],
 * "overrides": [...]}. Required profile fields: name, category, year,
 * citations, automation; evidence and overrides default to empty. When a
 * matching/quality block is given it must spell out every dimension.
 */
ParseResult parse_record(const std::string& text);

/// Parses one evidence-item object (same schema as an "evidence" element).
ParseItemResult parse_evidence_item(const std::string& text);

/// Serializes to canonical form (see file comment). Optional fields are
/// emitted only when present, except `sufficient` (always on internal
/// validation items) and `dataset_count` (always on external ones).
std::string serialize_record(const ToolRecord& record);

}  // namespace grasp
