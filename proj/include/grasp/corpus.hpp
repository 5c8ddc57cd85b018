/**
 * @file corpus.hpp
 * @brief File-backed corpus of tool records: loading, quarantine of bad
 *        files, cached grading, and filtered queries.
 *
 * Layout: one record per .json file under `<root>/tools/` (searched
 * recursively); the file stem is the tool's slug (its lookup key). Files that
 * fail to parse or validate are quarantined with their diagnostics instead of
 * aborting the load.
 */
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "grasp/grading.hpp"
#include "grasp/types.hpp"
#include "grasp/validation.hpp"

namespace grasp {

struct CatalogEntry {
  std::string slug;
  std::string path;
  ToolRecord record;
  GradingResult grading;      ///< graded once at load time
  ValidationReport issues;    ///< warnings only; errors would have quarantined
};

struct QuarantinedFile {
  std::string path;
  ValidationReport issues;  ///< the schema or semantic errors that kept it out
};

struct Catalog {
  std::string root;
  std::map<std::string, CatalogEntry> entries;  ///< slug -> entry
  std::vector<QuarantinedFile> quarantined;     ///< load order (sorted by path)
};

/**
 * Loads every record under `<root>/tools`. Deterministic: files are visited
 * in sorted path order. A missing `tools` directory is an empty corpus.
 *
 * @throws std::runtime_error when `root` is not a readable directory, or when
 *         two files share a slug (the message names both paths).
 */
Catalog load_corpus(const std::string& root);

/// Conjunctive query filter; default-constructed matches everything.
/// Substring filters are case-insensitive.
struct QueryFilter {
  std::optional<Category> category;
  std::string area_substring;        ///< matched against clinical_area
  std::set<GradeCell> grades;        ///< final grades to keep; empty = all
  std::optional<Automation> automation;
  std::optional<int> min_year;
  std::string endorsement_substring; ///< matched against any endorsement
};

/// Entries passing the filter, best grade first (Ungraded last), then by
/// tool name, then slug.
std::vector<const CatalogEntry*> query_catalog(const Catalog& catalog,
                                               const QueryFilter& filter);

}  // namespace grasp
