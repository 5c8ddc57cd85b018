/**
 * @file grasp_main.cpp
 * @brief Command-line interface over the grading engine and corpus store.
 *
 * Exit codes: 0 success, 1 usage error, 2 load/parse/validation failure,
 * 3 tool not found. Payload goes to stdout, diagnostics to stderr.
 */
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "grasp/corpus.hpp"
#include "grasp/grading.hpp"
#include "grasp/json_io.hpp"
#include "grasp/report.hpp"
#include "grasp/types.hpp"
#include "grasp/validation.hpp"

namespace {

using namespace grasp;

const char* severity_word(Severity s) { return s == Severity::Error ? "error" : "warning"; }

void print_issues(const std::string& path, const ValidationReport& report) {
  for (const auto& issue : report.issues) {
    std::cerr << path << ": " << severity_word(issue.severity) << ": " << issue.field << ": "
              << issue.message << "\n";
  }
}

/// Fills `root` (and `slug` when the command addresses one tool) from the
/// positionals, falling back to $GRASP_CORPUS for the root. Returns an error
/// message on unresolvable targets.
std::optional<std::string> resolve_target(std::vector<std::string> positionals, bool wants_slug,
                                          std::string& root, std::string& slug) {
  const char* env = std::getenv("GRASP_CORPUS");
  const bool has_env = env != nullptr && *env != '\0';
  if (wants_slug) {
    if (positionals.size() == 2) {
      root = positionals[0];
      slug = positionals[1];
      return std::nullopt;
    }
    if (positionals.size() == 1) {
      if (has_env) {
        root = env;
        slug = positionals[0];
        return std::nullopt;
      }
      return "corpus root required: pass <root> <slug> or set GRASP_CORPUS";
    }
    return "tool slug required: pass <root> <slug>, or <slug> with GRASP_CORPUS set";
  }
  if (positionals.size() == 1) {
    root = positionals[0];
    return std::nullopt;
  }
  if (has_env) {
    root = env;
    return std::nullopt;
  }
  return "corpus root required: pass <root> or set GRASP_CORPUS";
}

/// Loads the corpus, reporting failures on stderr. Returns false with
/// `exit_code` set when loading failed.
bool load_or_report(const std::string& root, Catalog& catalog, int& exit_code) {
  try {
    catalog = load_corpus(root);
    return true;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    exit_code = 2;
    return false;
  }
}

/// Finds a slug in the catalog. A file that exists but was quarantined is a
/// load failure (2, with its diagnostics); an unknown slug is not-found (3).
const CatalogEntry* find_entry(const Catalog& catalog, const std::string& slug,
                               int& exit_code) {
  auto it = catalog.entries.find(slug);
  if (it != catalog.entries.end()) return &it->second;
  for (const auto& q : catalog.quarantined) {
    if (std::filesystem::path(q.path).stem().string() == slug) {
      print_issues(q.path, q.issues);
      std::cerr << "error: tool \"" << slug << "\" failed to load\n";
      exit_code = 2;
      return nullptr;
    }
  }
  std::cerr << "error: tool \"" << slug << "\" not found in corpus\n";
  exit_code = 3;
  return nullptr;
}

ReportFormat to_format(const std::string& name) {
  return name == "json" ? ReportFormat::Json : ReportFormat::Markdown;
}

int run_validate(const std::string& root) {
  Catalog catalog;
  int exit_code = 0;
  if (!load_or_report(root, catalog, exit_code)) return exit_code;
  for (const auto& [slug, entry] : catalog.entries) print_issues(entry.path, entry.issues);
  for (const auto& q : catalog.quarantined) print_issues(q.path, q.issues);
  std::cout << catalog.entries.size() << " valid, " << catalog.quarantined.size()
            << " quarantined\n";
  return catalog.quarantined.empty() ? 0 : 2;
}

int run_grade(const std::string& root, const std::string& slug) {
  Catalog catalog;
  int exit_code = 0;
  if (!load_or_report(root, catalog, exit_code)) return exit_code;
  const CatalogEntry* entry = find_entry(catalog, slug, exit_code);
  if (!entry) return exit_code;

  std::cout << entry->grading.grade_name() << "\n";
  std::cout << "markers:";
  for (GradeCell cell : ladder()) {
    auto it = entry->grading.markers.find(cell);
    if (it != entry->grading.markers.end()) {
      std::cout << " " << display_name(cell) << "=" << it->second;
    }
  }
  std::cout << "\n";
  return 0;
}

int run_report(const std::string& root, const std::string& slug, const std::string& format) {
  Catalog catalog;
  int exit_code = 0;
  if (!load_or_report(root, catalog, exit_code)) return exit_code;
  const CatalogEntry* entry = find_entry(catalog, slug, exit_code);
  if (!entry) return exit_code;
  std::cout << render_detailed_report(entry->record, entry->grading, to_format(format));
  return 0;
}

int run_summary(const std::string& root, const std::string& format) {
  Catalog catalog;
  int exit_code = 0;
  if (!load_or_report(root, catalog, exit_code)) return exit_code;
  std::cout << render_summary(catalog, to_format(format));
  return 0;
}

int run_measures(const std::string& root, const std::string& slug, const std::string& format) {
  Catalog catalog;
  int exit_code = 0;
  if (!load_or_report(root, catalog, exit_code)) return exit_code;
  const CatalogEntry* entry = find_entry(catalog, slug, exit_code);
  if (!entry) return exit_code;
  std::cout << render_measures(entry->record, entry->grading, to_format(format));
  return 0;
}

int run_whatif(const std::string& root, const std::string& slug, const std::string& add_path) {
  Catalog catalog;
  int exit_code = 0;
  if (!load_or_report(root, catalog, exit_code)) return exit_code;
  const CatalogEntry* entry = find_entry(catalog, slug, exit_code);
  if (!entry) return exit_code;

  std::ifstream in(add_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << add_path << "\n";
    return 2;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  ParseItemResult parsed = parse_evidence_item(buffer.str());
  if (!parsed.item) {
    print_issues(add_path, parsed.issues);
    std::cerr << "error: hypothetical evidence item failed to parse\n";
    return 2;
  }

  WhatIfResult result;
  try {
    result = whatif(entry->record, *parsed.item);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::cout << result.delta << "\n";
  for (GradeCell cell : ladder()) {
    auto after_it = result.after.cells.find(cell);
    if (after_it == result.after.cells.end()) continue;
    const CellResolution& after = after_it->second;
    auto before_it = result.before.cells.find(cell);
    const bool changed = before_it == result.before.cells.end() ||
                         before_it->second.items != after.items ||
                         before_it->second.trace != after.trace;
    if (!changed) continue;
    std::cout << display_name(cell) << " — " << direction_word(after.effective_direction())
              << " (" << direction_marker(after.effective_direction()) << ")\n";
    for (const std::string& line : after.trace) std::cout << "  " << line << "\n";
  }
  return 0;
}

int run_uplift(const std::string& root, const std::string& slug) {
  Catalog catalog;
  int exit_code = 0;
  if (!load_or_report(root, catalog, exit_code)) return exit_code;
  const CatalogEntry* entry = find_entry(catalog, slug, exit_code);
  if (!entry) return exit_code;
  for (const UpliftOption& option : minimal_uplift(entry->record)) {
    std::cout << display_name(option.target_grade) << ": " << option.description << "\n";
  }
  return 0;
}

struct QueryOptions {
  std::string category;
  std::vector<std::string> grades;
  std::string area;
  std::string automation;
  int min_year = 0;
  bool has_min_year = false;
  std::string endorsement;
};

int run_query(const std::string& root, const QueryOptions& opts) {
  Catalog catalog;
  int exit_code = 0;
  if (!load_or_report(root, catalog, exit_code)) return exit_code;

  QueryFilter filter;
  if (!opts.category.empty()) filter.category = parse_category(opts.category);
  for (const std::string& g : opts.grades) {
    if (std::optional<GradeCell> cell = parse_grade_cell(g)) filter.grades.insert(*cell);
  }
  filter.area_substring = opts.area;
  if (!opts.automation.empty()) filter.automation = parse_automation(opts.automation);
  if (opts.has_min_year) filter.min_year = opts.min_year;
  filter.endorsement_substring = opts.endorsement;

  for (const CatalogEntry* entry : query_catalog(catalog, filter)) {
    const ToolProfile& p = entry->record.profile;
    std::string category = std::string(to_string(p.category));
    category.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(category.front())));
    std::cout << entry->slug << " — " << p.name << " (" << category << ", " << p.country
              << ", " << p.year << ") — " << entry->grading.grade_name() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grade clinical predictive tools from their recorded evaluation evidence"};
  app.require_subcommand(1);

  const char* kRootHint = "Corpus root (defaults to $GRASP_CORPUS)";
  const char* kTargetHint = "Corpus root, or tool slug when $GRASP_CORPUS is set";
  const char* kFormatHint = "Output format";

  auto* validate = app.add_subcommand("validate", "Check every record in the corpus");
  std::vector<std::string> validate_pos;
  validate->add_option("root", validate_pos, kRootHint)->expected(0, 1);

  auto* grade = app.add_subcommand("grade", "Print a tool's final grade and cell markers");
  std::vector<std::string> grade_pos;
  grade->add_option("target", grade_pos, kTargetHint)->expected(0, 2);

  auto* report = app.add_subcommand("report", "Render a tool's detailed evaluation report");
  std::vector<std::string> report_pos;
  std::string report_format = "md";
  report->add_option("target", report_pos, kTargetHint)->expected(0, 2);
  report->add_option("--format", report_format, kFormatHint)
      ->check(CLI::IsMember({"md", "json"}));

  auto* summary = app.add_subcommand("summary", "Render the corpus summary table");
  std::vector<std::string> summary_pos;
  std::string summary_format = "md";
  summary->add_option("root", summary_pos, kRootHint)->expected(0, 1);
  summary->add_option("--format", summary_format, kFormatHint)
      ->check(CLI::IsMember({"md", "json"}));

  auto* measures = app.add_subcommand("measures", "List a tool's reported evaluation measures");
  std::vector<std::string> measures_pos;
  std::string measures_format = "md";
  measures->add_option("target", measures_pos, kTargetHint)->expected(0, 2);
  measures->add_option("--format", measures_format, kFormatHint)
      ->check(CLI::IsMember({"md", "json"}));

  auto* whatif_cmd = app.add_subcommand("whatif", "Regrade with a hypothetical study added");
  std::vector<std::string> whatif_pos;
  std::string whatif_add;
  whatif_cmd->add_option("target", whatif_pos, kTargetHint)->expected(0, 2);
  whatif_cmd->add_option("--add", whatif_add, "JSON file with one evidence item")->required();

  auto* uplift = app.add_subcommand("uplift", "Show the smallest evidence additions that raise the grade");
  std::vector<std::string> uplift_pos;
  uplift->add_option("target", uplift_pos, kTargetHint)->expected(0, 2);

  auto* query = app.add_subcommand("query", "List tools matching profile and grade filters");
  std::vector<std::string> query_pos;
  QueryOptions query_opts;
  query->add_option("root", query_pos, kRootHint)->expected(0, 1);
  query->add_option("--category", query_opts.category, "Tool category")
      ->check(CLI::IsMember({"diagnostic", "prognostic", "therapeutic", "preventive"}));
  query->add_option("--grade", query_opts.grades, "Final grades to keep (comma separated)")
      ->delimiter(',')
      ->check(CLI::IsMember({"a1", "a2", "a3", "b1", "b2", "c1", "c2", "c3", "c0"}));
  query->add_option("--area", query_opts.area, "Clinical-area substring");
  query->add_option("--automation", query_opts.automation, "Automation kind")
      ->check(CLI::IsMember({"manual", "automated"}));
  auto* min_year_opt =
      query->add_option("--min-year", query_opts.min_year, "Keep tools from this year on");
  query->add_option("--endorsement", query_opts.endorsement, "Endorsement substring");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  query_opts.has_min_year = min_year_opt->count() > 0;

  std::string root;
  std::string slug;
  const auto resolve = [&](const std::vector<std::string>& pos, bool wants_slug) -> bool {
    if (std::optional<std::string> err = resolve_target(pos, wants_slug, root, slug)) {
      std::cerr << "error: " << *err << "\n";
      return false;
    }
    return true;
  };

  if (validate->parsed()) return resolve(validate_pos, false) ? run_validate(root) : 1;
  if (grade->parsed()) return resolve(grade_pos, true) ? run_grade(root, slug) : 1;
  if (report->parsed()) {
    return resolve(report_pos, true) ? run_report(root, slug, report_format) : 1;
  }
  if (summary->parsed()) return resolve(summary_pos, false) ? run_summary(root, summary_format) : 1;
  if (measures->parsed()) {
    return resolve(measures_pos, true) ? run_measures(root, slug, measures_format) : 1;
  }
  if (whatif_cmd->parsed()) {
    return resolve(whatif_pos, true) ? run_whatif(root, slug, whatif_add) : 1;
  }
  if (uplift->parsed()) return resolve(uplift_pos, true) ? run_uplift(root, slug) : 1;
  if (query->parsed()) return resolve(query_pos, false) ? run_query(root, query_opts) : 1;
  return 1;
}
