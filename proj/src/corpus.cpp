#include "grasp/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "grasp/json_io.hpp"

namespace grasp {
namespace {

namespace fs = std::filesystem;

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool contains_insensitive(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}

/// Rank used for ordering query results; Ungraded sinks below every cell.
int grade_rank(const GradingResult& grading) {
  return grading.final_grade ? ladder_rank(*grading.final_grade)
                             : static_cast<int>(ladder().size());
}

}  // namespace

Catalog load_corpus(const std::string& root) {
  const fs::path root_path(root);
  if (!fs::exists(root_path) || !fs::is_directory(root_path)) {
    throw std::runtime_error("corpus root not readable: " + root);
  }

  Catalog catalog;
  catalog.root = root;

  const fs::path tools_dir = root_path / "tools";
  if (!fs::exists(tools_dir)) return catalog;  // an empty corpus, not an error

  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(tools_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });

  std::map<std::string, fs::path> slug_origin;
  for (const auto& path : files) {
    const std::string slug = path.stem().string();
    auto [it, inserted] = slug_origin.emplace(slug, path);
    if (!inserted) {
      throw std::runtime_error("duplicate tool slug \"" + slug + "\": " +
                               it->second.generic_string() + " and " + path.generic_string());
    }
  }

  for (const auto& path : files) {
    const std::string path_text = path.generic_string();
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      ValidationReport rep;
      rep.add_error("document", "cannot read file");
      catalog.quarantined.push_back({path_text, std::move(rep)});
      continue;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    ParseResult parsed = parse_record(buffer.str());
    if (!parsed.record) {
      catalog.quarantined.push_back({path_text, std::move(parsed.issues)});
      continue;
    }
    ValidationReport rep = validate_record(*parsed.record);
    if (!rep.ok()) {
      catalog.quarantined.push_back({path_text, std::move(rep)});
      continue;
    }

    const std::string slug = path.stem().string();
    CatalogEntry entry;
    entry.slug = slug;
    entry.path = path_text;
    entry.grading = final_grade(*parsed.record, slug);
    entry.record = std::move(*parsed.record);
    entry.issues = std::move(rep);
    catalog.entries.emplace(slug, std::move(entry));
  }
  return catalog;
}

std::vector<const CatalogEntry*> query_catalog(const Catalog& catalog,
                                               const QueryFilter& filter) {
  std::vector<const CatalogEntry*> out;
  for (const auto& [slug, entry] : catalog.entries) {
    const ToolProfile& profile = entry.record.profile;
    if (filter.category && profile.category != *filter.category) continue;
    if (!contains_insensitive(profile.clinical_area, filter.area_substring)) continue;
    if (!filter.grades.empty()) {
      if (!entry.grading.final_grade ||
          filter.grades.count(*entry.grading.final_grade) == 0) {
        continue;
      }
    }
    if (filter.automation && profile.automation != *filter.automation) continue;
    if (filter.min_year && profile.year < *filter.min_year) continue;
    if (!filter.endorsement_substring.empty()) {
      const bool hit = std::any_of(
          profile.endorsements.begin(), profile.endorsements.end(),
          [&](const std::string& e) {
            return contains_insensitive(e, filter.endorsement_substring);
          });
      if (!hit) continue;
    }
    out.push_back(&entry);
  }

  std::sort(out.begin(), out.end(), [](const CatalogEntry* a, const CatalogEntry* b) {
    const int ra = grade_rank(a->grading);
    const int rb = grade_rank(b->grading);
    if (ra != rb) return ra < rb;
    if (a->record.profile.name != b->record.profile.name) {
      return a->record.profile.name < b->record.profile.name;
    }
    return a->slug < b->slug;
  });
  return out;
}

}  // namespace grasp
