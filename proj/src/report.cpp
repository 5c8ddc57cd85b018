#include "grasp/report.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "grasp/json_io.hpp"
#include "grasp/validation.hpp"

namespace grasp {
namespace {

using nlohmann::json;

// Cell walk order for the evaluation-levels section: first validation, then
// implementation practicability, then post-implementation impact.
struct PhaseGroup {
  std::string_view heading;
  std::vector<GradeCell> cells;
};

const std::vector<PhaseGroup>& phase_groups() {
  static const std::vector<PhaseGroup> groups{
      {"Phase C — Before implementation: Is it possible?",
       {GradeCell::C0, GradeCell::C3, GradeCell::C2, GradeCell::C1}},
      {"Phase B — During implementation: Is it practicable?",
       {GradeCell::B2, GradeCell::B1}},
      {"Phase A — After implementation: Is it desirable?",
       {GradeCell::A3, GradeCell::A2, GradeCell::A1}},
  };
  return groups;
}

// Marker columns of summary and final-grade tables (C0 shows up as the grade
// itself, never as a marker column).
constexpr std::array<GradeCell, 8> kMarkerColumns{
    GradeCell::A1, GradeCell::A2, GradeCell::A3, GradeCell::B1,
    GradeCell::B2, GradeCell::C1, GradeCell::C2, GradeCell::C3,
};

// Accuracy statistics are grouped together regardless of which study design
// reported them.
bool is_accuracy_measure(const std::string& name) {
  static const std::array<std::string_view, 9> kAccuracy{
      "sensitivity",       "specificity",          "auc_c_statistic",
      "d_statistic",       "log_rank",             "calibration_slope",
      "calibration_intercept", "hosmer_lemeshow_p", "brier",
  };
  return std::find(kAccuracy.begin(), kAccuracy.end(), name) != kAccuracy.end();
}

std::string capitalize(std::string_view text) {
  std::string out(text);
  if (!out.empty()) out.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(out.front())));
  return out;
}

std::string md_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out;
}

std::string_view kind_word(SourceKind kind) {
  return kind == SourceKind::Clinical ? "Clinical" : "Non-clinical";
}

std::string input_source_cell(const std::vector<InputSource>& sources) {
  std::string out;
  for (const auto& src : sources) {
    if (!out.empty()) out += "; ";
    out += kind_word(src.kind);
    if (!src.detail.empty()) {
      out += " — ";
      out += src.detail;
    }
  }
  return out;
}

std::string input_type_cell(const std::vector<InputType>& types) {
  std::string out;
  for (InputType t : types) {
    if (!out.empty()) out += ", ";
    out += capitalize(to_string(t));
  }
  return out;
}

std::string local_context_cell(const LocalContext& ctx) {
  std::string out = ctx.depends ? "Depends on local context" : "Independent of local context";
  if (!ctx.note.empty()) {
    out += " — ";
    out += ctx.note;
  }
  return out;
}

std::string joined(const std::vector<std::string>& values, const char* sep) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += sep;
    out += v;
  }
  return out;
}

/// "- <display> <value><unit> (95% CI a–b) (p=x) (cutoff c) — <citation>"
std::string measure_line(const Measure& m, const std::string& citation) {
  std::string out = "- " + measure_display_name(m.name) + " " + format_number(m.value);
  if (m.unit) out += *m.unit;
  if (m.ci_low && m.ci_high) {
    out += " (95% CI " + format_number(*m.ci_low) + "–" + format_number(*m.ci_high) + ")";
  }
  if (m.p_value) out += " (p=" + format_number(*m.p_value) + ")";
  if (m.cutoff) out += " (cutoff " + format_number(*m.cutoff) + ")";
  out += " — " + citation;
  return out;
}

json measure_entry_json(const EvidenceItem& item, const Measure& m) {
  json j;
  j["item"] = item.id;
  j["citation"] = item.citation;
  j["name"] = m.name;
  j["display"] = measure_display_name(m.name);
  j["value"] = m.value;
  if (m.unit) j["unit"] = *m.unit;
  if (m.ci_low) j["ci_low"] = *m.ci_low;
  if (m.ci_high) j["ci_high"] = *m.ci_high;
  if (m.p_value) j["p_value"] = *m.p_value;
  if (m.cutoff) j["cutoff"] = *m.cutoff;
  return j;
}

/// Reference labels: a study supports the tool only when its conclusion is
/// positive; equivocal findings sit on the negative side.
std::string_view finding_word(Conclusion c) {
  return c == Conclusion::Positive ? "positive" : "negative";
}

std::string_view relevance_word(Relevance r) {
  return r == Relevance::Important ? "important" : "less relevant";
}

json override_to_json(const std::optional<Override>& ov) {
  if (!ov) return json(nullptr);
  json j;
  j["cell"] = to_string(ov->cell);
  j["direction"] = to_string(ov->direction);
  j["justification"] = ov->justification;
  return j;
}

// Summary row order: weakest evidence first, then older tools, then by name.
std::vector<const CatalogEntry*> summary_order(const Catalog& catalog) {
  std::vector<const CatalogEntry*> rows;
  rows.reserve(catalog.entries.size());
  for (const auto& [slug, entry] : catalog.entries) rows.push_back(&entry);
  std::sort(rows.begin(), rows.end(), [](const CatalogEntry* a, const CatalogEntry* b) {
    const auto rank = [](const CatalogEntry* e) {
      return e->grading.final_grade ? ladder_rank(*e->grading.final_grade)
                                    : static_cast<int>(ladder().size());
    };
    const int ra = rank(a);
    const int rb = rank(b);
    if (ra != rb) return ra > rb;
    if (a->record.profile.year != b->record.profile.year) {
      return a->record.profile.year < b->record.profile.year;
    }
    if (a->record.profile.name != b->record.profile.name) {
      return a->record.profile.name < b->record.profile.name;
    }
    return a->slug < b->slug;
  });
  return rows;
}

std::string marker_or_empty(const GradingResult& grading, GradeCell cell) {
  auto it = grading.markers.find(cell);
  return it == grading.markers.end() ? std::string() : it->second;
}

void render_cell_section(const ToolRecord& record, const GradingResult& result,
                         GradeCell cell, std::ostringstream& out) {
  out << "#### " << display_name(cell) << " — " << level_label(cell) << "\n\n";
  auto it = result.cells.find(cell);
  if (it == result.cells.end()) {
    out << "not reported\n\n";
    return;
  }
  const CellResolution& res = it->second;
  out << "Direction: " << direction_word(res.effective_direction()) << " ("
      << direction_marker(res.effective_direction()) << ")";
  if (res.override_applied) out << ", by expert override";
  out << "\n\n";

  for (const std::string& id : res.items) {
    auto item = std::find_if(record.evidence.begin(), record.evidence.end(),
                             [&](const EvidenceItem& e) { return e.id == id; });
    if (item != record.evidence.end()) {
      out << "- " << item->citation << " — " << to_string(item->conclusion) << "\n";
    }
  }
  out << "\nTrace:\n\n";
  for (const std::string& line : res.trace) out << "- " << line << "\n";
  out << "\n";
}

std::string render_detailed_markdown(const ToolRecord& record, const GradingResult& result) {
  const ToolProfile& p = record.profile;
  std::ostringstream out;
  out << "# " << p.name << "\n\n";

  out << "## Tool Information\n\n";
  out << "| Field | Value |\n| --- | --- |\n";
  const auto row = [&](std::string_view field, const std::string& value) {
    out << "| " << field << " | " << md_escape(value) << " |\n";
  };
  row("Name", p.name);
  row("Authors", p.authors);
  row("Country", p.country);
  row("Year", std::to_string(p.year));
  row("Intended use", p.intended_use);
  row("Intended user", p.intended_user);
  row("Category", capitalize(to_string(p.category)));
  row("Clinical area", p.clinical_area);
  row("Target population", p.target_population);
  row("Target outcome", p.target_outcome);
  row("Action", p.action);
  row("Input source", input_source_cell(p.input_source));
  row("Input type", input_type_cell(p.input_type));
  row("Local context", local_context_cell(p.local_context));
  row("Methodology", p.methodology);
  row("Endorsements", joined(p.endorsements, "; "));
  row("Automation", capitalize(to_string(p.automation)));
  row("Citations", std::to_string(p.citations));
  row("Studies", std::to_string(reported_study_count(record.evidence)));
  out << "\n";

  out << "## Evaluation Levels\n\n";
  for (const PhaseGroup& group : phase_groups()) {
    out << "### " << group.heading << "\n\n";
    for (GradeCell cell : group.cells) render_cell_section(record, result, cell, out);
  }

  out << "## Final Grade\n\n";
  if (result.final_grade) {
    out << "**" << display_name(*result.final_grade) << "** — "
        << level_label(*result.final_grade) << "\n\n";
  } else {
    out << "**Ungraded**\n\n";
  }
  for (GradeCell cell : kMarkerColumns) out << "| " << display_name(cell) << " ";
  out << "|\n";
  for (std::size_t i = 0; i < kMarkerColumns.size(); ++i) out << "| --- ";
  out << "|\n";
  for (GradeCell cell : kMarkerColumns) out << "| " << marker_or_empty(result, cell) << " ";
  out << "|\n\n";
  out << "Legend: " << marker_legend() << "\n\n";

  out << "## Justification\n\n" << result.justification << "\n\n";

  out << "## References\n\n";
  for (const EvidenceItem& item : record.evidence) {
    out << "- " << item.citation << " [" << finding_word(item.conclusion) << ", "
        << relevance_word(item.relevance.value_or(Relevance::Important)) << "]\n";
  }
  return out.str();
}

std::string render_detailed_json(const ToolRecord& record, const GradingResult& result) {
  json doc;
  doc["tool"] = result.tool;
  doc["profile"] = json::parse(serialize_record(record))["profile"];
  doc["citations"] = record.profile.citations;
  doc["studies"] = reported_study_count(record.evidence);
  doc["final_grade"] =
      result.final_grade ? json(to_string(*result.final_grade)) : json(nullptr);
  doc["justification"] = result.justification;

  json markers = json::object();
  for (const auto& [cell, marker] : result.markers) markers[std::string(to_string(cell))] = marker;
  doc["markers"] = markers;

  json cells = json::object();
  for (const auto& [cell, res] : result.cells) {
    json c;
    c["direction"] = to_string(res.direction);
    c["effective_direction"] = to_string(res.effective_direction());
    c["marker"] = std::string(direction_marker(res.effective_direction()));
    c["items"] = res.items;
    c["trace"] = res.trace;
    c["override"] = override_to_json(res.override_applied);
    cells[std::string(to_string(cell))] = std::move(c);
  }
  doc["cells"] = cells;

  json refs = json::array();
  for (const EvidenceItem& item : record.evidence) {
    json r;
    r["citation"] = item.citation;
    r["finding"] = finding_word(item.conclusion);
    r["relevance"] = to_string(item.relevance.value_or(Relevance::Important));
    refs.push_back(std::move(r));
  }
  doc["references"] = refs;
  return doc.dump(2) + "\n";
}

}  // namespace

std::string marker_legend() {
  return "+ positive evidence; - negative evidence; ±+ mixed evidence supporting "
         "positive conclusion; ±- mixed evidence supporting negative conclusion; "
         "? unresolved mixed evidence";
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

std::string render_detailed_report(const ToolRecord& record, const GradingResult& result,
                                   ReportFormat format) {
  return format == ReportFormat::Markdown ? render_detailed_markdown(record, result)
                                          : render_detailed_json(record, result);
}

std::string render_summary(const Catalog& catalog, ReportFormat format) {
  const std::vector<const CatalogEntry*> rows = summary_order(catalog);

  if (format == ReportFormat::Json) {
    json doc;
    doc["legend"] = marker_legend();
    json out_rows = json::array();
    for (const CatalogEntry* entry : rows) {
      const ToolProfile& p = entry->record.profile;
      json r;
      r["slug"] = entry->slug;
      r["name"] = p.name;
      r["country"] = p.country;
      r["year"] = p.year;
      r["citations"] = p.citations;
      r["studies"] = reported_study_count(entry->record.evidence);
      r["grade"] = entry->grading.grade_name();
      json markers = json::object();
      for (const auto& [cell, marker] : entry->grading.markers) {
        markers[std::string(to_string(cell))] = marker;
      }
      r["markers"] = markers;
      out_rows.push_back(std::move(r));
    }
    doc["rows"] = out_rows;
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "| Tool | Country | Year | Citations | Studies | Grade ";
  for (GradeCell cell : kMarkerColumns) out << "| " << display_name(cell) << " ";
  out << "|\n";
  for (int i = 0; i < 6 + static_cast<int>(kMarkerColumns.size()); ++i) out << "| --- ";
  out << "|\n";
  for (const CatalogEntry* entry : rows) {
    const ToolProfile& p = entry->record.profile;
    out << "| " << md_escape(p.name) << " | " << md_escape(p.country) << " | " << p.year
        << " | " << p.citations << " | " << reported_study_count(entry->record.evidence)
        << " | " << entry->grading.grade_name() << " ";
    for (GradeCell cell : kMarkerColumns) {
      out << "| " << marker_or_empty(entry->grading, cell) << " ";
    }
    out << "|\n";
  }
  out << "\nLegend: " << marker_legend() << "\n";
  return out.str();
}

std::string render_measures(const ToolRecord& record, const GradingResult& result,
                            ReportFormat format) {
  enum Section { kAccuracy = 0, kUsability = 1, kImpact = 2 };
  const auto section_for_item = [](const EvidenceItem& item) {
    switch (item.evaluation_type) {
      case EvaluationType::Usability:
      case EvaluationType::PotentialEffect:
        return kUsability;
      case EvaluationType::ImpactExperimental:
      case EvaluationType::ImpactObservational:
      case EvaluationType::ImpactSubjective:
        return kImpact;
      default:
        return kAccuracy;
    }
  };

  std::array<std::vector<std::string>, 3> lines;
  std::array<json, 3> entries{json::array(), json::array(), json::array()};

  for (const EvidenceItem& item : record.evidence) {
    const Section home = section_for_item(item);
    for (const Measure& m : item.measures) {
      const Section section = is_accuracy_measure(m.name) ? kAccuracy : home;
      lines[section].push_back(measure_line(m, item.citation));
      entries[section].push_back(measure_entry_json(item, m));
    }
    if (item.measures.empty() && home != kAccuracy && !item.notes.empty()) {
      lines[home].push_back("- " + item.notes + " — " + item.citation);
      json note;
      note["item"] = item.id;
      note["citation"] = item.citation;
      note["note"] = item.notes;
      entries[home].push_back(std::move(note));
    }
  }

  if (format == ReportFormat::Json) {
    json doc;
    doc["tool"] = result.tool;
    json sections;
    sections["discrimination_calibration"] = entries[kAccuracy];
    sections["usability"] = entries[kUsability];
    sections["impact"] = entries[kImpact];
    doc["sections"] = sections;
    return doc.dump(2) + "\n";
  }

  static constexpr std::array<std::string_view, 3> kHeadings{
      "Discrimination & Calibration", "Usability", "Post-implementation Impact"};
  std::ostringstream out;
  out << "# Reported Measures — " << record.profile.name << "\n";
  for (int s = 0; s < 3; ++s) {
    out << "\n## " << kHeadings[static_cast<std::size_t>(s)] << "\n\n";
    if (lines[static_cast<std::size_t>(s)].empty()) {
      out << "not reported\n";
    } else {
      for (const std::string& line : lines[static_cast<std::size_t>(s)]) out << line << "\n";
    }
  }
  return out.str();
}

}  // namespace grasp
