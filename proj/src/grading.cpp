#include "grasp/grading.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "grasp/direction.hpp"
#include "grasp/mixed_protocol.hpp"
#include "grasp/validation.hpp"

namespace grasp {
namespace {

/// The study design that natively populates a given cell; what uplift
/// hypotheticals are made of.
EvaluationType native_evaluation_type(GradeCell cell) {
  switch (cell) {
    case GradeCell::A1: return EvaluationType::ImpactExperimental;
    case GradeCell::A2: return EvaluationType::ImpactObservational;
    case GradeCell::A3: return EvaluationType::ImpactSubjective;
    case GradeCell::B1: return EvaluationType::Usability;
    case GradeCell::B2: return EvaluationType::PotentialEffect;
    case GradeCell::C1:
    case GradeCell::C2: return EvaluationType::ExternalValidation;
    case GradeCell::C3:
    case GradeCell::C0: return EvaluationType::InternalValidation;
  }
  return EvaluationType::InternalValidation;
}

std::string_view uplift_phrase(GradeCell cell) {
  switch (cell) {
    case GradeCell::A1: return "experimental impact";
    case GradeCell::A2: return "observational impact";
    case GradeCell::A3: return "subjective impact";
    case GradeCell::B1: return "usability";
    case GradeCell::B2: return "potential-effect";
    case GradeCell::C1:
    case GradeCell::C2: return "external validation";
    case GradeCell::C3:
    case GradeCell::C0: return "internal validation";
  }
  return "";
}

MatchingProfile full_match() {
  MatchingProfile m;
  m.predictive_task = MatchState::Match;
  m.outcome = MatchState::Match;
  m.intended_use = MatchState::Match;
  m.intended_users = MatchState::Match;
  m.clinical_specialty = MatchState::Match;
  m.healthcare_settings = MatchState::Match;
  m.target_population = MatchState::Match;
  m.age_group = MatchState::Match;
  return m;
}

QualityProfile full_quality() {
  QualityProfile q;
  q.sample_size = QualityState::Adequate;
  q.data_collection = QualityState::Adequate;
  q.study_methods = QualityState::Adequate;
  q.credibility = QualityState::Adequate;
  return q;
}

/// A synthetic positive, fully matching, high-quality study for a cell.
EvidenceItem make_hypothetical(GradeCell cell, int index,
                               const std::set<std::string>& taken_ids) {
  EvidenceItem item;
  std::string id = "uplift-sim-" + std::string(to_string(cell)) + "-" + std::to_string(index);
  while (taken_ids.count(id) != 0) id += "-x";
  item.id = id;
  item.citation = "Hypothetical class-A study " + std::to_string(index);
  item.year = 2024;
  item.evaluation_type = native_evaluation_type(cell);
  item.conclusion = Conclusion::Positive;
  item.matching = full_match();
  item.quality = full_quality();
  switch (item.evaluation_type) {
    case EvaluationType::InternalValidation:
      item.sufficient = true;
      break;
    case EvaluationType::ExternalValidation:
      item.dataset_count = 1;
      break;
    case EvaluationType::ImpactExperimental:
    case EvaluationType::ImpactObservational:
    case EvaluationType::ImpactSubjective:
      item.impact_category = ImpactCategory::ClinicalEffectiveness;
      break;
    default:
      break;
  }
  return item;
}

void append_failed_cell_lines(const GradingResult& result, GradeCell below,
                              std::ostringstream& out) {
  const bool c1_populated = result.cells.count(GradeCell::C1) != 0;
  for (GradeCell cell : ladder()) {
    if (!outranks(cell, below)) continue;
    auto it = result.cells.find(cell);
    if (it == result.cells.end()) continue;
    if (cell == GradeCell::C2 && c1_populated) continue;
    out << " Higher cell " << display_name(cell) << " is "
        << direction_word(it->second.effective_direction())
        << " and does not support a positive conclusion.";
  }
}

std::string build_justification(const GradingResult& result) {
  std::ostringstream out;
  if (!result.final_grade) {
    if (result.cells.empty()) {
      out << "Ungraded — the record reports no evidence.";
    } else {
      out << "Ungraded — no cell carries positive or mixed-positive evidence, "
             "and insufficient internal validation is not reported.";
      append_failed_cell_lines(result, GradeCell::C0, out);
    }
    return out.str();
  }

  const GradeCell grade = *result.final_grade;
  if (grade == GradeCell::C0 &&
      !is_effectively_positive(result.cells.at(grade).effective_direction())) {
    out << "Final grade C0 — " << level_label(GradeCell::C0)
        << "; no cell carries positive or mixed-positive evidence.";
    append_failed_cell_lines(result, GradeCell::C0, out);
    return out.str();
  }

  const CellResolution& res = result.cells.at(grade);
  out << "Final grade " << display_name(grade) << " — " << level_label(grade)
      << "; the evidence at " << display_name(grade) << " is "
      << direction_word(res.effective_direction());
  if (res.override_applied) out << " by expert override";
  out << ".";
  append_failed_cell_lines(result, grade, out);
  return out.str();
}

GradingResult grade_valid_record(const ToolRecord& record, const std::string& tool_id) {
  GradingResult result;
  result.tool = tool_id.empty() ? record.profile.name : tool_id;

  const auto cells = assign_cells(record.evidence);
  for (const auto& [cell, items] : cells) {
    result.cells.emplace(cell, resolve_cell(cell, items, record.overrides));
  }

  for (GradeCell cell : ladder()) {
    if (cell == GradeCell::C0) break;  // C0 is a fallback, not a positive rung
    auto it = result.cells.find(cell);
    if (it != result.cells.end() &&
        is_effectively_positive(it->second.effective_direction())) {
      result.final_grade = cell;
      break;
    }
  }
  if (!result.final_grade && result.cells.count(GradeCell::C0) != 0) {
    result.final_grade = GradeCell::C0;
  }

  const bool c1_populated = result.cells.count(GradeCell::C1) != 0;
  for (const auto& [cell, res] : result.cells) {
    if (cell == GradeCell::C2 && c1_populated) continue;
    result.markers.emplace(cell, std::string(direction_marker(res.effective_direction())));
  }

  result.justification = build_justification(result);
  return result;
}

}  // namespace

std::map<GradeCell, std::vector<EvidenceItem>> assign_cells(
    const std::vector<EvidenceItem>& evidence) {
  std::map<GradeCell, std::vector<EvidenceItem>> cells;
  std::vector<EvidenceItem> externals;

  for (const auto& item : evidence) {
    switch (item.evaluation_type) {
      case EvaluationType::InternalValidation:
        cells[item.sufficient.value_or(true) ? GradeCell::C3 : GradeCell::C0].push_back(item);
        break;
      case EvaluationType::ExternalValidation:
        externals.push_back(item);
        break;
      case EvaluationType::Usability:
        cells[GradeCell::B1].push_back(item);
        break;
      case EvaluationType::PotentialEffect:
        cells[GradeCell::B2].push_back(item);
        break;
      case EvaluationType::ImpactExperimental:
        cells[GradeCell::A1].push_back(item);
        break;
      case EvaluationType::ImpactObservational:
        cells[GradeCell::A2].push_back(item);
        break;
      case EvaluationType::ImpactSubjective:
        cells[GradeCell::A3].push_back(item);
        break;
    }
  }

  if (!externals.empty()) {
    std::stable_sort(externals.begin(), externals.end(),
                     [](const EvidenceItem& a, const EvidenceItem& b) { return a.year < b.year; });
    int total_datasets = 0;
    for (const auto& item : externals) total_datasets += std::max(1, item.dataset_count.value_or(1));
    cells[GradeCell::C2].push_back(externals.front());
    if (total_datasets >= 2) cells[GradeCell::C1] = std::move(externals);
  }
  return cells;
}

CellResolution resolve_cell(GradeCell cell, const std::vector<EvidenceItem>& items,
                            const std::vector<Override>& overrides) {
  if (items.empty()) throw std::invalid_argument("no evidence at this cell");

  CellResolution res;
  res.cell = cell;
  std::vector<Conclusion> conclusions;
  conclusions.reserve(items.size());
  for (const auto& item : items) {
    res.items.push_back(item.id);
    conclusions.push_back(item.conclusion);
  }

  const ConclusionCounts counts = count_conclusions(conclusions);
  {
    std::ostringstream line;
    line << "conclusions: " << counts.positive << " positive, " << counts.equivocal
         << " equivocal, " << counts.negative << " negative";
    res.trace.push_back(line.str());
  }

  const RawDirection raw = resolve_raw_direction(counts);
  res.trace.push_back("raw direction: " + std::string(to_string(raw)));

  switch (raw) {
    case RawDirection::Positive:
      res.direction = Direction::Positive;
      break;
    case RawDirection::Negative:
      res.direction = Direction::Negative;
      break;
    case RawDirection::Mixed: {
      ResolvedDirection resolved = resolve_mixed(items);
      res.direction = resolved.value;
      res.trace.insert(res.trace.end(), resolved.trace.begin(), resolved.trace.end());
      break;
    }
  }

  auto ov = std::find_if(overrides.begin(), overrides.end(),
                         [cell](const Override& o) { return o.cell == cell; });
  if (ov != overrides.end()) {
    res.override_applied = *ov;
    res.trace.push_back("computed direction: " + std::string(direction_word(res.direction)));
    res.trace.push_back("expert override: " + std::string(direction_word(ov->direction)) +
                        " -- " + ov->justification);
  }
  return res;
}

GradingResult final_grade(const ToolRecord& record, const std::string& tool_id) {
  if (!validate_record(record).ok()) throw std::invalid_argument("record invalid");
  return grade_valid_record(record, tool_id);
}

WhatIfResult whatif(const ToolRecord& record, const EvidenceItem& hypothetical) {
  WhatIfResult out;
  out.before = final_grade(record);

  ToolRecord augmented = record;
  augmented.evidence.push_back(hypothetical);
  const ValidationReport rep = validate_record(augmented);
  if (!rep.ok()) {
    for (const auto& issue : rep.issues) {
      if (issue.severity == Severity::Error) {
        throw std::invalid_argument("hypothetical invalid: " + issue.field + ": " +
                                    issue.message);
      }
    }
  }

  out.after = grade_valid_record(augmented, out.before.tool);
  out.delta = out.before.grade_name() + " → " + out.after.grade_name();
  return out;
}

std::vector<UpliftOption> minimal_uplift(const ToolRecord& record) {
  const GradingResult base = final_grade(record);

  std::set<std::string> taken_ids;
  for (const auto& item : record.evidence) taken_ids.insert(item.id);

  constexpr int kMaxHypotheticals = 25;
  std::vector<UpliftOption> options;
  for (GradeCell target : ladder()) {
    if (target == GradeCell::C0) continue;  // never a goal: it marks failed validation
    if (base.final_grade && !outranks(target, *base.final_grade)) continue;

    ToolRecord augmented = record;
    for (int k = 1; k <= kMaxHypotheticals; ++k) {
      augmented.evidence.push_back(make_hypothetical(target, k, taken_ids));
      const GradingResult sim = grade_valid_record(augmented, base.tool);
      auto it = sim.cells.find(target);
      if (it != sim.cells.end() && is_effectively_positive(it->second.effective_direction())) {
        std::ostringstream desc;
        desc << k << " positive class-A " << uplift_phrase(target)
             << (k == 1 ? " item" : " items");
        options.push_back({target, k, desc.str()});
        break;
      }
    }
  }
  return options;
}

int reported_study_count(const std::vector<EvidenceItem>& evidence) {
  int count = 0;
  for (const auto& item : evidence) {
    const bool pooled = item.evaluation_type == EvaluationType::ExternalValidation &&
                        item.dataset_count.value_or(1) > 1;
    count += pooled ? *item.dataset_count + 1 : 1;
  }
  return count;
}

}  // namespace grasp
