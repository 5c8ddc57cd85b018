#include "grasp/types.hpp"

#include <array>
#include <utility>

namespace grasp {
namespace {

template <typename E, std::size_t N>
std::string_view lookup(const std::array<std::pair<E, std::string_view>, N>& table, E v) {
  for (const auto& [val, name] : table) {
    if (val == v) return name;
  }
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> reverse_lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                                std::string_view s) {
  for (const auto& [val, name] : table) {
    if (name == s) return val;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string joined_names(const std::array<std::pair<E, std::string_view>, N>& table) {
  std::string out;
  for (const auto& [val, name] : table) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

constexpr std::array<std::pair<Category, std::string_view>, 4> kCategory{{
    {Category::Diagnostic, "diagnostic"},
    {Category::Prognostic, "prognostic"},
    {Category::Therapeutic, "therapeutic"},
    {Category::Preventive, "preventive"},
}};

constexpr std::array<std::pair<SourceKind, std::string_view>, 2> kSourceKind{{
    {SourceKind::Clinical, "clinical"},
    {SourceKind::NonClinical, "non_clinical"},
}};

constexpr std::array<std::pair<InputType, std::string_view>, 2> kInputType{{
    {InputType::Objective, "objective"},
    {InputType::Subjective, "subjective"},
}};

constexpr std::array<std::pair<Automation, std::string_view>, 2> kAutomation{{
    {Automation::Manual, "manual"},
    {Automation::Automated, "automated"},
}};

constexpr std::array<std::pair<EvaluationType, std::string_view>, 7> kEvaluationType{{
    {EvaluationType::InternalValidation, "internal_validation"},
    {EvaluationType::ExternalValidation, "external_validation"},
    {EvaluationType::Usability, "usability"},
    {EvaluationType::PotentialEffect, "potential_effect"},
    {EvaluationType::ImpactExperimental, "impact_experimental"},
    {EvaluationType::ImpactObservational, "impact_observational"},
    {EvaluationType::ImpactSubjective, "impact_subjective"},
}};

constexpr std::array<std::pair<Conclusion, std::string_view>, 3> kConclusion{{
    {Conclusion::Positive, "positive"},
    {Conclusion::Equivocal, "equivocal"},
    {Conclusion::Negative, "negative"},
}};

constexpr std::array<std::pair<ImpactCategory, std::string_view>, 3> kImpactCategory{{
    {ImpactCategory::ClinicalEffectiveness, "clinical_effectiveness"},
    {ImpactCategory::PatientSafety, "patient_safety"},
    {ImpactCategory::HealthcareEfficiency, "healthcare_efficiency"},
}};

constexpr std::array<std::pair<MatchState, std::string_view>, 3> kMatchState{{
    {MatchState::Match, "match"},
    {MatchState::Mismatch, "mismatch"},
    {MatchState::Unreported, "unreported"},
}};

constexpr std::array<std::pair<QualityState, std::string_view>, 3> kQualityState{{
    {QualityState::Adequate, "adequate"},
    {QualityState::Inadequate, "inadequate"},
    {QualityState::Unreported, "unreported"},
}};

constexpr std::array<std::pair<Relevance, std::string_view>, 2> kRelevance{{
    {Relevance::Important, "important"},
    {Relevance::LessRelevant, "less_relevant"},
}};

constexpr std::array<std::pair<GradeCell, std::string_view>, 9> kGradeCell{{
    {GradeCell::A1, "a1"},
    {GradeCell::A2, "a2"},
    {GradeCell::A3, "a3"},
    {GradeCell::B1, "b1"},
    {GradeCell::B2, "b2"},
    {GradeCell::C1, "c1"},
    {GradeCell::C2, "c2"},
    {GradeCell::C3, "c3"},
    {GradeCell::C0, "c0"},
}};

constexpr std::array<std::pair<Direction, std::string_view>, 5> kDirection{{
    {Direction::Positive, "positive"},
    {Direction::Negative, "negative"},
    {Direction::MixedPositive, "mixed_positive"},
    {Direction::MixedNegative, "mixed_negative"},
    {Direction::Unresolved, "unresolved"},
}};

// Overrides may pin any direction except Unresolved.
constexpr std::array<std::pair<Direction, std::string_view>, 4> kOverrideDirection{{
    {Direction::Positive, "positive"},
    {Direction::Negative, "negative"},
    {Direction::MixedPositive, "mixed_positive"},
    {Direction::MixedNegative, "mixed_negative"},
}};

constexpr std::array<std::pair<RawDirection, std::string_view>, 3> kRawDirection{{
    {RawDirection::Positive, "positive"},
    {RawDirection::Negative, "negative"},
    {RawDirection::Mixed, "mixed"},
}};

constexpr std::array<std::pair<EvidenceClass, std::string_view>, 3> kEvidenceClass{{
    {EvidenceClass::A, "A"},
    {EvidenceClass::B, "B"},
    {EvidenceClass::C, "C"},
}};

}  // namespace

std::string_view to_string(Category v) { return lookup(kCategory, v); }
std::string_view to_string(SourceKind v) { return lookup(kSourceKind, v); }
std::string_view to_string(InputType v) { return lookup(kInputType, v); }
std::string_view to_string(Automation v) { return lookup(kAutomation, v); }
std::string_view to_string(EvaluationType v) { return lookup(kEvaluationType, v); }
std::string_view to_string(Conclusion v) { return lookup(kConclusion, v); }
std::string_view to_string(ImpactCategory v) { return lookup(kImpactCategory, v); }
std::string_view to_string(MatchState v) { return lookup(kMatchState, v); }
std::string_view to_string(QualityState v) { return lookup(kQualityState, v); }
std::string_view to_string(Relevance v) { return lookup(kRelevance, v); }
std::string_view to_string(GradeCell v) { return lookup(kGradeCell, v); }
std::string_view to_string(Direction v) { return lookup(kDirection, v); }
std::string_view to_string(RawDirection v) { return lookup(kRawDirection, v); }
std::string_view to_string(EvidenceClass v) { return lookup(kEvidenceClass, v); }

std::optional<Category> parse_category(std::string_view s) { return reverse_lookup(kCategory, s); }
std::optional<SourceKind> parse_source_kind(std::string_view s) { return reverse_lookup(kSourceKind, s); }
std::optional<InputType> parse_input_type(std::string_view s) { return reverse_lookup(kInputType, s); }
std::optional<Automation> parse_automation(std::string_view s) { return reverse_lookup(kAutomation, s); }
std::optional<EvaluationType> parse_evaluation_type(std::string_view s) { return reverse_lookup(kEvaluationType, s); }
std::optional<Conclusion> parse_conclusion(std::string_view s) { return reverse_lookup(kConclusion, s); }
std::optional<ImpactCategory> parse_impact_category(std::string_view s) { return reverse_lookup(kImpactCategory, s); }
std::optional<MatchState> parse_match_state(std::string_view s) { return reverse_lookup(kMatchState, s); }
std::optional<QualityState> parse_quality_state(std::string_view s) { return reverse_lookup(kQualityState, s); }
std::optional<Relevance> parse_relevance(std::string_view s) { return reverse_lookup(kRelevance, s); }
std::optional<GradeCell> parse_grade_cell(std::string_view s) { return reverse_lookup(kGradeCell, s); }
std::optional<Direction> parse_direction(std::string_view s) { return reverse_lookup(kDirection, s); }

std::string allowed_category_values() { return joined_names(kCategory); }
std::string allowed_source_kind_values() { return joined_names(kSourceKind); }
std::string allowed_input_type_values() { return joined_names(kInputType); }
std::string allowed_automation_values() { return joined_names(kAutomation); }
std::string allowed_evaluation_type_values() { return joined_names(kEvaluationType); }
std::string allowed_conclusion_values() { return joined_names(kConclusion); }
std::string allowed_impact_category_values() { return joined_names(kImpactCategory); }
std::string allowed_match_state_values() { return joined_names(kMatchState); }
std::string allowed_quality_state_values() { return joined_names(kQualityState); }
std::string allowed_relevance_values() { return joined_names(kRelevance); }
std::string allowed_grade_cell_values() { return joined_names(kGradeCell); }
std::string allowed_override_direction_values() { return joined_names(kOverrideDirection); }

const std::vector<GradeCell>& ladder() {
  static const std::vector<GradeCell> order{
      GradeCell::A1, GradeCell::A2, GradeCell::A3, GradeCell::B1, GradeCell::B2,
      GradeCell::C1, GradeCell::C2, GradeCell::C3, GradeCell::C0,
  };
  return order;
}

int ladder_rank(GradeCell cell) {
  const auto& order = ladder();
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == cell) return static_cast<int>(i);
  }
  return static_cast<int>(order.size());
}

bool outranks(GradeCell a, GradeCell b) { return ladder_rank(a) < ladder_rank(b); }

std::string_view display_name(GradeCell cell) {
  switch (cell) {
    case GradeCell::A1: return "A1";
    case GradeCell::A2: return "A2";
    case GradeCell::A3: return "A3";
    case GradeCell::B1: return "B1";
    case GradeCell::B2: return "B2";
    case GradeCell::C1: return "C1";
    case GradeCell::C2: return "C2";
    case GradeCell::C3: return "C3";
    case GradeCell::C0: return "C0";
  }
  return "?";
}

std::string_view level_label(GradeCell cell) {
  switch (cell) {
    case GradeCell::A1: return "post-implementation impact, experimental studies";
    case GradeCell::A2: return "post-implementation impact, observational studies";
    case GradeCell::A3: return "post-implementation impact, subjective studies";
    case GradeCell::B1: return "usability";
    case GradeCell::B2: return "potential effect";
    case GradeCell::C1: return "external validation multiple times";
    case GradeCell::C2: return "external validation";
    case GradeCell::C3: return "internal validation";
    case GradeCell::C0: return "insufficient internal validation";
  }
  return "?";
}

std::string_view direction_marker(Direction d) {
  switch (d) {
    case Direction::Positive: return "+";
    case Direction::Negative: return "-";
    case Direction::MixedPositive: return "±+";
    case Direction::MixedNegative: return "±-";
    case Direction::Unresolved: return "?";
  }
  return "?";
}

std::string_view direction_word(Direction d) {
  switch (d) {
    case Direction::Positive: return "positive";
    case Direction::Negative: return "negative";
    case Direction::MixedPositive: return "mixed-positive";
    case Direction::MixedNegative: return "mixed-negative";
    case Direction::Unresolved: return "unresolved";
  }
  return "?";
}

bool is_effectively_positive(Direction d) {
  return d == Direction::Positive || d == Direction::MixedPositive;
}

}  // namespace grasp
