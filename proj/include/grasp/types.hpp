/**
 * @file types.hpp
 * @brief Domain types for grading clinical predictive tools: tool profiles,
 *        evidence items, measures, grade cells, and evidence directions.
 *
 * All types are plain immutable-after-construction value types; nothing here
 * performs I/O or validation (see validation.hpp and json_io.hpp).
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace grasp {

// ============================================================================
// Enumerations
// ============================================================================

enum class Category { Diagnostic, Prognostic, Therapeutic, Preventive };

/// Broad origin of a tool input: patient/clinical data vs. administrative data.
enum class SourceKind { Clinical, NonClinical };

/// How an input value is obtained: measured vs. patient-reported.
enum class InputType { Objective, Subjective };

enum class Automation { Manual, Automated };

/// The study design behind one evidence item; drives grade-cell assignment.
enum class EvaluationType {
  InternalValidation,
  ExternalValidation,
  Usability,
  PotentialEffect,
  ImpactExperimental,
  ImpactObservational,
  ImpactSubjective,
};

/// A study's bottom-line finding. Equivocal means "acceptable, but not
/// superior" (and, for impact studies, "did not show positive impact").
enum class Conclusion { Positive, Equivocal, Negative };

/// Which aspect an implementation-phase study evaluated.
enum class ImpactCategory { ClinicalEffectiveness, PatientSafety, HealthcareEfficiency };

/// Tri-state per matching dimension; Unreported never counts against a study.
enum class MatchState { Match, Mismatch, Unreported };

/// Tri-state per quality criterion; Unreported never counts against a study.
enum class QualityState { Adequate, Inadequate, Unreported };

/// Display/adjudication priority of a referenced study within a report.
enum class Relevance { Important, LessRelevant };

/// The nine grade cells, ladder-ordered best to worst:
/// A1 > A2 > A3 > B1 > B2 > C1 > C2 > C3 > C0.
enum class GradeCell { A1, A2, A3, B1, B2, C1, C2, C3, C0 };

/// Fully resolved direction of one cell's evidence.
enum class Direction { Positive, Negative, MixedPositive, MixedNegative, Unresolved };

/// Outcome of the conclusion calculus before any mixed-evidence resolution.
enum class RawDirection { Positive, Negative, Mixed };

/// Study class under the mixed-evidence protocol:
/// A = matching and high quality, B = exactly one of the two, C = neither.
enum class EvidenceClass { A, B, C };

// ============================================================================
// Profile types
// ============================================================================

struct InputSource {
  SourceKind kind = SourceKind::Clinical;
  std::string detail;  ///< free-text subtype, e.g. "Vital signs" or "Administrative data"

  friend bool operator==(const InputSource&, const InputSource&) = default;
};

struct LocalContext {
  bool depends = false;  ///< whether inputs rely on location-specific data
  std::string note;

  friend bool operator==(const LocalContext&, const LocalContext&) = default;
};

/// The tool-information block of a detailed report.
struct ToolProfile {
  std::string name;
  std::string authors;
  std::string country;
  int year = 0;
  std::string intended_use;
  std::string intended_user;
  Category category = Category::Diagnostic;
  std::string clinical_area;
  std::string target_population;
  std::string target_outcome;
  std::string action;
  std::vector<InputSource> input_source;
  std::vector<InputType> input_type;
  LocalContext local_context;
  std::string methodology;
  std::vector<std::string> endorsements;
  Automation automation = Automation::Manual;
  long long citations = 0;

  friend bool operator==(const ToolProfile&, const ToolProfile&) = default;
};

// ============================================================================
// Evidence types
// ============================================================================

/// Degree of matching between an evaluation study's conditions and the
/// original tool specification, over eight fixed dimensions.
struct MatchingProfile {
  MatchState predictive_task = MatchState::Unreported;
  MatchState outcome = MatchState::Unreported;
  MatchState intended_use = MatchState::Unreported;
  MatchState intended_users = MatchState::Unreported;
  MatchState clinical_specialty = MatchState::Unreported;
  MatchState healthcare_settings = MatchState::Unreported;
  MatchState target_population = MatchState::Unreported;
  MatchState age_group = MatchState::Unreported;

  friend bool operator==(const MatchingProfile&, const MatchingProfile&) = default;
};

/// Methodological quality of an evaluation study, over four fixed criteria.
struct QualityProfile {
  QualityState sample_size = QualityState::Unreported;
  QualityState data_collection = QualityState::Unreported;
  QualityState study_methods = QualityState::Unreported;
  QualityState credibility = QualityState::Unreported;

  friend bool operator==(const QualityProfile&, const QualityProfile&) = default;
};

/// One reported evaluation measure, stored exactly as published — values are
/// never computed. `unit` is a verbatim display suffix and may embed a
/// comparator arm or stratum label (e.g. "% vs 30.7%", " (hospitalisation)").
struct Measure {
  std::string name;  ///< controlled vocabulary name, or "other:<label>"
  double value = 0.0;
  std::optional<std::string> unit;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::optional<double> p_value;
  std::optional<double> cutoff;

  friend bool operator==(const Measure&, const Measure&) = default;
};

/// One study about a tool: what kind of evaluation it was, what it concluded,
/// and how well it matches the tool's own specification.
struct EvidenceItem {
  std::string id;        ///< unique within a record
  std::string citation;  ///< human-readable study citation
  int year = 0;
  EvaluationType evaluation_type = EvaluationType::InternalValidation;
  /// Internal validation only: false marks insufficient internal validation
  /// (cell C0 instead of C3). Absent means sufficient.
  std::optional<bool> sufficient;
  /// External validation only: number of distinct validation datasets this
  /// item reports (a systematic review pooling k datasets records k).
  std::optional<int> dataset_count;
  Conclusion conclusion = Conclusion::Positive;
  std::optional<ImpactCategory> impact_category;
  std::optional<Relevance> relevance;
  MatchingProfile matching;
  QualityProfile quality;
  std::vector<Measure> measures;
  std::optional<long long> sample_size;
  std::string notes;

  friend bool operator==(const EvidenceItem&, const EvidenceItem&) = default;
};

/// An expert adjudication recorded as data: pins one cell's effective
/// direction (typically to settle an Unresolved mixed cell).
struct Override {
  GradeCell cell = GradeCell::C3;
  Direction direction = Direction::Positive;  ///< never Unresolved
  std::string justification;

  friend bool operator==(const Override&, const Override&) = default;
};

/// A parsed tool + evidence bundle: the unit of storage and of grading.
struct ToolRecord {
  ToolProfile profile;
  std::vector<EvidenceItem> evidence;
  std::vector<Override> overrides;

  friend bool operator==(const ToolRecord&, const ToolRecord&) = default;
};

// ============================================================================
// Enum <-> string tables (lowercase snake_case wire names)
// ============================================================================

std::string_view to_string(Category v);
std::string_view to_string(SourceKind v);
std::string_view to_string(InputType v);
std::string_view to_string(Automation v);
std::string_view to_string(EvaluationType v);
std::string_view to_string(Conclusion v);
std::string_view to_string(ImpactCategory v);
std::string_view to_string(MatchState v);
std::string_view to_string(QualityState v);
std::string_view to_string(Relevance v);
std::string_view to_string(GradeCell v);   ///< wire name, e.g. "a1"
std::string_view to_string(Direction v);
std::string_view to_string(RawDirection v);
std::string_view to_string(EvidenceClass v);

std::optional<Category> parse_category(std::string_view s);
std::optional<SourceKind> parse_source_kind(std::string_view s);
std::optional<InputType> parse_input_type(std::string_view s);
std::optional<Automation> parse_automation(std::string_view s);
std::optional<EvaluationType> parse_evaluation_type(std::string_view s);
std::optional<Conclusion> parse_conclusion(std::string_view s);
std::optional<ImpactCategory> parse_impact_category(std::string_view s);
std::optional<MatchState> parse_match_state(std::string_view s);
std::optional<QualityState> parse_quality_state(std::string_view s);
std::optional<Relevance> parse_relevance(std::string_view s);
std::optional<GradeCell> parse_grade_cell(std::string_view s);
std::optional<Direction> parse_direction(std::string_view s);

/// Comma-separated allowed wire values, for schema diagnostics.
std::string allowed_category_values();
std::string allowed_source_kind_values();
std::string allowed_input_type_values();
std::string allowed_automation_values();
std::string allowed_evaluation_type_values();
std::string allowed_conclusion_values();
std::string allowed_impact_category_values();
std::string allowed_match_state_values();
std::string allowed_quality_state_values();
std::string allowed_relevance_values();
std::string allowed_grade_cell_values();
std::string allowed_override_direction_values();

// ============================================================================
// Grade-cell helpers
// ============================================================================

/// All nine cells, ladder order best to worst (A1 first, C0 last).
const std::vector<GradeCell>& ladder();

/// 0 for A1 (best) .. 8 for C0 (worst).
int ladder_rank(GradeCell cell);

/// True if `a` outranks `b` on the ladder (a strictly better than b).
bool outranks(GradeCell a, GradeCell b);

/// Display name, e.g. "A1", "C0".
std::string_view display_name(GradeCell cell);

/// Short level label, e.g. "external validation multiple times".
std::string_view level_label(GradeCell cell);

/// Rendering marker for a resolved direction: + - ±+ ±- ?
std::string_view direction_marker(Direction d);

/// Human wording for a direction, e.g. "mixed-positive".
std::string_view direction_word(Direction d);

/// True for Positive or MixedPositive — the directions that support a grade.
bool is_effectively_positive(Direction d);

}  // namespace grasp
