#include <algorithm>
#include <string>

#include "doctest.h"
#include "generators.hpp"
#include "grasp/validation.hpp"

using namespace grasp;

namespace {

bool has_error(const ValidationReport& rep, const std::string& field,
               const std::string& message_part) {
  return std::any_of(rep.issues.begin(), rep.issues.end(), [&](const ValidationIssue& issue) {
    return issue.severity == Severity::Error && issue.field == field &&
           issue.message.find(message_part) != std::string::npos;
  });
}

bool has_warning(const ValidationReport& rep, const std::string& field) {
  return std::any_of(rep.issues.begin(), rep.issues.end(), [&](const ValidationIssue& issue) {
    return issue.severity == Severity::Warning && issue.field == field;
  });
}

ToolProfile complete_profile() {
  ToolProfile p;
  p.name = "Example Rule";
  p.authors = "Doe et al";
  p.country = "Canada";
  p.year = 1995;
  p.intended_use = "identify low-risk patients";
  p.intended_user = "emergency physicians";
  p.category = Category::Diagnostic;
  p.clinical_area = "emergency medicine";
  p.target_population = "adults with acute injury";
  p.target_outcome = "fracture";
  p.action = "radiography only when indicated";
  p.input_source.push_back({SourceKind::Clinical, "Physical examination"});
  p.input_type.push_back(InputType::Objective);
  p.local_context = {false, ""};
  p.methodology = "logistic regression";
  p.endorsements.push_back("professional society guideline");
  p.automation = Automation::Manual;
  p.citations = 1200;
  return p;
}

EvidenceItem internal_item(std::string id) {
  EvidenceItem item;
  item.id = std::move(id);
  item.citation = "Doe et al, 1995";
  item.year = 1995;
  item.evaluation_type = EvaluationType::InternalValidation;
  item.sufficient = true;
  item.conclusion = Conclusion::Positive;
  return item;
}

EvidenceItem external_item(std::string id, int datasets = 1) {
  EvidenceItem item;
  item.id = std::move(id);
  item.citation = "Roe et al, 2003";
  item.year = 2003;
  item.evaluation_type = EvaluationType::ExternalValidation;
  item.dataset_count = datasets;
  item.conclusion = Conclusion::Positive;
  return item;
}

}  // namespace

TEST_CASE("a complete profile passes with no issues at all") {
  const ValidationReport rep = validate_tool_profile(complete_profile());
  CHECK(rep.ok());
  CHECK(rep.issues.empty());
}

TEST_CASE("profile errors: name, year range, negative citations") {
  ToolProfile p = complete_profile();
  p.name = "";
  p.year = 1850;
  p.citations = -1;
  const ValidationReport rep = validate_tool_profile(p);
  CHECK_FALSE(rep.ok());
  CHECK(has_error(rep, "name", "nonempty"));
  CHECK(has_error(rep, "year", "1850 outside 1900.."));
  CHECK(has_error(rep, "citations", "non-negative"));

  p = complete_profile();
  p.year = 3000;
  CHECK(has_error(validate_tool_profile(p), "year", "3000 outside"));
}

TEST_CASE("missing descriptive profile fields warn but do not fail") {
  ToolProfile p = complete_profile();
  p.authors.clear();
  p.endorsements.clear();
  p.input_source.clear();
  const ValidationReport rep = validate_tool_profile(p);
  CHECK(rep.ok());
  CHECK(has_warning(rep, "authors"));
  CHECK(has_warning(rep, "endorsements"));
  CHECK(has_warning(rep, "input_source"));
  CHECK(rep.warning_count() == 3);
}

TEST_CASE("dataset_count is required exactly for external validation") {
  SUBCASE("missing on an external item") {
    EvidenceItem item = external_item("e1");
    item.dataset_count.reset();
    CHECK(has_error(validate_evidence_item(item), "dataset_count",
                    "required for external_validation"));
  }
  SUBCASE("zero or negative counts are rejected") {
    CHECK(has_error(validate_evidence_item(external_item("e1", 0)), "dataset_count",
                    "positive dataset count"));
    CHECK(has_error(validate_evidence_item(external_item("e1", -3)), "dataset_count",
                    "positive dataset count"));
  }
  SUBCASE("a multi-dataset pooled study is fine") {
    CHECK(validate_evidence_item(external_item("e1", 11)).ok());
  }
  SUBCASE("illegal on any other evaluation type") {
    EvidenceItem item = internal_item("i1");
    item.sufficient.reset();
    item.evaluation_type = EvaluationType::Usability;
    item.dataset_count = 2;
    CHECK(has_error(validate_evidence_item(item), "dataset_count",
                    "field illegal for type usability"));
  }
}

TEST_CASE("impact_category is only legal on usability, potential-effect, and impact items") {
  EvidenceItem item = external_item("e1");
  item.impact_category = ImpactCategory::PatientSafety;
  CHECK(has_error(validate_evidence_item(item), "impact_category",
                  "field illegal for type external_validation"));

  item = internal_item("i1");
  item.impact_category = ImpactCategory::ClinicalEffectiveness;
  CHECK(has_error(validate_evidence_item(item), "impact_category",
                  "field illegal for type internal_validation"));

  for (EvaluationType t : {EvaluationType::Usability, EvaluationType::PotentialEffect,
                           EvaluationType::ImpactExperimental, EvaluationType::ImpactObservational,
                           EvaluationType::ImpactSubjective}) {
    EvidenceItem ok_item = internal_item("x1");
    ok_item.sufficient.reset();
    ok_item.evaluation_type = t;
    ok_item.impact_category = ImpactCategory::HealthcareEfficiency;
    CHECK(validate_evidence_item(ok_item).ok());
  }
}

TEST_CASE("sufficient outside internal validation draws a warning") {
  EvidenceItem item = external_item("e1");
  item.sufficient = false;
  const ValidationReport rep = validate_evidence_item(item);
  CHECK(rep.ok());
  CHECK(has_warning(rep, "sufficient"));
}

TEST_CASE("item years outside the plausible range warn; zero means unknown") {
  EvidenceItem item = internal_item("i1");
  item.year = 1850;
  CHECK(has_warning(validate_evidence_item(item), "year"));
  item.year = 0;
  const ValidationReport rep = validate_evidence_item(item);
  CHECK(rep.ok());
  CHECK_FALSE(has_warning(rep, "year"));
}

TEST_CASE("sample_size must be a positive patient count when given") {
  EvidenceItem item = internal_item("i1");
  item.sample_size = 0;
  CHECK(has_error(validate_evidence_item(item), "sample_size", "positive patient count"));
  item.sample_size = 1057;
  CHECK(validate_evidence_item(item).ok());
}

TEST_CASE("measure sanity checks") {
  EvidenceItem item = internal_item("i1");
  Measure m;
  m.name = "sensitivity";
  m.value = 98.5;

  SUBCASE("vocabulary names and other:<label> escapes are accepted") {
    item.measures.push_back(m);
    Measure other;
    other.name = "other:Net reclassification";
    other.value = 0.12;
    item.measures.push_back(other);
    CHECK(validate_evidence_item(item).ok());
  }
  SUBCASE("unknown names are rejected with the escape hint") {
    m.name = "Sensitivity";
    item.measures.push_back(m);
    CHECK(has_error(validate_evidence_item(item), "measures[0].name",
                    "unknown measure name \"Sensitivity\""));
    CHECK(has_error(validate_evidence_item(item), "measures[0].name", "other:<label>"));
  }
  SUBCASE("a bare other: with no label is not a name") {
    m.name = "other:";
    item.measures.push_back(m);
    CHECK(has_error(validate_evidence_item(item), "measures[0].name", "unknown measure name"));
  }
  SUBCASE("confidence intervals must be ordered") {
    m.ci_low = 0.9;
    m.ci_high = 0.2;
    item.measures.push_back(m);
    CHECK(has_error(validate_evidence_item(item), "measures[0].ci_low", "exceeds ci_high"));
  }
  SUBCASE("p values live in the unit interval") {
    m.p_value = 1.5;
    item.measures.push_back(m);
    CHECK(has_error(validate_evidence_item(item), "measures[0].p_value", "must lie in [0,1]"));
    item.measures[0].p_value = 0.049;
    CHECK(validate_evidence_item(item).ok());
  }
  SUBCASE("issues on later measures carry their index") {
    item.measures.push_back(m);
    Measure bad;
    bad.name = "ppv";
    bad.value = 1.0;
    item.measures.push_back(bad);
    CHECK(has_error(validate_evidence_item(item), "measures[1].name", "unknown measure name"));
  }
}

TEST_CASE("record validation prefixes item issues with their position") {
  ToolRecord record;
  record.profile = complete_profile();
  record.evidence.push_back(internal_item("a"));
  EvidenceItem bad = external_item("b");
  bad.dataset_count.reset();
  record.evidence.push_back(bad);
  const ValidationReport rep = validate_record(record);
  CHECK(has_error(rep, "evidence[1].dataset_count", "required for external_validation"));
  CHECK(rep.error_count() == 1);
}

TEST_CASE("duplicate evidence ids are flagged at the second use, naming the first") {
  ToolRecord record;
  record.profile = complete_profile();
  record.evidence.push_back(internal_item("study-1"));
  record.evidence.push_back(external_item("study-2"));
  record.evidence.push_back(external_item("study-1"));
  const ValidationReport rep = validate_record(record);
  CHECK(has_error(rep, "evidence[2].id",
                  "duplicate evidence id \"study-1\" (first used at evidence[0])"));
}

TEST_CASE("override rules: no unresolved pins, no duplicate cells, justify yourself") {
  ToolRecord record;
  record.profile = complete_profile();
  record.evidence.push_back(external_item("e1"));

  Override first;
  first.cell = GradeCell::C2;
  first.direction = Direction::Negative;
  first.justification = "registry recalibration failed locally";
  record.overrides.push_back(first);

  Override second;
  second.cell = GradeCell::C2;
  second.direction = Direction::Unresolved;
  second.justification = "";
  record.overrides.push_back(second);

  const ValidationReport rep = validate_record(record);
  CHECK(has_error(rep, "overrides[1].direction", "may not pin unresolved"));
  CHECK(has_error(rep, "overrides[1].cell", "duplicate override for cell C2"));
  CHECK(has_warning(rep, "overrides[1].justification"));
}

TEST_CASE("generated records always validate cleanly") {
  std::mt19937 rng(20260817u);
  for (int i = 0; i < 200; ++i) {
    const ToolRecord record = grasp::testgen::rand_record(rng);
    const ValidationReport rep = validate_record(record);
    CAPTURE(i);
    CHECK(rep.ok());
  }
}

TEST_CASE("measure display names cover the vocabulary and the escape") {
  CHECK(measure_display_name("auc_c_statistic") == "AUC/c-statistic");
  CHECK(measure_display_name("hosmer_lemeshow_p") == "Hosmer–Lemeshow");
  CHECK(measure_display_name("cost_saving") == "Cost saving");
  CHECK(measure_display_name("other:Net benefit") == "Net benefit");
  CHECK(is_known_measure_name("brier"));
  CHECK_FALSE(is_known_measure_name("Brier"));
  CHECK(is_known_measure_name("other:x"));
  CHECK_FALSE(is_known_measure_name("other:"));
}
