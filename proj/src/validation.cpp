#include "grasp/validation.hpp"

#include <algorithm>
#include <array>
#include <ctime>
#include <map>
#include <set>
#include <sstream>

namespace grasp {
namespace {

int current_year() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  return tm_utc.tm_year + 1900;
}

constexpr std::array<std::string_view, 17> kMeasureVocabulary{
    "sensitivity",       "specificity",    "auc_c_statistic",
    "d_statistic",       "log_rank",       "calibration_slope",
    "calibration_intercept", "hosmer_lemeshow_p", "brier",
    "effectiveness",     "efficiency",     "satisfaction",
    "learnability",      "memorability",   "error_freedom",
    "effect_size",       "cost_saving",
};

bool takes_impact_category(EvaluationType t) {
  switch (t) {
    case EvaluationType::Usability:
    case EvaluationType::PotentialEffect:
    case EvaluationType::ImpactExperimental:
    case EvaluationType::ImpactObservational:
    case EvaluationType::ImpactSubjective:
      return true;
    case EvaluationType::InternalValidation:
    case EvaluationType::ExternalValidation:
      return false;
  }
  return false;
}

void check_measure(const Measure& m, const std::string& field, ValidationReport& rep) {
  if (!is_known_measure_name(m.name)) {
    rep.add_error(field + ".name",
                  "unknown measure name \"" + m.name +
                      "\"; use a vocabulary name or an \"other:<label>\" escape");
  }
  if (m.ci_low && m.ci_high && *m.ci_low > *m.ci_high) {
    std::ostringstream msg;
    msg << "ci_low (" << *m.ci_low << ") exceeds ci_high (" << *m.ci_high << ")";
    rep.add_error(field + ".ci_low", msg.str());
  }
  if (m.p_value && (*m.p_value < 0.0 || *m.p_value > 1.0)) {
    std::ostringstream msg;
    msg << "p_value (" << *m.p_value << ") must lie in [0,1]";
    rep.add_error(field + ".p_value", msg.str());
  }
}

void warn_if_empty(const std::string& value, const char* field, ValidationReport& rep) {
  if (value.empty()) rep.add_warning(field, "field is empty");
}

}  // namespace

void ValidationReport::add_error(std::string field, std::string message) {
  issues.push_back({Severity::Error, std::move(field), std::move(message)});
}

void ValidationReport::add_warning(std::string field, std::string message) {
  issues.push_back({Severity::Warning, std::move(field), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  for (const auto& issue : other.issues) {
    issues.push_back({issue.severity,
                      prefix.empty() ? issue.field : prefix + "." + issue.field,
                      issue.message});
  }
}

int ValidationReport::error_count() const {
  return static_cast<int>(std::count_if(issues.begin(), issues.end(), [](const auto& i) {
    return i.severity == Severity::Error;
  }));
}

int ValidationReport::warning_count() const {
  return static_cast<int>(issues.size()) - error_count();
}

bool is_known_measure_name(const std::string& name) {
  if (name.rfind("other:", 0) == 0) return name.size() > 6;
  return std::find(kMeasureVocabulary.begin(), kMeasureVocabulary.end(), name) !=
         kMeasureVocabulary.end();
}

std::string measure_display_name(const std::string& name) {
  if (name.rfind("other:", 0) == 0) return name.substr(6);
  static const std::map<std::string_view, std::string_view> kDisplay{
      {"sensitivity", "Sensitivity"},
      {"specificity", "Specificity"},
      {"auc_c_statistic", "AUC/c-statistic"},
      {"d_statistic", "D statistic"},
      {"log_rank", "Log-rank"},
      {"calibration_slope", "Calibration slope"},
      {"calibration_intercept", "Calibration intercept"},
      {"hosmer_lemeshow_p", "Hosmer–Lemeshow"},
      {"brier", "Brier score"},
      {"effectiveness", "Effectiveness"},
      {"efficiency", "Efficiency"},
      {"satisfaction", "Satisfaction"},
      {"learnability", "Learnability"},
      {"memorability", "Memorability"},
      {"error_freedom", "Error freedom"},
      {"effect_size", "Effect size"},
      {"cost_saving", "Cost saving"},
  };
  auto it = kDisplay.find(name);
  return it == kDisplay.end() ? name : std::string(it->second);
}

ValidationReport validate_tool_profile(const ToolProfile& profile) {
  ValidationReport rep;
  if (profile.name.empty()) rep.add_error("name", "tool name must be nonempty");
  const int year_cap = current_year();
  if (profile.year < 1900 || profile.year > year_cap) {
    std::ostringstream msg;
    msg << "year " << profile.year << " outside 1900.." << year_cap;
    rep.add_error("year", msg.str());
  }
  if (profile.citations < 0) rep.add_error("citations", "citations must be non-negative");

  warn_if_empty(profile.authors, "authors", rep);
  warn_if_empty(profile.intended_use, "intended_use", rep);
  warn_if_empty(profile.intended_user, "intended_user", rep);
  warn_if_empty(profile.country, "country", rep);
  warn_if_empty(profile.clinical_area, "clinical_area", rep);
  warn_if_empty(profile.target_population, "target_population", rep);
  warn_if_empty(profile.target_outcome, "target_outcome", rep);
  warn_if_empty(profile.action, "action", rep);
  warn_if_empty(profile.methodology, "methodology", rep);
  if (profile.input_source.empty()) rep.add_warning("input_source", "no input sources listed");
  if (profile.input_type.empty()) rep.add_warning("input_type", "no input types listed");
  if (profile.endorsements.empty()) rep.add_warning("endorsements", "no endorsements listed");
  return rep;
}

ValidationReport validate_evidence_item(const EvidenceItem& item) {
  ValidationReport rep;
  if (item.id.empty()) rep.add_error("id", "evidence id must be nonempty");
  warn_if_empty(item.citation, "citation", rep);

  const bool external = item.evaluation_type == EvaluationType::ExternalValidation;
  if (external) {
    if (!item.dataset_count) {
      rep.add_error("dataset_count", "required for external_validation items");
    } else if (*item.dataset_count < 1) {
      rep.add_error("dataset_count", "must be a positive dataset count");
    }
  } else if (item.dataset_count) {
    rep.add_error("dataset_count",
                  "field illegal for type " + std::string(to_string(item.evaluation_type)));
  }

  if (item.impact_category && !takes_impact_category(item.evaluation_type)) {
    rep.add_error("impact_category",
                  "field illegal for type " + std::string(to_string(item.evaluation_type)));
  }

  if (item.sufficient && item.evaluation_type != EvaluationType::InternalValidation) {
    rep.add_warning("sufficient", "only meaningful for internal_validation items");
  }

  if (item.sample_size && *item.sample_size < 1) {
    rep.add_error("sample_size", "must be a positive patient count");
  }

  const int year_cap = current_year();
  if (item.year != 0 && (item.year < 1900 || item.year > year_cap)) {
    std::ostringstream msg;
    msg << "year " << item.year << " outside 1900.." << year_cap;
    rep.add_warning("year", msg.str());
  }

  for (std::size_t i = 0; i < item.measures.size(); ++i) {
    check_measure(item.measures[i], "measures[" + std::to_string(i) + "]", rep);
  }
  return rep;
}

ValidationReport validate_record(const ToolRecord& record) {
  ValidationReport rep;
  rep.merge(validate_tool_profile(record.profile), "profile");

  std::map<std::string, std::size_t> first_seen;
  for (std::size_t i = 0; i < record.evidence.size(); ++i) {
    const auto& item = record.evidence[i];
    const std::string prefix = "evidence[" + std::to_string(i) + "]";
    rep.merge(validate_evidence_item(item), prefix);
    auto [it, inserted] = first_seen.emplace(item.id, i);
    if (!inserted) {
      rep.add_error(prefix + ".id", "duplicate evidence id \"" + item.id +
                                        "\" (first used at evidence[" +
                                        std::to_string(it->second) + "])");
    }
  }

  std::set<GradeCell> overridden;
  for (std::size_t i = 0; i < record.overrides.size(); ++i) {
    const auto& ov = record.overrides[i];
    const std::string prefix = "overrides[" + std::to_string(i) + "]";
    if (ov.direction == Direction::Unresolved) {
      rep.add_error(prefix + ".direction", "an override may not pin unresolved");
    }
    if (ov.justification.empty()) {
      rep.add_warning(prefix + ".justification", "expert override without justification");
    }
    if (!overridden.insert(ov.cell).second) {
      rep.add_error(prefix + ".cell", "duplicate override for cell " +
                                          std::string(display_name(ov.cell)));
    }
  }
  return rep;
}

}  // namespace grasp
