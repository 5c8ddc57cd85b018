#include "grasp/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string_view>

#include "json.hpp"

namespace grasp {
namespace {

using nlohmann::json;

std::string join_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string indexed(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

/// nlohmann prefixes exception text with "[json.exception.parse_error.NNN] ";
/// diagnostics keep only the human part ("parse error at line L, column C: ...").
std::string strip_exception_prefix(const char* what) {
  std::string_view text(what);
  if (!text.empty() && text.front() == '[') {
    const auto end = text.find("] ");
    if (end != std::string_view::npos) text.remove_prefix(end + 2);
  }
  return std::string(text);
}

void check_unknown_keys(const json& obj, const std::string& path,
                        std::initializer_list<std::string_view> allowed,
                        ValidationReport& rep) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      rep.add_error(join_path(path, it.key()), "unknown field");
    }
  }
}

/// Fetches a required key; reports and returns nullptr when absent.
const json* require_field(const json& obj, const char* key, const std::string& path,
                          ValidationReport& rep) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    rep.add_error(join_path(path, key), "missing required field");
    return nullptr;
  }
  return &*it;
}

const json* optional_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

bool read_string(const json& j, const std::string& path, ValidationReport& rep,
                 std::string& out) {
  if (!j.is_string()) {
    rep.add_error(path, "expected a string");
    return false;
  }
  out = j.get<std::string>();
  return true;
}

bool read_bool(const json& j, const std::string& path, ValidationReport& rep, bool& out) {
  if (!j.is_boolean()) {
    rep.add_error(path, "expected a boolean");
    return false;
  }
  out = j.get<bool>();
  return true;
}

bool read_integer(const json& j, const std::string& path, ValidationReport& rep,
                  long long& out) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    rep.add_error(path, "expected an integer");
    return false;
  }
  out = j.get<long long>();
  return true;
}

bool read_number(const json& j, const std::string& path, ValidationReport& rep, double& out) {
  if (!j.is_number()) {
    rep.add_error(path, "expected a number");
    return false;
  }
  out = j.get<double>();
  return true;
}

/// Reads an enum-valued string through its parse function, reporting the
/// allowed values on a miss.
template <typename T, typename ParseFn>
bool read_enum(const json& j, const std::string& path, ValidationReport& rep, ParseFn parse,
               const std::string& allowed, T& out) {
  std::string text;
  if (!read_string(j, path, rep, text)) return false;
  const std::optional<T> parsed = parse(text);
  if (!parsed) {
    rep.add_error(path, "invalid value \"" + text + "\"; allowed values: " + allowed);
    return false;
  }
  out = *parsed;
  return true;
}

void parse_input_source(const json& j, const std::string& path, ValidationReport& rep,
                        InputSource& out) {
  if (!j.is_object()) {
    rep.add_error(path, "expected an object");
    return;
  }
  check_unknown_keys(j, path, {"detail", "kind"}, rep);
  if (const json* kind = require_field(j, "kind", path, rep)) {
    read_enum(*kind, join_path(path, "kind"), rep, parse_source_kind,
              allowed_source_kind_values(), out.kind);
  }
  if (const json* detail = optional_field(j, "detail")) {
    read_string(*detail, join_path(path, "detail"), rep, out.detail);
  }
}

void parse_local_context(const json& j, const std::string& path, ValidationReport& rep,
                         LocalContext& out) {
  if (!j.is_object()) {
    rep.add_error(path, "expected an object");
    return;
  }
  check_unknown_keys(j, path, {"depends", "note"}, rep);
  if (const json* depends = optional_field(j, "depends")) {
    read_bool(*depends, join_path(path, "depends"), rep, out.depends);
  }
  if (const json* note = optional_field(j, "note")) {
    read_string(*note, join_path(path, "note"), rep, out.note);
  }
}

void parse_profile(const json& j, const std::string& path, ValidationReport& rep,
                   ToolProfile& out) {
  check_unknown_keys(j, path,
                     {"action", "authors", "automation", "category", "citations",
                      "clinical_area", "country", "endorsements", "input_source",
                      "input_type", "intended_use", "intended_user", "local_context",
                      "methodology", "name", "target_outcome", "target_population", "year"},
                     rep);

  if (const json* v = require_field(j, "name", path, rep)) {
    read_string(*v, join_path(path, "name"), rep, out.name);
  }
  if (const json* v = require_field(j, "category", path, rep)) {
    read_enum(*v, join_path(path, "category"), rep, parse_category, allowed_category_values(),
              out.category);
  }
  if (const json* v = require_field(j, "year", path, rep)) {
    long long year = 0;
    if (read_integer(*v, join_path(path, "year"), rep, year)) out.year = static_cast<int>(year);
  }
  if (const json* v = require_field(j, "citations", path, rep)) {
    read_integer(*v, join_path(path, "citations"), rep, out.citations);
  }
  if (const json* v = require_field(j, "automation", path, rep)) {
    read_enum(*v, join_path(path, "automation"), rep, parse_automation,
              allowed_automation_values(), out.automation);
  }

  if (const json* v = optional_field(j, "authors")) {
    read_string(*v, join_path(path, "authors"), rep, out.authors);
  }
  if (const json* v = optional_field(j, "country")) {
    read_string(*v, join_path(path, "country"), rep, out.country);
  }
  if (const json* v = optional_field(j, "intended_use")) {
    read_string(*v, join_path(path, "intended_use"), rep, out.intended_use);
  }
  if (const json* v = optional_field(j, "intended_user")) {
    read_string(*v, join_path(path, "intended_user"), rep, out.intended_user);
  }
  if (const json* v = optional_field(j, "clinical_area")) {
    read_string(*v, join_path(path, "clinical_area"), rep, out.clinical_area);
  }
  if (const json* v = optional_field(j, "target_population")) {
    read_string(*v, join_path(path, "target_population"), rep, out.target_population);
  }
  if (const json* v = optional_field(j, "target_outcome")) {
    read_string(*v, join_path(path, "target_outcome"), rep, out.target_outcome);
  }
  if (const json* v = optional_field(j, "action")) {
    read_string(*v, join_path(path, "action"), rep, out.action);
  }
  if (const json* v = optional_field(j, "methodology")) {
    read_string(*v, join_path(path, "methodology"), rep, out.methodology);
  }

  if (const json* v = optional_field(j, "input_source")) {
    const std::string fp = join_path(path, "input_source");
    if (!v->is_array()) {
      rep.add_error(fp, "expected an array");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        parse_input_source((*v)[i], indexed(fp, i), rep, out.input_source.emplace_back());
      }
    }
  }
  if (const json* v = optional_field(j, "input_type")) {
    const std::string fp = join_path(path, "input_type");
    if (!v->is_array()) {
      rep.add_error(fp, "expected an array");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        InputType t = InputType::Objective;
        if (read_enum((*v)[i], indexed(fp, i), rep, parse_input_type,
                      allowed_input_type_values(), t)) {
          out.input_type.push_back(t);
        }
      }
    }
  }
  if (const json* v = optional_field(j, "local_context")) {
    parse_local_context(*v, join_path(path, "local_context"), rep, out.local_context);
  }
  if (const json* v = optional_field(j, "endorsements")) {
    const std::string fp = join_path(path, "endorsements");
    if (!v->is_array()) {
      rep.add_error(fp, "expected an array");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        std::string text;
        if (read_string((*v)[i], indexed(fp, i), rep, text)) {
          out.endorsements.push_back(std::move(text));
        }
      }
    }
  }
}

void parse_matching(const json& j, const std::string& path, ValidationReport& rep,
                    MatchingProfile& out) {
  if (!j.is_object()) {
    rep.add_error(path, "expected an object");
    return;
  }
  check_unknown_keys(j, path,
                     {"age_group", "clinical_specialty", "healthcare_settings", "intended_use",
                      "intended_users", "outcome", "predictive_task", "target_population"},
                     rep);
  const auto dim = [&](const char* key, MatchState& slot) {
    if (const json* v = require_field(j, key, path, rep)) {
      read_enum(*v, join_path(path, key), rep, parse_match_state, allowed_match_state_values(),
                slot);
    }
  };
  dim("predictive_task", out.predictive_task);
  dim("outcome", out.outcome);
  dim("intended_use", out.intended_use);
  dim("intended_users", out.intended_users);
  dim("clinical_specialty", out.clinical_specialty);
  dim("healthcare_settings", out.healthcare_settings);
  dim("target_population", out.target_population);
  dim("age_group", out.age_group);
}

void parse_quality(const json& j, const std::string& path, ValidationReport& rep,
                   QualityProfile& out) {
  if (!j.is_object()) {
    rep.add_error(path, "expected an object");
    return;
  }
  check_unknown_keys(j, path, {"credibility", "data_collection", "sample_size", "study_methods"},
                     rep);
  const auto crit = [&](const char* key, QualityState& slot) {
    if (const json* v = require_field(j, key, path, rep)) {
      read_enum(*v, join_path(path, key), rep, parse_quality_state,
                allowed_quality_state_values(), slot);
    }
  };
  crit("sample_size", out.sample_size);
  crit("data_collection", out.data_collection);
  crit("study_methods", out.study_methods);
  crit("credibility", out.credibility);
}

void parse_measure(const json& j, const std::string& path, ValidationReport& rep, Measure& out) {
  if (!j.is_object()) {
    rep.add_error(path, "expected an object");
    return;
  }
  check_unknown_keys(j, path, {"ci_high", "ci_low", "cutoff", "name", "p_value", "unit", "value"},
                     rep);
  if (const json* v = require_field(j, "name", path, rep)) {
    read_string(*v, join_path(path, "name"), rep, out.name);
  }
  if (const json* v = require_field(j, "value", path, rep)) {
    read_number(*v, join_path(path, "value"), rep, out.value);
  }
  if (const json* v = optional_field(j, "unit")) {
    std::string text;
    if (read_string(*v, join_path(path, "unit"), rep, text)) out.unit = std::move(text);
  }
  const auto opt_number = [&](const char* key, std::optional<double>& slot) {
    if (const json* v = optional_field(j, key)) {
      double value = 0.0;
      if (read_number(*v, join_path(path, key), rep, value)) slot = value;
    }
  };
  opt_number("ci_low", out.ci_low);
  opt_number("ci_high", out.ci_high);
  opt_number("p_value", out.p_value);
  opt_number("cutoff", out.cutoff);
}

void parse_item(const json& j, const std::string& path, ValidationReport& rep,
                EvidenceItem& out) {
  if (!j.is_object()) {
    rep.add_error(path, "expected an object");
    return;
  }
  check_unknown_keys(j, path,
                     {"citation", "conclusion", "dataset_count", "evaluation_type", "id",
                      "impact_category", "matching", "measures", "notes", "quality", "relevance",
                      "sample_size", "sufficient", "year"},
                     rep);

  if (const json* v = require_field(j, "id", path, rep)) {
    read_string(*v, join_path(path, "id"), rep, out.id);
  }
  if (const json* v = require_field(j, "evaluation_type", path, rep)) {
    read_enum(*v, join_path(path, "evaluation_type"), rep, parse_evaluation_type,
              allowed_evaluation_type_values(), out.evaluation_type);
  }
  if (const json* v = require_field(j, "conclusion", path, rep)) {
    read_enum(*v, join_path(path, "conclusion"), rep, parse_conclusion,
              allowed_conclusion_values(), out.conclusion);
  }
  if (const json* v = require_field(j, "year", path, rep)) {
    long long year = 0;
    if (read_integer(*v, join_path(path, "year"), rep, year)) out.year = static_cast<int>(year);
  }

  if (const json* v = optional_field(j, "citation")) {
    read_string(*v, join_path(path, "citation"), rep, out.citation);
  }
  if (const json* v = optional_field(j, "sufficient")) {
    bool flag = true;
    if (read_bool(*v, join_path(path, "sufficient"), rep, flag)) out.sufficient = flag;
  }
  if (const json* v = optional_field(j, "dataset_count")) {
    long long count = 0;
    if (read_integer(*v, join_path(path, "dataset_count"), rep, count)) {
      out.dataset_count = static_cast<int>(count);
    }
  }
  if (const json* v = optional_field(j, "impact_category")) {
    ImpactCategory cat = ImpactCategory::ClinicalEffectiveness;
    if (read_enum(*v, join_path(path, "impact_category"), rep, parse_impact_category,
                  allowed_impact_category_values(), cat)) {
      out.impact_category = cat;
    }
  }
  if (const json* v = optional_field(j, "relevance")) {
    Relevance rel = Relevance::Important;
    if (read_enum(*v, join_path(path, "relevance"), rep, parse_relevance,
                  allowed_relevance_values(), rel)) {
      out.relevance = rel;
    }
  }
  if (const json* v = optional_field(j, "sample_size")) {
    read_integer(*v, join_path(path, "sample_size"), rep, out.sample_size.emplace());
  }
  if (const json* v = optional_field(j, "notes")) {
    read_string(*v, join_path(path, "notes"), rep, out.notes);
  }
  if (const json* v = optional_field(j, "matching")) {
    parse_matching(*v, join_path(path, "matching"), rep, out.matching);
  }
  if (const json* v = optional_field(j, "quality")) {
    parse_quality(*v, join_path(path, "quality"), rep, out.quality);
  }
  if (const json* v = optional_field(j, "measures")) {
    const std::string fp = join_path(path, "measures");
    if (!v->is_array()) {
      rep.add_error(fp, "expected an array");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        parse_measure((*v)[i], indexed(fp, i), rep, out.measures.emplace_back());
      }
    }
  }
}

void parse_override(const json& j, const std::string& path, ValidationReport& rep,
                    Override& out) {
  if (!j.is_object()) {
    rep.add_error(path, "expected an object");
    return;
  }
  check_unknown_keys(j, path, {"cell", "direction", "justification"}, rep);
  if (const json* v = require_field(j, "cell", path, rep)) {
    read_enum(*v, join_path(path, "cell"), rep, parse_grade_cell, allowed_grade_cell_values(),
              out.cell);
  }
  if (const json* v = require_field(j, "direction", path, rep)) {
    const std::string fp = join_path(path, "direction");
    std::string text;
    if (read_string(*v, fp, rep, text)) {
      const std::optional<Direction> parsed = parse_direction(text);
      if (!parsed || *parsed == Direction::Unresolved) {
        rep.add_error(fp, "invalid value \"" + text +
                              "\"; allowed values: " + allowed_override_direction_values());
      } else {
        out.direction = *parsed;
      }
    }
  }
  if (const json* v = optional_field(j, "justification")) {
    read_string(*v, join_path(path, "justification"), rep, out.justification);
  }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// Whole numbers are written as JSON integers so that a value survives a
/// parse/serialize round trip unchanged (nlohmann would print 14.0 otherwise).
json number_to_json(double v) {
  constexpr double kExactIntegerBound = 9007199254740992.0;  // 2^53
  if (std::isfinite(v) && std::floor(v) == v && std::fabs(v) < kExactIntegerBound) {
    return json(static_cast<std::int64_t>(v));
  }
  return json(v);
}

json measure_to_json(const Measure& m) {
  json j;
  j["name"] = m.name;
  j["value"] = number_to_json(m.value);
  if (m.unit) j["unit"] = *m.unit;
  if (m.ci_low) j["ci_low"] = number_to_json(*m.ci_low);
  if (m.ci_high) j["ci_high"] = number_to_json(*m.ci_high);
  if (m.p_value) j["p_value"] = number_to_json(*m.p_value);
  if (m.cutoff) j["cutoff"] = number_to_json(*m.cutoff);
  return j;
}

json matching_to_json(const MatchingProfile& m) {
  json j;
  j["predictive_task"] = to_string(m.predictive_task);
  j["outcome"] = to_string(m.outcome);
  j["intended_use"] = to_string(m.intended_use);
  j["intended_users"] = to_string(m.intended_users);
  j["clinical_specialty"] = to_string(m.clinical_specialty);
  j["healthcare_settings"] = to_string(m.healthcare_settings);
  j["target_population"] = to_string(m.target_population);
  j["age_group"] = to_string(m.age_group);
  return j;
}

json quality_to_json(const QualityProfile& q) {
  json j;
  j["sample_size"] = to_string(q.sample_size);
  j["data_collection"] = to_string(q.data_collection);
  j["study_methods"] = to_string(q.study_methods);
  j["credibility"] = to_string(q.credibility);
  return j;
}

json item_to_json(const EvidenceItem& item) {
  json j;
  j["id"] = item.id;
  j["citation"] = item.citation;
  j["year"] = item.year;
  j["evaluation_type"] = to_string(item.evaluation_type);
  j["conclusion"] = to_string(item.conclusion);
  j["matching"] = matching_to_json(item.matching);
  j["quality"] = quality_to_json(item.quality);
  j["notes"] = item.notes;
  j["measures"] = json::array();
  for (const auto& m : item.measures) j["measures"].push_back(measure_to_json(m));

  if (item.evaluation_type == EvaluationType::InternalValidation) {
    j["sufficient"] = item.sufficient.value_or(true);
  }
  if (item.evaluation_type == EvaluationType::ExternalValidation) {
    j["dataset_count"] = item.dataset_count.value_or(1);
  }
  if (item.impact_category) j["impact_category"] = to_string(*item.impact_category);
  if (item.relevance) j["relevance"] = to_string(*item.relevance);
  if (item.sample_size) j["sample_size"] = *item.sample_size;
  return j;
}

json profile_to_json(const ToolProfile& p) {
  json j;
  j["name"] = p.name;
  j["authors"] = p.authors;
  j["country"] = p.country;
  j["year"] = p.year;
  j["intended_use"] = p.intended_use;
  j["intended_user"] = p.intended_user;
  j["category"] = to_string(p.category);
  j["clinical_area"] = p.clinical_area;
  j["target_population"] = p.target_population;
  j["target_outcome"] = p.target_outcome;
  j["action"] = p.action;
  j["input_source"] = json::array();
  for (const auto& src : p.input_source) {
    json s;
    s["kind"] = to_string(src.kind);
    s["detail"] = src.detail;
    j["input_source"].push_back(std::move(s));
  }
  j["input_type"] = json::array();
  for (InputType t : p.input_type) j["input_type"].push_back(to_string(t));
  j["local_context"] = json{{"depends", p.local_context.depends}, {"note", p.local_context.note}};
  j["methodology"] = p.methodology;
  j["endorsements"] = p.endorsements;
  j["automation"] = to_string(p.automation);
  j["citations"] = p.citations;
  return j;
}

}  // namespace

ParseResult parse_record(const std::string& text) {
  ParseResult out;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    out.issues.add_error("document", strip_exception_prefix(e.what()));
    return out;
  }
  if (!doc.is_object()) {
    out.issues.add_error("document", "top-level value must be an object");
    return out;
  }

  check_unknown_keys(doc, "", {"evidence", "overrides", "profile"}, out.issues);

  ToolRecord record;
  if (const json* profile = require_field(doc, "profile", "", out.issues)) {
    if (profile->is_object()) {
      parse_profile(*profile, "profile", out.issues, record.profile);
    } else {
      out.issues.add_error("profile", "expected an object");
    }
  }
  if (const json* evidence = optional_field(doc, "evidence")) {
    if (!evidence->is_array()) {
      out.issues.add_error("evidence", "expected an array");
    } else {
      for (std::size_t i = 0; i < evidence->size(); ++i) {
        parse_item((*evidence)[i], indexed("evidence", i), out.issues,
                   record.evidence.emplace_back());
      }
    }
  }
  if (const json* overrides = optional_field(doc, "overrides")) {
    if (!overrides->is_array()) {
      out.issues.add_error("overrides", "expected an array");
    } else {
      for (std::size_t i = 0; i < overrides->size(); ++i) {
        parse_override((*overrides)[i], indexed("overrides", i), out.issues,
                       record.overrides.emplace_back());
      }
    }
  }

  if (out.issues.ok()) out.record = std::move(record);
  return out;
}

ParseItemResult parse_evidence_item(const std::string& text) {
  ParseItemResult out;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    out.issues.add_error("document", strip_exception_prefix(e.what()));
    return out;
  }
  EvidenceItem item;
  parse_item(doc, "", out.issues, item);
  if (out.issues.ok()) out.item = std::move(item);
  return out;
}

std::string serialize_record(const ToolRecord& record) {
  json doc;
  doc["profile"] = profile_to_json(record.profile);
  doc["evidence"] = json::array();
  for (const auto& item : record.evidence) doc["evidence"].push_back(item_to_json(item));
  doc["overrides"] = json::array();
  for (const auto& ov : record.overrides) {
    json j;
    j["cell"] = to_string(ov.cell);
    j["direction"] = to_string(ov.direction);
    j["justification"] = ov.justification;
    doc["overrides"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace grasp
