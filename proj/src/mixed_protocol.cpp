#include "grasp/mixed_protocol.hpp"

#include <sstream>
#include <stdexcept>

#include "grasp/direction.hpp"

namespace grasp {
namespace {

std::string class_tally_line(EvidenceClass cls, const ConclusionCounts& counts,
                             const char* decision) {
  std::ostringstream line;
  line << "class " << to_string(cls) << ": " << counts.positive << " positive vs "
       << counts.non_positive() << " equivocal/negative -> " << decision;
  return line.str();
}

}  // namespace

bool is_matching(const MatchingProfile& m) {
  return m.predictive_task != MatchState::Mismatch && m.outcome != MatchState::Mismatch &&
         m.intended_use != MatchState::Mismatch && m.intended_users != MatchState::Mismatch &&
         m.clinical_specialty != MatchState::Mismatch &&
         m.healthcare_settings != MatchState::Mismatch &&
         m.target_population != MatchState::Mismatch && m.age_group != MatchState::Mismatch;
}

bool is_high_quality(const QualityProfile& q) {
  return q.sample_size != QualityState::Inadequate &&
         q.data_collection != QualityState::Inadequate &&
         q.study_methods != QualityState::Inadequate &&
         q.credibility != QualityState::Inadequate;
}

EvidenceClass classify_study(const EvidenceItem& item) {
  const bool matching = is_matching(item.matching);
  const bool high_quality = is_high_quality(item.quality);
  if (matching && high_quality) return EvidenceClass::A;
  if (matching || high_quality) return EvidenceClass::B;
  return EvidenceClass::C;
}

ResolvedDirection resolve_mixed(const std::vector<EvidenceItem>& items) {
  std::vector<Conclusion> conclusions;
  conclusions.reserve(items.size());
  for (const auto& item : items) conclusions.push_back(item.conclusion);
  if (resolve_raw_direction(conclusions) != RawDirection::Mixed) {
    throw std::logic_error("protocol applies to mixed evidence only");
  }

  ResolvedDirection result;

  // One tally per class, and a class-membership line for the trace.
  ConclusionCounts tally[3];
  std::ostringstream classes_line;
  classes_line << "study classes:";
  for (const auto& item : items) {
    const EvidenceClass cls = classify_study(item);
    auto& counts = tally[static_cast<int>(cls)];
    switch (item.conclusion) {
      case Conclusion::Positive: ++counts.positive; break;
      case Conclusion::Equivocal: ++counts.equivocal; break;
      case Conclusion::Negative: ++counts.negative; break;
    }
    classes_line << ' ' << item.id << '=' << to_string(cls);
  }
  result.trace.push_back(classes_line.str());

  for (EvidenceClass cls : {EvidenceClass::A, EvidenceClass::B, EvidenceClass::C}) {
    const auto& counts = tally[static_cast<int>(cls)];
    if (counts.total() == 0) continue;  // class not present: not examined
    if (counts.positive > counts.non_positive()) {
      result.value = Direction::MixedPositive;
      result.trace.push_back(class_tally_line(cls, counts, "positive majority, mixed-positive"));
      return result;
    }
    if (counts.positive < counts.non_positive()) {
      result.value = Direction::MixedNegative;
      result.trace.push_back(class_tally_line(cls, counts, "negative majority, mixed-negative"));
      return result;
    }
    result.trace.push_back(class_tally_line(cls, counts, "tie, descending"));
  }

  result.value = Direction::Unresolved;
  result.trace.push_back("tie persists across all classes -> unresolved");
  return result;
}

}  // namespace grasp
