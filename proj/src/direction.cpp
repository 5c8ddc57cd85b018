#include "grasp/direction.hpp"

#include <stdexcept>

namespace grasp {

ConclusionCounts count_conclusions(const std::vector<Conclusion>& conclusions) {
  ConclusionCounts counts;
  for (Conclusion c : conclusions) {
    switch (c) {
      case Conclusion::Positive: ++counts.positive; break;
      case Conclusion::Equivocal: ++counts.equivocal; break;
      case Conclusion::Negative: ++counts.negative; break;
    }
  }
  return counts;
}

RawDirection resolve_raw_direction(const ConclusionCounts& counts) {
  if (counts.total() == 0) throw std::invalid_argument("no evidence at this cell");
  if (counts.positive == 0) return RawDirection::Negative;
  if (counts.non_positive() == 0) return RawDirection::Positive;
  return RawDirection::Mixed;
}

RawDirection resolve_raw_direction(const std::vector<Conclusion>& conclusions) {
  return resolve_raw_direction(count_conclusions(conclusions));
}

}  // namespace grasp
