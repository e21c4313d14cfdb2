#include "vchunk/chunk.h"

namespace vchunk {

CoarseLabel CoarseOf(FineLabel label) {
  switch (label) {
    case FineLabel::kVnflI:
    case FineLabel::kVnflII:
      return CoarseLabel::kFinite;
    case FineLabel::kVninfI:
    case FineLabel::kVninfII:
      return CoarseLabel::kInfinitive;
  }
  return CoarseLabel::kFinite;
}

std::string_view Name(CoarseLabel label) {
  return label == CoarseLabel::kFinite ? "fin" : "inf";
}

std::string_view DisplayName(CoarseLabel label) {
  return label == CoarseLabel::kFinite ? "finite" : "infinitive";
}

std::string_view Name(FineLabel label) {
  switch (label) {
    case FineLabel::kVnflI:
      return "vnfl-I";
    case FineLabel::kVnflII:
      return "vnfl-II";
    case FineLabel::kVninfI:
      return "vninf-I";
    case FineLabel::kVninfII:
      return "vninf-II";
  }
  return "";
}

std::optional<CoarseLabel> ParseCoarseLabel(std::string_view s) {
  if (s == "fin") return CoarseLabel::kFinite;
  if (s == "inf") return CoarseLabel::kInfinitive;
  return std::nullopt;
}

std::optional<FineLabel> ParseFineLabel(std::string_view s) {
  for (FineLabel label : kFineLabels) {
    if (Name(label) == s) return label;
  }
  return std::nullopt;
}

}  // namespace vchunk
