// Verbal chunk labels and annotations shared by the chunker and the scorer.

#ifndef VCHUNK_CHUNK_H_
#define VCHUNK_CHUNK_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "vchunk/token.h"

namespace vchunk {

enum class CoarseLabel { kFinite, kInfinitive };

// -I: built by structural rules; -II: built by heuristic rules.
enum class FineLabel { kVnflI, kVnflII, kVninfI, kVninfII };

inline constexpr std::array<FineLabel, 4> kFineLabels = {
    FineLabel::kVninfI, FineLabel::kVninfII, FineLabel::kVnflI,
    FineLabel::kVnflII};

CoarseLabel CoarseOf(FineLabel label);
std::string_view Name(CoarseLabel label);  // "fin" / "inf"
std::string_view DisplayName(CoarseLabel label);  // "finite" / "infinitive"
std::string_view Name(FineLabel label);    // "vnfl-I" ...

std::optional<CoarseLabel> ParseCoarseLabel(std::string_view s);
std::optional<FineLabel> ParseFineLabel(std::string_view s);

struct ChunkAnnotation {
  size_t sentence_index = 0;
  WordRange words;  // plain word positions within the sentence
  FineLabel label = FineLabel::kVnflI;
  std::string surface;

  bool operator==(const ChunkAnnotation &other) const = default;
};

}  // namespace vchunk

#endif  // VCHUNK_CHUNK_H_
