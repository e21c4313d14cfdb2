// The unit flowing through analysis and rewriting.

#ifndef VCHUNK_TOKEN_H_
#define VCHUNK_TOKEN_H_

#include <cstddef>
#include <string>

#include "vchunk/lexicon.h"

namespace vchunk {

// Half-open byte range into the source text.
struct CharSpan {
  size_t begin = 0;
  size_t end = 0;

  bool operator==(const CharSpan &other) const = default;
};

// Half-open range of plain word positions, i.e. positions in the
// lexicon-free tokenization of the text.  A multiword lexicon token such as
// "sans doute" covers two plain words.
struct WordRange {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool operator==(const WordRange &other) const = default;
};

enum class Provenance { kLexical, kUnknown, kRecomposed };

struct Token {
  std::string surface;
  std::string lemma;
  FeatureValueList fvl;
  CharSpan span;
  WordRange words;
  Provenance provenance = Provenance::kLexical;
  // Phase of the rule that last decided this token; 0 for analyzer output.
  int phase = 0;

  bool Has(std::string_view value) const { return HasValue(fvl, value); }
  bool operator==(const Token &other) const = default;
};

// Joins two surface or lemma pieces: no space after an elided form (n') or
// before a hyphenated clitic (-il), a single space otherwise.
std::string JoinPieces(std::string_view left, std::string_view right);

}  // namespace vchunk

#endif  // VCHUNK_TOKEN_H_
