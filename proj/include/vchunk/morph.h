// Tokenization, lexical analysis and sentence segmentation.

#ifndef VCHUNK_MORPH_H_
#define VCHUNK_MORPH_H_

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vchunk/lexicon.h"
#include "vchunk/token.h"

namespace vchunk {

struct RawToken {
  std::string text;
  CharSpan span;
  WordRange words;

  bool operator==(const RawToken &other) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  // Byte range of the sentence in the analysed text.
  CharSpan source;
};

// Splits text into plain words: whitespace separates, punctuation marks are
// tokens of their own, elided forms (n', l', qu', ...) are split after the
// apostrophe and inverted clitics (-il, -t-elle, ...) before the hyphen.
// Uses no lexicon.
std::vector<RawToken> PlainTokenize(std::string_view text);

// Plain tokenization followed by greedy longest-first merging of multiword
// lexicon surfaces ("sans doute", "d'ailleurs", "rendez-vous").
class Tokenizer {
 public:
  explicit Tokenizer(const Lexicon &lex);

  std::vector<RawToken> Tokenize(std::string_view text) const;

 private:
  struct Multiword {
    std::vector<std::string> pieces;
  };
  // Keyed by the first piece with its first letter lowercased; longest
  // candidates first.
  std::unordered_map<std::string, std::vector<Multiword>> multiwords_;
};

std::vector<RawToken> Tokenize(std::string_view text, const Lexicon &lex);

// One Token per raw token.  Homographs are collapsed into one token whose
// fvl concatenates the entries' lists; unknown forms get [au=au, TPASS=auf].
std::vector<Token> Analyze(std::span<const RawToken> raw, const Lexicon &lex);

// Splits after ".", "!", "?" and "…".  Word ranges are rebased so that each
// sentence starts at word 0.
std::vector<Sentence> Segment(std::vector<Token> tokens);

// Smorph-style listing, per token:
//   'SURFACE'.
//   [ 'LEMMA', 'F1','v1', 'F2','v2'].
//   <blank line>
std::string RenderAnalysis(std::span<const Token> tokens);

size_t CountUnknown(std::span<const Token> tokens);

}  // namespace vchunk

#endif  // VCHUNK_MORPH_H_
