// Declarative lexicon of inflected surface forms.
//
// Each entry maps a surface form (possibly a multiword expression such as
// "sans doute") to a lemma and an ordered feature/value list.  Ambiguity is
// expressed through AMB values on a single entry; the only duplicated forms
// are verbs that are both inflected (fl) and past participles (pp).
//
// File format, one entry per line, '#' starts a comment line:
//
//   surface <TAB> lemma <TAB> F1=v1,F2=v2,...

#ifndef VCHUNK_LEXICON_H_
#define VCHUNK_LEXICON_H_

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vchunk {

struct FeatureValue {
  std::string feature;
  std::string value;

  bool operator==(const FeatureValue &other) const = default;
};

using FeatureValueList = std::vector<FeatureValue>;

// True if some pair in the list carries this value, whatever its feature.
bool HasValue(const FeatureValueList &fvl, std::string_view value);

// True if the list contains exactly this feature/value pair.
bool HasPair(const FeatureValueList &fvl, std::string_view feature,
             std::string_view value);

// Feature and value identifiers: non-empty, no whitespace, comma, apostrophe
// or '='.
bool IsValidIdentifier(std::string_view s);

struct LexiconEntry {
  std::string surface;
  std::string lemma;
  FeatureValueList fvl;

  bool operator==(const LexiconEntry &other) const = default;
};

// Syntax error in a lexicon file, or a strict load that found invariant
// violations.
class LexiconError : public std::runtime_error {
 public:
  LexiconError(const std::string &what, int line)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<LexiconEntry> entries);

  const std::vector<LexiconEntry> &entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Entries with exactly this surface in file order.  Falls back to the
  // surface with its first letter lowercased when the exact form is unknown.
  std::vector<const LexiconEntry *> Lookup(std::string_view surface) const;

  // Entries whose surface starts with this first word (space separated).
  const std::vector<size_t> &ByFirstWord(std::string_view word) const;

 private:
  std::vector<const LexiconEntry *> ExactLookup(std::string_view s) const;

  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, std::vector<size_t>> by_surface_;
  std::unordered_map<std::string, std::vector<size_t>> by_first_word_;
};

// One violated entry invariant.
struct Diagnostic {
  size_t entry_index;
  std::string surface;
  std::string message;
};

// Parses the file format only; entry invariants are not checked.
Lexicon ReadLexicon(std::istream &in);

// Parses and validates.  Throws LexiconError on syntax errors and on any
// invariant violation (the message lists every offending surface).
Lexicon LoadLexicon(std::istream &in);
Lexicon LoadLexiconFromString(std::string_view text);

// Writes the lexicon back in the file format.  LoadLexicon(Serialize(lex))
// reproduces lex entry for entry.
std::string SerializeLexicon(const Lexicon &lex);

std::vector<Diagnostic> ValidateLexicon(const Lexicon &lex);
std::vector<Diagnostic> ValidateEntry(const LexiconEntry &entry,
                                      size_t index = 0);

// Lowercases the first UTF-8 character (ASCII and Latin-1 capitals).
std::string LowercaseFirst(std::string_view s);

}  // namespace vchunk

#endif  // VCHUNK_LEXICON_H_
