#include "vchunk/lexicon.h"

#include <istream>
#include <sstream>

namespace vchunk {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      parts.push_back(line.substr(start));
      return parts;
    }
    parts.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool IsWellFormedSurface(std::string_view s) {
  if (s.empty() || s.front() == ' ' || s.back() == ' ') return false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == ' ') {
      if (s[i + 1] == ' ') return false;
    } else if (IsSpace(s[i])) {
      return false;
    }
  }
  return true;
}

std::string FirstWord(std::string_view s) {
  return std::string(s.substr(0, s.find(' ')));
}

FeatureValueList ParseFvl(std::string_view field, int line) {
  FeatureValueList fvl;
  if (field.empty()) return fvl;
  size_t start = 0;
  while (start <= field.size()) {
    size_t comma = field.find(',', start);
    std::string_view item = field.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start);
    size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw LexiconError("line " + std::to_string(line) +
                             ": expected FEATURE=value, got '" +
                             std::string(item) + "'",
                         line);
    }
    std::string_view feature = item.substr(0, eq);
    std::string_view value = item.substr(eq + 1);
    if (!IsValidIdentifier(feature) || !IsValidIdentifier(value)) {
      throw LexiconError("line " + std::to_string(line) +
                             ": malformed feature/value pair '" +
                             std::string(item) + "'",
                         line);
    }
    fvl.push_back({std::string(feature), std::string(value)});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fvl;
}

int CountPairs(const FeatureValueList &fvl, std::string_view feature,
               std::string_view value) {
  int n = 0;
  for (const auto &fv : fvl) {
    if (fv.feature == feature && fv.value == value) ++n;
  }
  return n;
}

}  // namespace

bool HasValue(const FeatureValueList &fvl, std::string_view value) {
  for (const auto &fv : fvl) {
    if (fv.value == value) return true;
  }
  return false;
}

bool HasPair(const FeatureValueList &fvl, std::string_view feature,
             std::string_view value) {
  return CountPairs(fvl, feature, value) > 0;
}

bool IsValidIdentifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (IsSpace(c) || c == ',' || c == '\'' || c == '=') return false;
  }
  return true;
}

std::string LowercaseFirst(std::string_view s) {
  std::string out(s);
  if (out.empty()) return out;
  unsigned char c0 = out[0];
  if (c0 >= 'A' && c0 <= 'Z') {
    out[0] = static_cast<char>(c0 - 'A' + 'a');
  } else if (c0 == 0xC3 && out.size() > 1) {
    // Latin-1 capitals U+00C0..U+00DE, except the multiplication sign.
    unsigned char c1 = out[1];
    if (c1 >= 0x80 && c1 <= 0x9E && c1 != 0x97) {
      out[1] = static_cast<char>(c1 + 0x20);
    }
  }
  return out;
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries)
    : entries_(std::move(entries)) {
  for (size_t i = 0; i < entries_.size(); ++i) {
    by_surface_[entries_[i].surface].push_back(i);
    by_first_word_[FirstWord(entries_[i].surface)].push_back(i);
  }
}

std::vector<const LexiconEntry *> Lexicon::ExactLookup(
    std::string_view s) const {
  std::vector<const LexiconEntry *> result;
  auto it = by_surface_.find(std::string(s));
  if (it == by_surface_.end()) return result;
  for (size_t i : it->second) result.push_back(&entries_[i]);
  return result;
}

std::vector<const LexiconEntry *> Lexicon::Lookup(
    std::string_view surface) const {
  auto result = ExactLookup(surface);
  if (result.empty()) {
    std::string lowered = LowercaseFirst(surface);
    if (lowered != surface) result = ExactLookup(lowered);
  }
  return result;
}

const std::vector<size_t> &Lexicon::ByFirstWord(std::string_view word) const {
  static const std::vector<size_t> kNone;
  auto it = by_first_word_.find(std::string(word));
  return it == by_first_word_.end() ? kNone : it->second;
}

Lexicon ReadLexicon(std::istream &in) {
  std::vector<LexiconEntry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    bool blank = true;
    for (char c : line) blank = blank && IsSpace(c);
    if (blank) continue;

    auto fields = SplitTabs(line);
    if (fields.size() != 3) {
      throw LexiconError("line " + std::to_string(line_no) +
                             ": expected 3 tab-separated fields, got " +
                             std::to_string(fields.size()),
                         line_no);
    }
    if (!IsWellFormedSurface(fields[0])) {
      throw LexiconError("line " + std::to_string(line_no) +
                             ": malformed surface '" + std::string(fields[0]) +
                             "'",
                         line_no);
    }
    if (fields[1].empty()) {
      throw LexiconError("line " + std::to_string(line_no) + ": empty lemma",
                         line_no);
    }
    entries.push_back({std::string(fields[0]), std::string(fields[1]),
                       ParseFvl(fields[2], line_no)});
  }
  return Lexicon(std::move(entries));
}

Lexicon LoadLexicon(std::istream &in) {
  Lexicon lex = ReadLexicon(in);
  auto diagnostics = ValidateLexicon(lex);
  if (!diagnostics.empty()) {
    std::string msg = "invalid lexicon:";
    for (const auto &d : diagnostics) {
      msg += "\n  " + d.surface + ": " + d.message;
    }
    throw LexiconError(msg, 0);
  }
  return lex;
}

Lexicon LoadLexiconFromString(std::string_view text) {
  std::istringstream in{std::string(text)};
  return LoadLexicon(in);
}

std::string SerializeLexicon(const Lexicon &lex) {
  std::string out;
  for (const auto &e : lex.entries()) {
    out += e.surface;
    out += '\t';
    out += e.lemma;
    out += '\t';
    for (size_t i = 0; i < e.fvl.size(); ++i) {
      if (i > 0) out += ',';
      out += e.fvl[i].feature;
      out += '=';
      out += e.fvl[i].value;
    }
    out += '\n';
  }
  return out;
}

std::vector<Diagnostic> ValidateEntry(const LexiconEntry &entry,
                                      size_t index) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string message) {
    out.push_back({index, entry.surface, std::move(message)});
  };
  const auto &fvl = entry.fvl;

  if (!IsWellFormedSurface(entry.surface)) report("malformed surface");
  if (entry.lemma.empty()) report("empty lemma");
  for (const auto &fv : fvl) {
    if (!IsValidIdentifier(fv.feature) || !IsValidIdentifier(fv.value)) {
      report("malformed feature/value pair '" + fv.feature + "=" + fv.value +
             "'");
    }
  }

  bool fl = HasPair(fvl, "MOD", "fl");
  bool pp = HasPair(fvl, "MOD", "pp");
  bool inf = HasPair(fvl, "MOD", "inf");
  int ov = CountPairs(fvl, "AMB", "ov");
  int nv = CountPairs(fvl, "AMB", "nv");
  int jv = CountPairs(fvl, "AMB", "jv");
  int oin = CountPairs(fvl, "AMB", "oin");
  int nin = CountPairs(fvl, "AMB", "nin");

  if (fl && ov + nv != 1) {
    report("fl requires exactly one of AMB=ov or AMB=nv");
  }
  if (jv > 0 && ov == 0) report("jv requires ov");
  if (inf && oin + nin != 1) {
    report("inf requires exactly one of AMB=oin or AMB=nin");
  }
  if (fl && pp) {
    report("fl and pp must be separate entries");
  }
  bool has_person = false;
  for (const auto &fv : fvl) {
    if (fv.feature == "PERS" || fv.feature == "NUM") has_person = true;
  }
  if (has_person) {
    bool plural_12 = HasPair(fvl, "NUM", "pl") &&
                     (HasPair(fvl, "PERS", "1") || HasPair(fvl, "PERS", "2"));
    if (!fl || !plural_12) {
      report(
          "PERS/NUM only allowed on first/second person plural inflected "
          "verbs");
    }
  }
  return out;
}

std::vector<Diagnostic> ValidateLexicon(const Lexicon &lex) {
  std::vector<Diagnostic> out;
  for (size_t i = 0; i < lex.entries().size(); ++i) {
    auto d = ValidateEntry(lex.entries()[i], i);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

}  // namespace vchunk
