#include "vchunk/morph.h"

#include <algorithm>
#include <array>

namespace vchunk {

namespace {

constexpr std::array<std::string_view, 9> kElisions = {
    "n'", "l'", "d'", "j'", "s'", "m'", "t'", "qu'", "c'"};

// Longest first so that -t-il wins over -il.
constexpr std::array<std::string_view, 23> kHyphenClitics = {
    "-t-elles", "-t-elle", "-t-ils", "-t-il", "-t-on", "-elles", "-elle",
    "-nous",    "-vous",   "-leur",  "-ils",  "-les",  "-lui",   "-moi",
    "-toi",     "-il",     "-on",    "-je",   "-tu",   "-ce",    "-le",
    "-la",      "-en"};

constexpr std::array<std::string_view, 4> kSentenceFinal = {".", "!", "?",
                                                            "…"};

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// Length in bytes of the punctuation mark starting at text[i], or 0.
size_t PunctLength(std::string_view text, size_t i) {
  static constexpr std::string_view kAscii = ".,;:!?()[]{}\"/";
  if (kAscii.find(text[i]) != std::string_view::npos) return 1;
  static constexpr std::array<std::string_view, 5> kUtf8 = {
      "«", "»", "…", "–", "—"};
  for (auto p : kUtf8) {
    if (text.substr(i, p.size()) == p) return p.size();
  }
  return 0;
}

bool EqualsIgnoreAsciiCase(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

// Splits one punctuation-free word into elided prefixes, stem and inverted
// clitic suffixes, appending the pieces to out.
void SplitWord(std::string_view word, size_t offset,
               std::vector<RawToken> &out) {
  // Elided prefixes.
  bool again = true;
  while (again) {
    again = false;
    for (auto prefix : kElisions) {
      if (word.size() > prefix.size() &&
          EqualsIgnoreAsciiCase(word.substr(0, prefix.size()), prefix)) {
        out.push_back({std::string(word.substr(0, prefix.size())),
                       {offset, offset + prefix.size()},
                       {}});
        word.remove_prefix(prefix.size());
        offset += prefix.size();
        again = true;
        break;
      }
    }
  }
  // Inverted clitic suffixes, collected right to left.
  std::vector<RawToken> suffixes;
  again = true;
  while (again) {
    again = false;
    for (auto suffix : kHyphenClitics) {
      if (word.size() > suffix.size() &&
          EqualsIgnoreAsciiCase(word.substr(word.size() - suffix.size()),
                                suffix)) {
        size_t start = offset + word.size() - suffix.size();
        suffixes.push_back({std::string(word.substr(word.size() -
                                                    suffix.size())),
                            {start, start + suffix.size()},
                            {}});
        word.remove_suffix(suffix.size());
        again = true;
        break;
      }
    }
  }
  out.push_back({std::string(word), {offset, offset + word.size()}, {}});
  out.insert(out.end(), suffixes.rbegin(), suffixes.rend());
}

}  // namespace

std::string JoinPieces(std::string_view left, std::string_view right) {
  std::string out(left);
  bool glue = (!left.empty() && left.back() == '\'') ||
              (!right.empty() && right.front() == '-');
  if (!glue && !left.empty() && !right.empty()) out += ' ';
  out += right;
  return out;
}

std::vector<RawToken> PlainTokenize(std::string_view text) {
  std::vector<RawToken> out;
  size_t i = 0;
  size_t word_start = std::string_view::npos;
  auto flush_word = [&](size_t end) {
    if (word_start != std::string_view::npos && end > word_start) {
      SplitWord(text.substr(word_start, end - word_start), word_start, out);
    }
    word_start = std::string_view::npos;
  };
  while (i < text.size()) {
    char c = text[i];
    if (IsSpace(c)) {
      flush_word(i);
      ++i;
      continue;
    }
    size_t plen = PunctLength(text, i);
    if (plen > 0) {
      // Decimal separators and thousands dots stay inside numbers.
      bool numeric = (c == '.' || c == ',') && i > 0 && IsDigit(text[i - 1]) &&
                     i + 1 < text.size() && IsDigit(text[i + 1]) &&
                     word_start != std::string_view::npos;
      if (!numeric) {
        flush_word(i);
        size_t end = i + plen;
        if (c == '.') {
          while (end < text.size() && text[end] == '.') ++end;
        }
        out.push_back({std::string(text.substr(i, end - i)), {i, end}, {}});
        i = end;
        continue;
      }
    }
    if (word_start == std::string_view::npos) word_start = i;
    ++i;
  }
  flush_word(text.size());
  for (size_t k = 0; k < out.size(); ++k) out[k].words = {k, k + 1};
  return out;
}

Tokenizer::Tokenizer(const Lexicon &lex) {
  for (const auto &entry : lex.entries()) {
    auto pieces = PlainTokenize(entry.surface);
    if (pieces.size() < 2) continue;
    Multiword mw;
    for (auto &p : pieces) mw.pieces.push_back(std::move(p.text));
    auto &bucket = multiwords_[LowercaseFirst(mw.pieces.front())];
    bool duplicate = std::any_of(bucket.begin(), bucket.end(),
                                 [&](const Multiword &other) {
                                   return other.pieces == mw.pieces;
                                 });
    if (!duplicate) bucket.push_back(std::move(mw));
  }
  for (auto &[key, bucket] : multiwords_) {
    std::stable_sort(bucket.begin(), bucket.end(),
                     [](const Multiword &a, const Multiword &b) {
                       return a.pieces.size() > b.pieces.size();
                     });
  }
}

std::vector<RawToken> Tokenizer::Tokenize(std::string_view text) const {
  std::vector<RawToken> plain = PlainTokenize(text);
  if (multiwords_.empty()) return plain;

  std::vector<RawToken> out;
  size_t i = 0;
  while (i < plain.size()) {
    size_t matched = 0;
    auto it = multiwords_.find(LowercaseFirst(plain[i].text));
    if (it != multiwords_.end()) {
      for (const auto &mw : it->second) {
        size_t n = mw.pieces.size();
        if (i + n > plain.size()) continue;
        bool ok = plain[i].text == mw.pieces[0] ||
                  LowercaseFirst(plain[i].text) == mw.pieces[0];
        for (size_t k = 1; ok && k < n; ++k) {
          ok = plain[i + k].text == mw.pieces[k];
        }
        if (ok) {
          matched = n;
          break;
        }
      }
    }
    if (matched == 0) {
      out.push_back(plain[i]);
      ++i;
      continue;
    }
    RawToken merged = plain[i];
    for (size_t k = 1; k < matched; ++k) {
      merged.text = JoinPieces(merged.text, plain[i + k].text);
    }
    merged.span.end = plain[i + matched - 1].span.end;
    merged.words.end = plain[i + matched - 1].words.end;
    out.push_back(std::move(merged));
    i += matched;
  }
  return out;
}

std::vector<RawToken> Tokenize(std::string_view text, const Lexicon &lex) {
  return Tokenizer(lex).Tokenize(text);
}

std::vector<Token> Analyze(std::span<const RawToken> raw, const Lexicon &lex) {
  std::vector<Token> out;
  out.reserve(raw.size());
  for (const auto &r : raw) {
    Token token;
    token.surface = r.text;
    token.span = r.span;
    token.words = r.words;
    auto entries = lex.Lookup(r.text);
    if (entries.empty()) {
      token.lemma = r.text;
      token.fvl = {{"au", "au"}, {"TPASS", "auf"}};
      token.provenance = Provenance::kUnknown;
    } else {
      token.lemma = entries.front()->lemma;
      for (const auto *e : entries) {
        token.fvl.insert(token.fvl.end(), e->fvl.begin(), e->fvl.end());
      }
      token.provenance = Provenance::kLexical;
    }
    out.push_back(std::move(token));
  }
  return out;
}

std::vector<Sentence> Segment(std::vector<Token> tokens) {
  std::vector<Sentence> out;
  Sentence current;
  auto close = [&] {
    if (current.tokens.empty()) return;
    size_t base = current.tokens.front().words.begin;
    for (auto &t : current.tokens) {
      t.words.begin -= base;
      t.words.end -= base;
    }
    current.source = {current.tokens.front().span.begin,
                      current.tokens.back().span.end};
    out.push_back(std::move(current));
    current = Sentence{};
  };
  for (auto &t : tokens) {
    bool final = std::find(kSentenceFinal.begin(), kSentenceFinal.end(),
                           t.surface) != kSentenceFinal.end();
    current.tokens.push_back(std::move(t));
    if (final) close();
  }
  close();
  return out;
}

namespace {

void AppendQuoted(std::string &out, std::string_view atom) {
  out += '\'';
  for (char c : atom) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
}

}  // namespace

std::string RenderAnalysis(std::span<const Token> tokens) {
  std::string out;
  for (const auto &t : tokens) {
    AppendQuoted(out, t.surface);
    out += ". \n[ ";
    AppendQuoted(out, t.lemma);
    for (const auto &fv : t.fvl) {
      out += ", ";
      AppendQuoted(out, fv.feature);
      out += ',';
      AppendQuoted(out, fv.value);
    }
    out += "]. \n\n";
  }
  return out;
}

size_t CountUnknown(std::span<const Token> tokens) {
  return static_cast<size_t>(
      std::count_if(tokens.begin(), tokens.end(), [](const Token &t) {
        return t.provenance == Provenance::kUnknown;
      }));
}

}  // namespace vchunk
