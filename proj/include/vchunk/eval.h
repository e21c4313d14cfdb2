// Scoring of system chunk annotations against a manually chunked corpus.

#ifndef VCHUNK_EVAL_H_
#define VCHUNK_EVAL_H_

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vchunk/chunk.h"

namespace vchunk {

class BracketSyntaxError : public std::runtime_error {
 public:
  BracketSyntaxError(const std::string &what, size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

struct GoldChunk {
  size_t sentence_index = 0;
  WordRange words;
  CoarseLabel label = CoarseLabel::kFinite;
  std::string surface;

  bool operator==(const GoldChunk &other) const = default;
};

// One bracketed span as written in a corpus line.
struct BracketedChunk {
  WordRange words;
  std::string label;
  std::string surface;
};

struct BracketedLine {
  // The line without brackets and labels, whitespace collapsed.
  std::string text;
  std::vector<BracketedChunk> chunks;
};

// Parses `word [chunk words|label] word ...`.  Spans are positions in the
// lexicon-free tokenization of the unbracketed text.  Throws
// BracketSyntaxError on nested, unbalanced or unlabelled brackets.
BracketedLine ParseBracketedLine(std::string_view line, size_t line_no = 1);

struct GoldCorpus {
  std::vector<std::string> sentences;
  std::vector<GoldChunk> chunks;
};

struct SystemCorpus {
  std::vector<std::string> sentences;
  std::vector<ChunkAnnotation> chunks;
};

// One sentence per non-blank line.  Gold labels are fin/inf; system labels
// are the fine tags.  Throws BracketSyntaxError on unknown labels.
GoldCorpus ParseGold(std::string_view text);
SystemCorpus ParseSystem(std::string_view text);

// Percentage 100*num/den in hundredths, rounded half up; nullopt if den == 0.
std::optional<int64_t> PercentHundredths(int64_t num, int64_t den);

// SL = (1 - errors/possible) * 100 in hundredths; nullopt if possible == 0.
std::optional<int64_t> SlHundredths(size_t error_expressions, size_t possible);

// "98.95"; "n/a" for nullopt.
std::string FormatHundredths(std::optional<int64_t> hundredths);

struct Counts {
  size_t possible = 0;
  size_t actual = 0;
  size_t correct = 0;

  std::optional<int64_t> recall() const {
    return PercentHundredths(correct, possible);
  }
  std::optional<int64_t> precision() const {
    return PercentHundredths(correct, actual);
  }
  bool operator==(const Counts &other) const = default;
};

struct FineCounts {
  size_t actual = 0;
  size_t correct = 0;

  std::optional<int64_t> precision() const {
    return PercentHundredths(correct, actual);
  }
};

struct ErrorExpression {
  size_t sentence_index = 0;
  std::vector<GoldChunk> gold_members;
  std::vector<ChunkAnnotation> sys_members;
  bool excluded = false;  // removed from SL by an exclusion entry

  size_t recall_errors() const { return gold_members.size(); }
  size_t precision_errors() const { return sys_members.size(); }
  // "I", "II", "I+II", or "-" when there is no system member.
  std::string provenance() const;
};

// Marks every error expression having a member with this exact span.
struct Exclusion {
  size_t sentence_index = 0;
  WordRange words;

  bool operator==(const Exclusion &other) const = default;
};

// Lines `SENT START END`; `#` starts a comment.  Throws std::invalid_argument.
std::vector<Exclusion> ParseExclusions(std::istream &in);

struct EvalReport {
  std::array<Counts, 2> by_coarse;  // indexed by CoarseLabel
  Counts all;
  std::array<FineCounts, 4> by_fine;  // indexed by FineLabel
  std::vector<ErrorExpression> error_expressions;

  const Counts &of(CoarseLabel label) const {
    return by_coarse[static_cast<size_t>(label)];
  }
  const FineCounts &of(FineLabel label) const {
    return by_fine[static_cast<size_t>(label)];
  }
  size_t raw_error_expressions() const { return error_expressions.size(); }
  size_t sl_error_expressions() const;
  // EE as a ratio and SL in hundredths of a percent; nullopt if possible == 0.
  std::optional<double> ee() const;
  std::optional<int64_t> sl() const;
};

// A system chunk is correct iff a gold chunk has the same sentence, span and
// coarse label.  Unmatched chunks are clustered by span overlap.
EvalReport Score(std::span<const GoldChunk> gold,
                 std::span<const ChunkAnnotation> sys,
                 std::span<const Exclusion> exclusions = {});

std::string RenderReport(const EvalReport &report);

// `possible.fin=668` style lines for scripting.
std::string RenderKeyValues(const EvalReport &report);

}  // namespace vchunk

#endif  // VCHUNK_EVAL_H_
