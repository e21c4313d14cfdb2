// The shipped French verbal chunk grammar and the chunking pipeline.

#ifndef VCHUNK_GRAMMAR_H_
#define VCHUNK_GRAMMAR_H_

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vchunk/chunk.h"
#include "vchunk/engine.h"
#include "vchunk/lexicon.h"
#include "vchunk/morph.h"

namespace vchunk {

// Chunks produced in this phase or later carry the -II suffix.
constexpr int kHeuristicPhase = 4;

struct Grammar {
  Lexicon lexicon;
  RuleSet rules;
};

// Contents of the shipped fr_seed.lex and fr_chunks.rules.
std::string_view DefaultLexiconText();
std::string_view DefaultRulesText();

// Loads the shipped data.  Throws if either file is invalid.
Grammar BuildDefaultGrammar();

struct ChunkedSentence {
  Sentence sentence;            // analyser output
  std::vector<Token> result;    // tokens after the rules reach a fixpoint
  std::vector<ChunkAnnotation> chunks;
};

// Chunk annotations for every result token carrying vnfl or vninf.
std::vector<ChunkAnnotation> ExtractChunks(std::span<const Token> result,
                                           size_t sentence_index);

using TraceSink = std::function<void(size_t sentence, const Firing &)>;

class Chunker {
 public:
  explicit Chunker(Grammar grammar, int max_cycles = kDefaultMaxCycles);

  // tokenize -> analyze -> segment -> rules to fixpoint -> extract.
  // Propagates CycleBudgetExceeded.
  std::vector<ChunkedSentence> Chunk(std::string_view text,
                                     const TraceSink &trace = {}) const;

  const Grammar &grammar() const { return grammar_; }

 private:
  Grammar grammar_;
  Tokenizer tokenizer_;
  int max_cycles_;
};

// Chunks text with the shipped grammar.
std::vector<ChunkedSentence> ChunkText(std::string_view text);

// One line per sentence: result tokens separated by spaces, each chunk
// written as [surface|label].
std::string RenderChunks(std::span<const ChunkedSentence> sentences);

}  // namespace vchunk

#endif  // VCHUNK_GRAMMAR_H_
