#include "vchunk/grammar.h"

#include "builtin_data.h"

namespace vchunk {

std::string_view DefaultLexiconText() { return builtin::kSeedLexicon; }
std::string_view DefaultRulesText() { return builtin::kChunkRules; }

Grammar BuildDefaultGrammar() {
  return {LoadLexiconFromString(DefaultLexiconText()),
          ParseRulesFromString(DefaultRulesText())};
}

std::vector<ChunkAnnotation> ExtractChunks(std::span<const Token> result,
                                           size_t sentence_index) {
  std::vector<ChunkAnnotation> out;
  for (const auto &t : result) {
    bool heuristic = t.phase >= kHeuristicPhase;
    FineLabel label;
    if (t.Has("vnfl")) {
      label = heuristic ? FineLabel::kVnflII : FineLabel::kVnflI;
    } else if (t.Has("vninf")) {
      label = heuristic ? FineLabel::kVninfII : FineLabel::kVninfI;
    } else {
      continue;
    }
    out.push_back({sentence_index, t.words, label, t.surface});
  }
  return out;
}

Chunker::Chunker(Grammar grammar, int max_cycles)
    : grammar_(std::move(grammar)),
      tokenizer_(grammar_.lexicon),
      max_cycles_(max_cycles) {}

std::vector<ChunkedSentence> Chunker::Chunk(std::string_view text,
                                            const TraceSink &trace) const {
  auto raw = tokenizer_.Tokenize(text);
  auto sentences = Segment(Analyze(raw, grammar_.lexicon));
  std::vector<ChunkedSentence> out;
  out.reserve(sentences.size());
  for (size_t i = 0; i < sentences.size(); ++i) {
    FiringObserver observer;
    if (trace) {
      observer = [&trace, i](const Firing &f) { trace(i, f); };
    }
    ChunkedSentence cs;
    cs.result = RunToFixpoint(grammar_.rules, sentences[i].tokens,
                              max_cycles_, observer);
    cs.chunks = ExtractChunks(cs.result, i);
    cs.sentence = std::move(sentences[i]);
    out.push_back(std::move(cs));
  }
  return out;
}

std::vector<ChunkedSentence> ChunkText(std::string_view text) {
  static const Chunker chunker(BuildDefaultGrammar());
  return chunker.Chunk(text);
}

std::string RenderChunks(std::span<const ChunkedSentence> sentences) {
  std::string out;
  for (const auto &s : sentences) {
    size_t next_chunk = 0;
    bool first = true;
    for (const auto &t : s.result) {
      if (!first) out += ' ';
      first = false;
      if (next_chunk < s.chunks.size() &&
          s.chunks[next_chunk].words == t.words) {
        out += '[';
        out += t.surface;
        out += '|';
        out += Name(s.chunks[next_chunk].label);
        out += ']';
        ++next_chunk;
      } else {
        out += t.surface;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace vchunk
