// vchunk: French verbal chunker command-line tool.

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "vchunk/engine.h"
#include "vchunk/eval.h"
#include "vchunk/grammar.h"
#include "vchunk/lexicon.h"
#include "vchunk/morph.h"

namespace {

constexpr int kExitData = 1;
constexpr int kExitIo = 2;

// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

std::string ReadStdin() {
  std::ostringstream ss;
  ss << std::cin.rdbuf();
  return ss.str();
}

// Writes via a temporary file and a rename so readers never see a partial
// file.  An empty path means stdout.
void WriteOutput(const std::string &path, const std::string &data) {
  if (path.empty()) {
    std::cout << data << std::flush;
    return;
  }
  std::filesystem::path target(path);
  std::filesystem::path tmp =
      target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << data;
    out.close();
    if (!out) throw IoError("cannot write " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write " + path);
  }
}

// Input texts in argument order; stdin when there are no paths.
std::vector<std::string> ReadInputs(const std::vector<std::string> &paths) {
  std::vector<std::string> texts;
  if (paths.empty()) {
    texts.push_back(ReadStdin());
    return texts;
  }
  for (const auto &p : paths) texts.push_back(ReadFile(p));
  return texts;
}

vchunk::Lexicon LoadLexiconArg(const std::string &path) {
  if (path.empty()) {
    return vchunk::LoadLexiconFromString(vchunk::DefaultLexiconText());
  }
  return vchunk::LoadLexiconFromString(ReadFile(path));
}

vchunk::Grammar LoadGrammar(const std::string &lexicon_path,
                            const std::string &rules_path) {
  vchunk::Grammar g{LoadLexiconArg(lexicon_path), vchunk::RuleSet{}};
  g.rules = vchunk::ParseRulesFromString(
      rules_path.empty() ? std::string(vchunk::DefaultRulesText())
                         : ReadFile(rules_path));
  return g;
}

struct Options {
  std::string lexicon;
  std::string rules;
  std::string output;
  std::string gold;
  std::string sys;
  std::string exclusions;
  std::string format = "text";
  int max_cycles = vchunk::kDefaultMaxCycles;
  bool trace = false;
  std::vector<std::string> inputs;
};

int CmdLexcheck(const Options &opt) {
  std::string text = opt.lexicon.empty()
                         ? std::string(vchunk::DefaultLexiconText())
                         : ReadFile(opt.lexicon);
  std::istringstream in(text);
  vchunk::Lexicon lex = vchunk::ReadLexicon(in);
  auto diagnostics = vchunk::ValidateLexicon(lex);
  for (const auto &d : diagnostics) {
    std::cerr << "entry " << d.entry_index + 1 << " '" << d.surface
              << "': " << d.message << "\n";
  }
  if (!diagnostics.empty()) {
    std::cerr << diagnostics.size() << " problem(s) in "
              << lex.size() << " entries\n";
    return kExitData;
  }
  std::cerr << lex.size() << " entries, no problems\n";
  return 0;
}

int CmdAnalyze(const Options &opt) {
  vchunk::Lexicon lex = LoadLexiconArg(opt.lexicon);
  vchunk::Tokenizer tokenizer(lex);
  std::string out;
  for (const auto &text : ReadInputs(opt.inputs)) {
    auto tokens = vchunk::Analyze(tokenizer.Tokenize(text), lex);
    out += vchunk::RenderAnalysis(tokens);
  }
  WriteOutput(opt.output, out);
  return 0;
}

struct ChunkJob {
  std::string output;
  std::string trace;
};

int CmdChunk(const Options &opt) {
  const vchunk::Chunker chunker(LoadGrammar(opt.lexicon, opt.rules),
                                opt.max_cycles);
  auto texts = ReadInputs(opt.inputs);
  std::vector<std::future<ChunkJob>> jobs;
  for (const auto &text : texts) {
    jobs.push_back(std::async(std::launch::async, [&chunker, &text, &opt] {
      ChunkJob job;
      vchunk::TraceSink sink;
      if (opt.trace) {
        sink = [&job](size_t sent, const vchunk::Firing &f) {
          job.trace += "cycle=" + std::to_string(f.cycle) +
                       " rule=" + f.rule + " sent=" + std::to_string(sent) +
                       " span=" + std::to_string(f.words.begin) + ".." +
                       std::to_string(f.words.end) + "\n";
        };
      }
      job.output = vchunk::RenderChunks(chunker.Chunk(text, sink));
      return job;
    }));
  }
  std::string out;
  for (auto &j : jobs) {
    ChunkJob job = j.get();
    std::cerr << job.trace;
    out += job.output;
  }
  WriteOutput(opt.output, out);
  return 0;
}

int CmdEval(const Options &opt) {
  auto gold = vchunk::ParseGold(ReadFile(opt.gold));
  auto sys = vchunk::ParseSystem(ReadFile(opt.sys));
  if (gold.sentences.size() != sys.sentences.size()) {
    std::cerr << "sentence count mismatch: gold has " << gold.sentences.size()
              << ", system has " << sys.sentences.size() << "\n";
    return kExitData;
  }
  std::vector<vchunk::Exclusion> exclusions;
  if (!opt.exclusions.empty()) {
    std::istringstream in(ReadFile(opt.exclusions));
    exclusions = vchunk::ParseExclusions(in);
  }
  auto report = vchunk::Score(gold.chunks, sys.chunks, exclusions);
  WriteOutput(opt.output, opt.format == "kv" ? vchunk::RenderKeyValues(report)
                                             : vchunk::RenderReport(report));
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"French verbal chunker"};
  app.require_subcommand(1);
  Options opt;

  auto *lexcheck = app.add_subcommand("lexcheck", "validate a lexicon");
  lexcheck->add_option("--lexicon,lexicon", opt.lexicon,
                       "lexicon file (default: built-in)");

  auto *analyze =
      app.add_subcommand("analyze", "tokenize and analyze text");
  analyze->add_option("--lexicon", opt.lexicon,
                      "lexicon file (default: built-in)");
  analyze->add_option("--output", opt.output, "output file (default: stdout)");
  analyze->add_option("inputs", opt.inputs, "input files (default: stdin)");

  auto *chunk = app.add_subcommand("chunk", "mark verbal chunks");
  chunk->add_option("--lexicon", opt.lexicon,
                    "lexicon file (default: built-in)");
  chunk->add_option("--rules", opt.rules, "rule file (default: built-in)");
  chunk->add_option("--max-cycles", opt.max_cycles, "rewrite cycle budget")
      ->check(CLI::PositiveNumber);
  chunk->add_flag("--trace", opt.trace, "log rule firings to stderr");
  chunk->add_option("--output", opt.output, "output file (default: stdout)");
  chunk->add_option("inputs", opt.inputs, "input files (default: stdin)");

  auto *eval = app.add_subcommand("eval", "score chunks against a gold file");
  eval->add_option("--gold", opt.gold, "gold bracketed file")->required();
  eval->add_option("--sys", opt.sys, "system bracketed file")->required();
  eval->add_option("--exclusions", opt.exclusions,
                   "error expressions left out of SL");
  eval->add_option("--format", opt.format, "text or kv")
      ->check(CLI::IsMember({"text", "kv"}));
  eval->add_option("--output", opt.output, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitIo;
  }

  try {
    if (*lexcheck) return CmdLexcheck(opt);
    if (*analyze) return CmdAnalyze(opt);
    if (*chunk) return CmdChunk(opt);
    if (*eval) return CmdEval(opt);
  } catch (const IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const vchunk::CycleBudgetExceeded &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitIo;
}
