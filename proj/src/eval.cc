#include "vchunk/eval.h"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "vchunk/morph.h"

namespace vchunk {
namespace {

int64_t FloorDiv(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool Overlaps(const WordRange &a, const WordRange &b) {
  return a.begin < b.end && b.begin < a.end;
}

std::string RangeText(const WordRange &r) {
  return std::to_string(r.begin) + ".." + std::to_string(r.end);
}

std::vector<std::string_view> NonBlankLines(std::string_view text,
                                            std::vector<size_t> *line_numbers) {
  std::vector<std::string_view> lines;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (line.find_first_not_of(" \t") != std::string_view::npos) {
      lines.push_back(line);
      line_numbers->push_back(line_no);
    }
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  return lines;
}

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  size_t Find(size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Unite(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<size_t> parent_;
};

std::string Pad(std::string s, size_t width, bool left_align = false) {
  if (s.size() >= width) return s;
  std::string fill(width - s.size(), ' ');
  return left_align ? s + fill : fill + s;
}

}  // namespace

BracketedLine ParseBracketedLine(std::string_view line, size_t line_no) {
  BracketedLine out;
  size_t word_count = 0;
  auto append = [&](std::string_view segment) {
    word_count += PlainTokenize(segment).size();
    bool space = !out.text.empty();
    for (char c : segment) {
      if (c == ' ' || c == '\t') {
        space = !out.text.empty();
        continue;
      }
      if (space) out.text += ' ';
      space = false;
      out.text += c;
    }
  };
  size_t pos = 0;
  while (pos < line.size()) {
    size_t open = line.find_first_of("[]", pos);
    if (open == std::string_view::npos) {
      append(line.substr(pos));
      break;
    }
    if (line[open] == ']') {
      throw BracketSyntaxError("unbalanced ']'", line_no);
    }
    append(line.substr(pos, open - pos));
    size_t close = line.find_first_of("[]", open + 1);
    if (close == std::string_view::npos) {
      throw BracketSyntaxError("unbalanced '['", line_no);
    }
    if (line[close] == '[') {
      throw BracketSyntaxError("nested '['", line_no);
    }
    std::string_view inner = line.substr(open + 1, close - open - 1);
    size_t bar = inner.rfind('|');
    if (bar == std::string_view::npos) {
      throw BracketSyntaxError("chunk without label", line_no);
    }
    std::string_view content = inner.substr(0, bar);
    std::string_view label = inner.substr(bar + 1);
    size_t n = PlainTokenize(content).size();
    if (n == 0) throw BracketSyntaxError("empty chunk", line_no);
    BracketedChunk chunk;
    chunk.words = {word_count, word_count + n};
    chunk.label = std::string(label);
    size_t b = content.find_first_not_of(" \t");
    size_t e = content.find_last_not_of(" \t");
    chunk.surface = std::string(content.substr(b, e - b + 1));
    out.chunks.push_back(std::move(chunk));
    append(content);
    pos = close + 1;
  }
  return out;
}

GoldCorpus ParseGold(std::string_view text) {
  GoldCorpus corpus;
  std::vector<size_t> numbers;
  auto lines = NonBlankLines(text, &numbers);
  for (size_t i = 0; i < lines.size(); ++i) {
    auto parsed = ParseBracketedLine(lines[i], numbers[i]);
    for (auto &c : parsed.chunks) {
      auto label = ParseCoarseLabel(c.label);
      if (!label) {
        throw BracketSyntaxError("unknown gold label '" + c.label + "'",
                                 numbers[i]);
      }
      if (!corpus.chunks.empty() &&
          corpus.chunks.back().sentence_index == i &&
          Overlaps(corpus.chunks.back().words, c.words)) {
        throw BracketSyntaxError("overlapping gold chunks", numbers[i]);
      }
      corpus.chunks.push_back({i, c.words, *label, std::move(c.surface)});
    }
    corpus.sentences.push_back(std::move(parsed.text));
  }
  return corpus;
}

SystemCorpus ParseSystem(std::string_view text) {
  SystemCorpus corpus;
  std::vector<size_t> numbers;
  auto lines = NonBlankLines(text, &numbers);
  for (size_t i = 0; i < lines.size(); ++i) {
    auto parsed = ParseBracketedLine(lines[i], numbers[i]);
    for (auto &c : parsed.chunks) {
      auto label = ParseFineLabel(c.label);
      if (!label) {
        throw BracketSyntaxError("unknown system label '" + c.label + "'",
                                 numbers[i]);
      }
      corpus.chunks.push_back({i, c.words, *label, std::move(c.surface)});
    }
    corpus.sentences.push_back(std::move(parsed.text));
  }
  return corpus;
}

std::optional<int64_t> PercentHundredths(int64_t num, int64_t den) {
  if (den == 0) return std::nullopt;
  return FloorDiv(20000 * num + den, 2 * den);
}

std::optional<int64_t> SlHundredths(size_t error_expressions,
                                    size_t possible) {
  return PercentHundredths(static_cast<int64_t>(possible) -
                               static_cast<int64_t>(error_expressions),
                           static_cast<int64_t>(possible));
}

std::string FormatHundredths(std::optional<int64_t> hundredths) {
  if (!hundredths) return "n/a";
  int64_t v = *hundredths;
  std::string sign = v < 0 ? "-" : "";
  if (v < 0) v = -v;
  std::string frac = std::to_string(v % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return sign + std::to_string(v / 100) + "." + frac;
}

std::string ErrorExpression::provenance() const {
  bool structural = false;
  bool heuristic = false;
  for (const auto &c : sys_members) {
    bool h = c.label == FineLabel::kVnflII || c.label == FineLabel::kVninfII;
    (h ? heuristic : structural) = true;
  }
  if (structural && heuristic) return "I+II";
  if (structural) return "I";
  if (heuristic) return "II";
  return "-";
}

std::vector<Exclusion> ParseExclusions(std::istream &in) {
  std::vector<Exclusion> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream all(line);
    long long sent = -1, begin = -1, end = -1;
    std::string extra;
    if (!(all >> sent >> begin >> end) || (all >> extra) || sent < 0 ||
        begin < 0 || end <= begin) {
      throw std::invalid_argument("exclusions line " +
                                  std::to_string(line_no) +
                                  ": expected SENT START END");
    }
    out.push_back({static_cast<size_t>(sent),
                   {static_cast<size_t>(begin), static_cast<size_t>(end)}});
  }
  return out;
}

size_t EvalReport::sl_error_expressions() const {
  return std::count_if(error_expressions.begin(), error_expressions.end(),
                       [](const ErrorExpression &e) { return !e.excluded; });
}

std::optional<double> EvalReport::ee() const {
  if (all.possible == 0) return std::nullopt;
  return static_cast<double>(sl_error_expressions()) /
         static_cast<double>(all.possible);
}

std::optional<int64_t> EvalReport::sl() const {
  return SlHundredths(sl_error_expressions(), all.possible);
}

EvalReport Score(std::span<const GoldChunk> gold,
                 std::span<const ChunkAnnotation> sys,
                 std::span<const Exclusion> exclusions) {
  EvalReport report;
  using Key = std::tuple<size_t, size_t, size_t, CoarseLabel>;
  std::map<Key, std::vector<size_t>> unused_gold;
  for (size_t i = 0; i < gold.size(); ++i) {
    const auto &g = gold[i];
    ++report.by_coarse[static_cast<size_t>(g.label)].possible;
    unused_gold[{g.sentence_index, g.words.begin, g.words.end, g.label}]
        .push_back(i);
  }
  std::vector<bool> gold_matched(gold.size(), false);
  std::vector<bool> sys_matched(sys.size(), false);
  for (size_t j = 0; j < sys.size(); ++j) {
    const auto &s = sys[j];
    CoarseLabel coarse = CoarseOf(s.label);
    auto &counts = report.by_coarse[static_cast<size_t>(coarse)];
    auto &fine = report.by_fine[static_cast<size_t>(s.label)];
    ++counts.actual;
    ++fine.actual;
    auto it = unused_gold.find(
        {s.sentence_index, s.words.begin, s.words.end, coarse});
    if (it != unused_gold.end() && !it->second.empty()) {
      gold_matched[it->second.back()] = true;
      it->second.pop_back();
      sys_matched[j] = true;
      ++counts.correct;
      ++fine.correct;
    }
  }
  for (const auto &c : report.by_coarse) {
    report.all.possible += c.possible;
    report.all.actual += c.actual;
    report.all.correct += c.correct;
  }

  // Nodes: unmatched gold first, then unmatched system chunks.
  std::vector<size_t> gold_nodes, sys_nodes;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (!gold_matched[i]) gold_nodes.push_back(i);
  }
  for (size_t j = 0; j < sys.size(); ++j) {
    if (!sys_matched[j]) sys_nodes.push_back(j);
  }
  UnionFind uf(gold_nodes.size() + sys_nodes.size());
  std::map<size_t, std::vector<size_t>> sys_by_sentence;
  for (size_t b = 0; b < sys_nodes.size(); ++b) {
    sys_by_sentence[sys[sys_nodes[b]].sentence_index].push_back(b);
  }
  for (size_t a = 0; a < gold_nodes.size(); ++a) {
    const auto &g = gold[gold_nodes[a]];
    auto it = sys_by_sentence.find(g.sentence_index);
    if (it == sys_by_sentence.end()) continue;
    for (size_t b : it->second) {
      if (Overlaps(g.words, sys[sys_nodes[b]].words)) {
        uf.Unite(a, gold_nodes.size() + b);
      }
    }
  }
  std::map<size_t, ErrorExpression> clusters;
  for (size_t a = 0; a < gold_nodes.size(); ++a) {
    auto &e = clusters[uf.Find(a)];
    e.sentence_index = gold[gold_nodes[a]].sentence_index;
    e.gold_members.push_back(gold[gold_nodes[a]]);
  }
  for (size_t b = 0; b < sys_nodes.size(); ++b) {
    auto &e = clusters[uf.Find(gold_nodes.size() + b)];
    e.sentence_index = sys[sys_nodes[b]].sentence_index;
    e.sys_members.push_back(sys[sys_nodes[b]]);
  }
  auto first_word = [](const ErrorExpression &e) {
    size_t w = SIZE_MAX;
    for (const auto &g : e.gold_members) w = std::min(w, g.words.begin);
    for (const auto &s : e.sys_members) w = std::min(w, s.words.begin);
    return w;
  };
  for (auto &[root, e] : clusters) {
    auto has = [&](size_t sent, const WordRange &r) {
      for (const auto &x : exclusions) {
        if (x.sentence_index == sent && x.words == r) return true;
      }
      return false;
    };
    for (const auto &g : e.gold_members) {
      e.excluded = e.excluded || has(g.sentence_index, g.words);
    }
    for (const auto &s : e.sys_members) {
      e.excluded = e.excluded || has(s.sentence_index, s.words);
    }
    report.error_expressions.push_back(std::move(e));
  }
  std::stable_sort(report.error_expressions.begin(),
                   report.error_expressions.end(),
                   [&](const ErrorExpression &x, const ErrorExpression &y) {
                     return std::pair(x.sentence_index, first_word(x)) <
                            std::pair(y.sentence_index, first_word(y));
                   });
  return report;
}

std::string RenderReport(const EvalReport &report) {
  std::ostringstream out;
  out << Pad("", 12, true) << Pad("possible", 10) << Pad("actual", 10)
      << Pad("correct", 10) << Pad("recall", 10) << Pad("precision", 11)
      << "\n";
  auto row = [&](std::string_view name, const Counts &c) {
    out << Pad(std::string(name), 12, true)
        << Pad(std::to_string(c.possible), 10)
        << Pad(std::to_string(c.actual), 10)
        << Pad(std::to_string(c.correct), 10)
        << Pad(FormatHundredths(c.recall()), 10)
        << Pad(FormatHundredths(c.precision()), 11) << "\n";
  };
  row(DisplayName(CoarseLabel::kInfinitive),
      report.of(CoarseLabel::kInfinitive));
  row(DisplayName(CoarseLabel::kFinite), report.of(CoarseLabel::kFinite));
  row("all", report.all);
  out << "\n"
      << Pad("tag", 12, true) << Pad("actual", 10) << Pad("correct", 10)
      << Pad("precision", 11) << "\n";
  for (FineLabel label : kFineLabels) {
    const auto &f = report.of(label);
    out << Pad(std::string(Name(label)), 12, true)
        << Pad(std::to_string(f.actual), 10)
        << Pad(std::to_string(f.correct), 10)
        << Pad(FormatHundredths(f.precision()), 11) << "\n";
  }
  size_t raw = report.raw_error_expressions();
  size_t counted = report.sl_error_expressions();
  out << "\nerror expressions: " << raw << " raw, " << raw - counted
      << " excluded, " << counted << " counted\n";
  size_t n = 0;
  for (const auto &e : report.error_expressions) {
    out << "#" << ++n << " sent=" << e.sentence_index
        << " recall_errors=" << e.recall_errors()
        << " precision_errors=" << e.precision_errors()
        << " rules=" << e.provenance() << (e.excluded ? " excluded" : "")
        << "\n";
    for (const auto &g : e.gold_members) {
      out << "  gold " << RangeText(g.words) << " " << Name(g.label) << " ["
          << g.surface << "]\n";
    }
    for (const auto &s : e.sys_members) {
      out << "  sys  " << RangeText(s.words) << " " << Name(s.label) << " ["
          << s.surface << "]\n";
    }
  }
  char ee[32] = "n/a";
  if (auto v = report.ee()) std::snprintf(ee, sizeof ee, "%.4f", *v);
  out << "EE = " << ee << "\n";
  out << "SL = " << FormatHundredths(report.sl()) << "\n";
  return out.str();
}

std::string RenderKeyValues(const EvalReport &report) {
  std::ostringstream out;
  auto counts = [&](std::string_view key, const Counts &c) {
    out << "possible." << key << "=" << c.possible << "\n"
        << "actual." << key << "=" << c.actual << "\n"
        << "correct." << key << "=" << c.correct << "\n"
        << "recall." << key << "=" << FormatHundredths(c.recall()) << "\n"
        << "precision." << key << "=" << FormatHundredths(c.precision())
        << "\n";
  };
  counts(Name(CoarseLabel::kInfinitive), report.of(CoarseLabel::kInfinitive));
  counts(Name(CoarseLabel::kFinite), report.of(CoarseLabel::kFinite));
  counts("all", report.all);
  for (FineLabel label : kFineLabels) {
    const auto &f = report.of(label);
    out << "actual." << Name(label) << "=" << f.actual << "\n"
        << "correct." << Name(label) << "=" << f.correct << "\n"
        << "precision." << Name(label) << "="
        << FormatHundredths(f.precision()) << "\n";
  }
  size_t recall_errors = 0, precision_errors = 0;
  for (const auto &e : report.error_expressions) {
    recall_errors += e.recall_errors();
    precision_errors += e.precision_errors();
  }
  char ee[32] = "n/a";
  if (auto v = report.ee()) std::snprintf(ee, sizeof ee, "%.6f", *v);
  out << "error_expressions.raw=" << report.raw_error_expressions() << "\n"
      << "error_expressions.sl=" << report.sl_error_expressions() << "\n"
      << "recall_errors=" << recall_errors << "\n"
      << "precision_errors=" << precision_errors << "\n"
      << "ee=" << ee << "\n"
      << "sl=" << FormatHundredths(report.sl()) << "\n";
  return out.str();
}

}  // namespace vchunk
