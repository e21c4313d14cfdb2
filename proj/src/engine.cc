#include "vchunk/engine.h"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

namespace vchunk {

bool PatternElement::Matches(const Token &token) const {
  for (const auto &v : required_values) {
    if (!token.Has(v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool IsVarStart(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool IsVarChar(char c) { return IsVarStart(c) || (c >= '0' && c <= '9'); }

bool IsBlank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

class RuleParser {
 public:
  RuleParser(std::string_view text, int line) : text_(text), line_(line) {}

  Rule Parse(int phase) {
    Rule rule;
    rule.phase = phase;
    rule.line = line_;

    size_t colon = text_.find(':');
    if (colon == std::string_view::npos) Fail("expected 'name:'");
    rule.name = Trim(text_.substr(0, colon));
    if (rule.name.empty()) Fail("empty rule name");
    for (char c : rule.name) {
      if (!IsVarChar(c) && c != '-' && c != '.') {
        Fail("invalid character in rule name '" + rule.name + "'");
      }
    }
    pos_ = colon + 1;

    SkipBlanks();
    if (Peek() == '^') {
      rule.anchored = true;
      ++pos_;
    }
    while (true) {
      SkipBlanks();
      if (AtArrow()) break;
      if (AtEnd()) Fail("missing '->'");
      rule.lhs.push_back(ParsePatternElement());
    }
    SkipArrow();
    while (true) {
      SkipBlanks();
      if (AtEnd()) break;
      rule.rhs.push_back(ParseTemplate());
    }
    if (rule.lhs.empty()) Fail("empty left-hand side");
    if (rule.rhs.empty()) Fail("empty right-hand side");
    return rule;
  }

 private:
  [[noreturn]] void Fail(const std::string &msg) const {
    throw RuleSyntaxError("line " + std::to_string(line_) + ": " + msg, line_);
  }

  static std::string Trim(std::string_view s) {
    while (!s.empty() && IsBlank(s.front())) s.remove_prefix(1);
    while (!s.empty() && IsBlank(s.back())) s.remove_suffix(1);
    return std::string(s);
  }

  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return AtEnd() ? '\0' : text_[pos_]; }
  void SkipBlanks() {
    while (!AtEnd() && IsBlank(text_[pos_])) ++pos_;
  }
  bool AtArrow() const {
    return text_.substr(pos_, 2) == "->" || text_.substr(pos_, 3) == "-->";
  }
  void SkipArrow() { pos_ += text_.substr(pos_, 3) == "-->" ? 3 : 2; }

  std::string ParseVar() {
    if (!IsVarStart(Peek())) {
      Fail("expected variable at column " + std::to_string(pos_ + 1));
    }
    size_t start = pos_;
    while (!AtEnd() && IsVarChar(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // Parses "[a,b,F=c]" into raw items.
  std::vector<std::string> ParseValueList() {
    if (Peek() != '[') Fail("expected '['");
    ++pos_;
    size_t close = text_.find(']', pos_);
    if (close == std::string_view::npos) Fail("missing ']'");
    std::string_view body = text_.substr(pos_, close - pos_);
    pos_ = close + 1;
    std::vector<std::string> items;
    std::string trimmed = Trim(body);
    if (trimmed.empty()) return items;
    std::string_view rest = trimmed;
    while (true) {
      size_t comma = rest.find(',');
      std::string item = Trim(rest.substr(0, comma));
      if (item.empty()) Fail("empty value in '[" + trimmed + "]'");
      items.push_back(item);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return items;
  }

  PatternElement ParsePatternElement() {
    PatternElement element;
    element.var = ParseVar();
    for (auto &v : ParseValueList()) {
      if (!IsValidIdentifier(v)) Fail("invalid pattern value '" + v + "'");
      element.required_values.push_back(std::move(v));
    }
    if (Peek() == '+') {
      element.kleene = true;
      ++pos_;
    }
    return element;
  }

  OutputTemplate ParseTemplate() {
    OutputTemplate tmpl;
    if (Peek() == '"') {
      ++pos_;
      std::string literal;
      while (true) {
        if (AtEnd()) Fail("unterminated string literal");
        char c = text_[pos_++];
        if (c == '"') break;
        if (c == '\\' && !AtEnd()) c = text_[pos_++];
        literal += c;
      }
      if (literal.empty()) Fail("empty string literal");
      tmpl.literal = std::move(literal);
    } else {
      tmpl.vars.push_back(ParseVar());
      while (Peek() == '+') {
        ++pos_;
        tmpl.vars.push_back(ParseVar());
      }
    }
    for (auto &item : ParseValueList()) {
      size_t eq = item.find('=');
      FeatureValue fv;
      if (eq == std::string::npos) {
        fv = {"CAT", item};
      } else {
        fv = {item.substr(0, eq), item.substr(eq + 1)};
      }
      if (!IsValidIdentifier(fv.feature) || !IsValidIdentifier(fv.value)) {
        Fail("invalid output value '" + item + "'");
      }
      tmpl.fvl.push_back(std::move(fv));
    }
    return tmpl;
  }

  std::string_view text_;
  int line_;
  size_t pos_ = 0;
};

// True if applying the rule reproduces tokens that match its own lhs.
bool IsSelfLoop(const Rule &rule) {
  if (rule.rhs.size() != rule.lhs.size()) return false;
  for (size_t i = 0; i < rule.lhs.size(); ++i) {
    const auto &tmpl = rule.rhs[i];
    const auto &element = rule.lhs[i];
    if (tmpl.literal || tmpl.vars.size() != 1 || tmpl.vars[0] != element.var) {
      return false;
    }
    for (const auto &v : element.required_values) {
      if (!HasValue(tmpl.fvl, v)) return false;
    }
  }
  return true;
}

void CheckRule(const Rule &rule) {
  auto fail = [&](const std::string &msg) {
    throw RuleSyntaxError("line " + std::to_string(rule.line) + ": rule '" +
                              rule.name + "': " + msg,
                          rule.line);
  };
  if (rule.lhs.empty()) fail("empty left-hand side");
  if (rule.rhs.empty()) fail("empty right-hand side");
  std::set<std::string> bound;
  for (const auto &e : rule.lhs) {
    if (!bound.insert(e.var).second) fail("duplicate variable " + e.var);
  }
  for (const auto &t : rule.rhs) {
    for (const auto &v : t.vars) {
      if (!bound.count(v)) fail("unbound variable " + v);
    }
    if (!t.literal && t.vars.empty()) fail("empty template");
  }
  if (IsSelfLoop(rule)) fail("right-hand side regenerates its own match");
}

}  // namespace

Rule ParseRule(std::string_view line, int line_no, int phase) {
  Rule rule = RuleParser(line, line_no).Parse(phase);
  CheckRule(rule);
  return rule;
}

RuleSet::RuleSet(std::vector<Rule> rules) : rules_(std::move(rules)) {
  std::set<std::string> names;
  for (const auto &r : rules_) {
    CheckRule(r);
    if (!names.insert(r.name).second) {
      throw RuleSyntaxError("line " + std::to_string(r.line) +
                                ": duplicate rule name '" + r.name + "'",
                            r.line);
    }
  }
  std::stable_sort(rules_.begin(), rules_.end(),
                   [](const Rule &a, const Rule &b) { return a.phase < b.phase; });
}

std::vector<int> RuleSet::phases() const {
  std::vector<int> out;
  for (const auto &r : rules_) {
    if (out.empty() || out.back() != r.phase) out.push_back(r.phase);
  }
  return out;
}

std::span<const Rule> RuleSet::UpToPhase(int phase) const {
  auto end = std::upper_bound(
      rules_.begin(), rules_.end(), phase,
      [](int p, const Rule &r) { return p < r.phase; });
  return {rules_.data(), static_cast<size_t>(end - rules_.begin())};
}

const Rule *RuleSet::Find(std::string_view name) const {
  for (const auto &r : rules_) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

RuleSet ParseRules(std::istream &in) {
  std::vector<Rule> rules;
  std::string raw;
  int line_no = 0;
  int phase = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    while (!line.empty() && IsBlank(line.front())) line.remove_prefix(1);
    while (!line.empty() && IsBlank(line.back())) line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '@') {
      std::istringstream header{std::string(line.substr(1))};
      std::string keyword;
      header >> keyword;
      if (keyword != "phase" || !(header >> phase)) {
        throw RuleSyntaxError("line " + std::to_string(line_no) +
                                  ": expected '@phase N'",
                              line_no);
      }
      std::string extra;
      if (header >> extra) {
        throw RuleSyntaxError("line " + std::to_string(line_no) +
                                  ": trailing text after phase number",
                              line_no);
      }
      continue;
    }
    rules.push_back(RuleParser(line, line_no).Parse(phase));
  }
  return RuleSet(std::move(rules));
}

RuleSet ParseRulesFromString(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseRules(in);
}

// ---------------------------------------------------------------------------
// Matching

namespace {

bool MatchFrom(const std::vector<PatternElement> &lhs, size_t elem,
               std::span<const Token> tokens, size_t pos,
               std::vector<Binding> &bindings, size_t &end) {
  if (elem == lhs.size()) {
    end = pos;
    return true;
  }
  const auto &e = lhs[elem];
  size_t available = 0;
  if (e.kleene) {
    while (pos + available < tokens.size() &&
           e.Matches(tokens[pos + available])) {
      ++available;
    }
  } else if (pos < tokens.size() && e.Matches(tokens[pos])) {
    available = 1;
  }
  for (size_t len = available; len >= 1; --len) {
    bindings.push_back({e.var, pos, pos + len});
    if (MatchFrom(lhs, elem + 1, tokens, pos + len, bindings, end)) {
      return true;
    }
    bindings.pop_back();
  }
  return false;
}

WordRange UnionWords(std::span<const Token> tokens) {
  WordRange r = tokens.front().words;
  for (const auto &t : tokens) {
    r.begin = std::min(r.begin, t.words.begin);
    r.end = std::max(r.end, t.words.end);
  }
  return r;
}

CharSpan UnionSpan(std::span<const Token> tokens) {
  CharSpan s = tokens.front().span;
  for (const auto &t : tokens) {
    s.begin = std::min(s.begin, t.span.begin);
    s.end = std::max(s.end, t.span.end);
  }
  return s;
}

}  // namespace

std::optional<Match> MatchAt(std::span<const Rule> rules,
                             std::span<const Token> tokens, size_t pos) {
  if (pos >= tokens.size()) {
    throw std::out_of_range("MatchAt: position " + std::to_string(pos) +
                            " outside " + std::to_string(tokens.size()) +
                            " tokens");
  }
  for (const auto &rule : rules) {
    if (rule.anchored && pos != 0) continue;
    std::vector<Binding> bindings;
    size_t end = pos;
    if (MatchFrom(rule.lhs, 0, tokens, pos, bindings, end)) {
      for (auto &b : bindings) {
        b.begin -= pos;
        b.end -= pos;
      }
      return Match{&rule, end - pos, std::move(bindings)};
    }
  }
  return std::nullopt;
}

std::optional<Match> MatchAt(const RuleSet &rules,
                             std::span<const Token> tokens, size_t pos) {
  return MatchAt(std::span<const Rule>(rules.rules()), tokens, pos);
}

std::vector<Token> Instantiate(const Match &match,
                               std::span<const Token> tokens, size_t pos) {
  const Rule &rule = *match.rule;
  auto matched = tokens.subspan(pos, match.length);
  auto bound = [&](const std::string &var) {
    for (const auto &b : match.bindings) {
      if (b.var == var) return matched.subspan(b.begin, b.end - b.begin);
    }
    throw std::logic_error("unbound variable " + var);
  };
  auto kleene = [&](const std::string &var) {
    for (const auto &e : rule.lhs) {
      if (e.var == var) return e.kleene;
    }
    return false;
  };

  std::vector<Token> out;
  for (const auto &tmpl : rule.rhs) {
    if (!tmpl.literal && tmpl.vars.size() == 1 && !kleene(tmpl.vars[0])) {
      const Token &src = bound(tmpl.vars[0]).front();
      if (src.fvl == tmpl.fvl) {
        out.push_back(src);
        continue;
      }
    }
    Token t;
    t.fvl = tmpl.fvl;
    t.provenance = Provenance::kRecomposed;
    t.phase = rule.phase;
    std::vector<Token> sources;
    if (tmpl.literal) {
      t.surface = t.lemma = *tmpl.literal;
      sources.assign(matched.begin(), matched.end());
    } else {
      for (const auto &var : tmpl.vars) {
        for (const auto &src : bound(var)) {
          t.surface = JoinPieces(t.surface, src.surface);
          t.lemma = JoinPieces(t.lemma, src.lemma);
          sources.push_back(src);
        }
      }
    }
    t.span = UnionSpan(sources);
    t.words = UnionWords(sources);
    for (const auto &src : sources) t.phase = std::max(t.phase, src.phase);
    out.push_back(std::move(t));
  }
  return out;
}

PassResult ApplyOnce(std::span<const Rule> rules,
                     std::span<const Token> tokens) {
  PassResult result;
  size_t pos = 0;
  while (pos < tokens.size()) {
    auto match = MatchAt(rules, tokens, pos);
    if (!match) {
      result.tokens.push_back(tokens[pos]);
      ++pos;
      continue;
    }
    auto produced = Instantiate(*match, tokens, pos);
    result.fired = true;
    result.firings.push_back({0, match->rule->name, match->rule->phase,
                              UnionWords(tokens.subspan(pos, match->length))});
    for (auto &t : produced) result.tokens.push_back(std::move(t));
    pos += match->length;
  }
  return result;
}

PassResult ApplyOnce(const RuleSet &rules, std::span<const Token> tokens) {
  return ApplyOnce(std::span<const Rule>(rules.rules()), tokens);
}

CycleBudgetExceeded::CycleBudgetExceeded(const std::string &rule, int cycles)
    : std::runtime_error("rule set did not reach a fixpoint within " +
                         std::to_string(cycles) +
                         " cycles; last rule fired: " + rule),
      rule_(rule) {}

std::vector<Token> RunToFixpoint(const RuleSet &rules,
                                 std::vector<Token> tokens, int max_cycles,
                                 const FiringObserver &observer) {
  if (max_cycles < 1) {
    throw std::invalid_argument("max_cycles must be at least 1");
  }
  const std::vector<int> phases = rules.phases();
  for (int cycle = 1;; ++cycle) {
    bool fired = false;
    for (int phase : phases) {
      PassResult pass = ApplyOnce(rules.UpToPhase(phase), tokens);
      if (!pass.fired) continue;
      if (cycle > max_cycles) {
        throw CycleBudgetExceeded(pass.firings.back().rule, max_cycles);
      }
      if (observer) {
        for (auto &f : pass.firings) {
          f.cycle = cycle;
          observer(f);
        }
      }
      tokens = std::move(pass.tokens);
      fired = true;
      break;
    }
    if (!fired) return tokens;
  }
}

}  // namespace vchunk
