// Recomposition rules and their cyclic application.
//
// A rule maps a sequence of tokens matching its left-hand side to the tokens
// built from its right-hand side templates:
//
//   name: X[cl] Y[cl]+ Z[ov] -> X+Y+Z[vnfl]
//
// A left-hand element matches a token whose fvl carries every listed value,
// whatever the feature.  '+' after an element makes it one-or-more (greedy,
// with backtracking).  A leading '^' anchors the rule at the start of the
// sequence.  Right-hand templates copy or concatenate the surfaces and lemmas
// of bound tokens, or use a quoted literal; their fvl is always literal.
//
// Rules are grouped in phases ("@phase N" headers).  A cycle applies, left
// to right, the rules of the lowest cumulative phase prefix that fires
// anything; cycles repeat until no rule applies.

#ifndef VCHUNK_ENGINE_H_
#define VCHUNK_ENGINE_H_

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vchunk/token.h"

namespace vchunk {

struct PatternElement {
  std::string var;
  std::vector<std::string> required_values;  // empty = wildcard
  bool kleene = false;

  bool Matches(const Token &token) const;
};

struct OutputTemplate {
  // Concatenated in order; empty when `literal` is set.
  std::vector<std::string> vars;
  std::optional<std::string> literal;
  FeatureValueList fvl;
};

struct Rule {
  std::string name;
  bool anchored = false;
  std::vector<PatternElement> lhs;
  std::vector<OutputTemplate> rhs;
  int phase = 1;
  int line = 0;
};

class RuleSyntaxError : public std::runtime_error {
 public:
  RuleSyntaxError(const std::string &what, int line)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class RuleSet {
 public:
  RuleSet() = default;
  // Validates every rule (unbound variables, duplicate names, self loops)
  // and orders the rules by phase, keeping the given order within a phase.
  // Throws RuleSyntaxError.
  explicit RuleSet(std::vector<Rule> rules);

  const std::vector<Rule> &rules() const { return rules_; }
  size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }

  // Distinct phases in ascending order.
  std::vector<int> phases() const;
  // Rules with phase <= `phase` (a prefix of rules()).
  std::span<const Rule> UpToPhase(int phase) const;
  const Rule *Find(std::string_view name) const;

 private:
  std::vector<Rule> rules_;
};

RuleSet ParseRules(std::istream &in);
RuleSet ParseRulesFromString(std::string_view text);

// Parses a single rule line ("name: LHS -> RHS").
Rule ParseRule(std::string_view line, int line_no = 0, int phase = 1);

// Half-open range of token indices bound to a variable.
struct Binding {
  std::string var;
  size_t begin = 0;
  size_t end = 0;
};

struct Match {
  const Rule *rule = nullptr;
  size_t length = 0;
  std::vector<Binding> bindings;
};

// First rule (in order) whose lhs matches starting exactly at pos.
// Requires pos < tokens.size().
std::optional<Match> MatchAt(std::span<const Rule> rules,
                             std::span<const Token> tokens, size_t pos);
std::optional<Match> MatchAt(const RuleSet &rules,
                             std::span<const Token> tokens, size_t pos);

// Builds the output tokens for a match at pos.
std::vector<Token> Instantiate(const Match &match,
                               std::span<const Token> tokens, size_t pos);

struct Firing {
  int cycle = 0;
  std::string rule;
  int phase = 0;
  WordRange words;
};

struct PassResult {
  std::vector<Token> tokens;
  bool fired = false;
  std::vector<Firing> firings;  // cycle left at 0
};

// One left-to-right pass; scanning resumes after the inserted tokens.
PassResult ApplyOnce(std::span<const Rule> rules,
                     std::span<const Token> tokens);
PassResult ApplyOnce(const RuleSet &rules, std::span<const Token> tokens);

class CycleBudgetExceeded : public std::runtime_error {
 public:
  CycleBudgetExceeded(const std::string &rule, int cycles);
  const std::string &rule() const { return rule_; }

 private:
  std::string rule_;
};

constexpr int kDefaultMaxCycles = 100;

using FiringObserver = std::function<void(const Firing &)>;

// Repeats cycles until none fires.  Throws CycleBudgetExceeded when
// max_cycles firing cycles are followed by yet another firing cycle.
std::vector<Token> RunToFixpoint(const RuleSet &rules,
                                 std::vector<Token> tokens,
                                 int max_cycles = kDefaultMaxCycles,
                                 const FiringObserver &observer = {});

}  // namespace vchunk

#endif  // VCHUNK_ENGINE_H_
