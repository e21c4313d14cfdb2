#include "engine_properties.h"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "vchunk/engine.h"

namespace vchunk::testing {
namespace {

const std::vector<std::string> kValues = {"a", "b", "c", "d"};
const std::vector<std::string> kWords = {"alpha", "beta", "gamma", "delta",
                                         "eta", "theta", "kappa", "mu"};

class Gen {
 public:
  explicit Gen(uint32_t seed) : rng_(seed) {}

  size_t Uniform(size_t lo, size_t hi) {
    return std::uniform_int_distribution<size_t>(lo, hi)(rng_);
  }
  bool Chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::vector<std::string> Values(size_t lo, size_t hi) {
    std::vector<std::string> out;
    size_t n = Uniform(lo, hi);
    while (out.size() < n) {
      const auto &v = kValues[Uniform(0, kValues.size() - 1)];
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    return out;
  }

  FeatureValueList Fvl(size_t lo, size_t hi) {
    FeatureValueList fvl;
    for (auto &v : Values(lo, hi)) fvl.push_back({"CAT", v});
    return fvl;
  }

  std::vector<Token> Tokens(size_t lo, size_t hi) {
    std::vector<Token> ts;
    size_t n = Uniform(lo, hi);
    for (size_t i = 0; i < n; ++i) {
      Token t;
      t.surface = kWords[Uniform(0, kWords.size() - 1)];
      t.lemma = t.surface;
      t.fvl = Fvl(1, 2);
      t.words = {i, i + 1};
      t.span = {i * 10, i * 10 + t.surface.size()};
      ts.push_back(std::move(t));
    }
    return ts;
  }

  // `conservative`: templates use each variable exactly once, in order.
  Rule MakeRule(const std::string &name, bool kleene, bool conservative) {
    Rule r;
    r.name = name;
    r.phase = static_cast<int>(Uniform(1, 3));
    r.anchored = Chance(0.2);
    size_t n = Uniform(1, 3);
    for (size_t i = 0; i < n; ++i) {
      PatternElement e;
      e.var = "V" + std::to_string(i);
      e.required_values = Values(1, 2);
      e.kleene = kleene && Chance(0.3);
      r.lhs.push_back(std::move(e));
    }
    if (conservative) {
      OutputTemplate cur;
      for (size_t i = 0; i < n; ++i) {
        cur.vars.push_back(r.lhs[i].var);
        if (i + 1 == n || Chance(0.5)) {
          cur.fvl = Fvl(1, 2);
          r.rhs.push_back(std::move(cur));
          cur = OutputTemplate{};
        }
      }
    } else {
      size_t m = Uniform(1, n);  // never grows the sequence
      for (size_t j = 0; j < m; ++j) {
        OutputTemplate t;
        if (Chance(0.15)) {
          t.literal = kWords[Uniform(0, kWords.size() - 1)];
        } else {
          size_t k = Uniform(1, 2);
          for (size_t q = 0; q < k; ++q) {
            t.vars.push_back(r.lhs[Uniform(0, n - 1)].var);
          }
        }
        t.fvl = Fvl(1, 2);
        r.rhs.push_back(std::move(t));
      }
    }
    return r;
  }

  RuleSet Rules(size_t lo, size_t hi, bool kleene, bool conservative) {
    while (true) {
      std::vector<Rule> rules;
      size_t n = Uniform(lo, hi);
      for (size_t i = 0; i < n; ++i) {
        rules.push_back(MakeRule("r" + std::to_string(i), kleene, conservative));
      }
      try {
        return RuleSet(std::move(rules));
      } catch (const RuleSyntaxError &) {
        // a generated self loop; draw again
      }
    }
  }

 private:
  std::mt19937 rng_;
};

std::optional<std::vector<Token>> Fixpoint(const RuleSet &rs,
                                           const std::vector<Token> &ts) {
  try {
    return RunToFixpoint(rs, ts, 12);
  } catch (const CycleBudgetExceeded &) {
    return std::nullopt;
  }
}

std::multiset<std::string> Words(const std::vector<Token> &ts) {
  std::multiset<std::string> out;
  for (const auto &t : ts) {
    size_t pos = 0;
    while (pos <= t.surface.size()) {
      size_t sp = t.surface.find(' ', pos);
      if (sp == std::string::npos) sp = t.surface.size();
      out.insert(t.surface.substr(pos, sp - pos));
      pos = sp + 1;
    }
  }
  return out;
}

// Brute-force reference for non-kleene rules.

bool OracleHas(const Token &t, const std::string &value) {
  for (const auto &p : t.fvl) {
    if (p.value == value) return true;
  }
  return false;
}

bool OracleMatches(const Rule &r, const std::vector<Token> &ts, size_t p) {
  if (r.anchored && p != 0) return false;
  if (p + r.lhs.size() > ts.size()) return false;
  for (size_t i = 0; i < r.lhs.size(); ++i) {
    for (const auto &v : r.lhs[i].required_values) {
      if (!OracleHas(ts[p + i], v)) return false;
    }
  }
  return true;
}

struct OracleResult {
  std::vector<Token> tokens;
  bool fired = false;
};

OracleResult OracleApply(const std::vector<Rule> &rules,
                         const std::vector<Token> &ts) {
  // table[p] = index of the first rule matching at p, or -1.
  std::vector<int> table(ts.size(), -1);
  for (size_t p = 0; p < ts.size(); ++p) {
    for (size_t r = 0; r < rules.size(); ++r) {
      if (OracleMatches(rules[r], ts, p)) {
        table[p] = static_cast<int>(r);
        break;
      }
    }
  }
  OracleResult out;
  size_t p = 0;
  while (p < ts.size()) {
    if (table[p] < 0) {
      out.tokens.push_back(ts[p++]);
      continue;
    }
    const Rule &r = rules[table[p]];
    out.fired = true;
    std::map<std::string, size_t> at;
    for (size_t i = 0; i < r.lhs.size(); ++i) at[r.lhs[i].var] = p + i;
    WordRange all{ts[p].words.begin, ts[p + r.lhs.size() - 1].words.end};
    for (const auto &tmpl : r.rhs) {
      Token t;
      t.fvl = tmpl.fvl;
      if (tmpl.literal) {
        t.surface = *tmpl.literal;
        t.words = all;
      } else if (tmpl.vars.size() == 1 && ts[at[tmpl.vars[0]]].fvl == tmpl.fvl) {
        t = ts[at[tmpl.vars[0]]];
      } else {
        size_t lo = SIZE_MAX, hi = 0;
        for (const auto &v : tmpl.vars) {
          const Token &src = ts[at[v]];
          t.surface += (t.surface.empty() ? "" : " ") + src.surface;
          lo = std::min(lo, src.words.begin);
          hi = std::max(hi, src.words.end);
        }
        t.words = {lo, hi};
      }
      out.tokens.push_back(std::move(t));
    }
    p += r.lhs.size();
  }
  return out;
}

bool SameVisible(const std::vector<Token> &a, const std::vector<Token> &b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].surface != b[i].surface || a[i].fvl != b[i].fvl ||
        a[i].words != b[i].words) {
      return false;
    }
  }
  return true;
}

}  // namespace

int CheckIdempotence(int cases, uint32_t seed) {
  Gen g(seed);
  int ok = 0;
  for (int made = 0, attempts = 0; made < cases && attempts < cases * 50;
       ++attempts) {
    RuleSet rs = g.Rules(1, 4, true, false);
    auto ts = g.Tokens(0, 8);
    auto once = Fixpoint(rs, ts);
    if (!once) continue;
    ++made;
    bool good = RunToFixpoint(rs, *once) == *once;
    for (int phase : rs.phases()) {
      good = good && !ApplyOnce(rs.UpToPhase(phase), *once).fired;
    }
    ok += good;
  }
  return ok;
}

int CheckConservation(int cases, uint32_t seed) {
  Gen g(seed);
  int ok = 0;
  for (int i = 0; i < cases; ++i) {
    RuleSet rs = g.Rules(1, 4, true, true);
    auto ts = g.Tokens(0, 8);
    auto before = Words(ts);
    bool good = Words(ApplyOnce(rs, ts).tokens) == before;
    if (auto fixed = Fixpoint(rs, ts)) good = good && Words(*fixed) == before;
    ok += good;
  }
  return ok;
}

int CheckOracle(int cases, uint32_t seed) {
  Gen g(seed);
  int ok = 0;
  for (int i = 0; i < cases; ++i) {
    RuleSet rs = g.Rules(1, 4, false, false);
    auto ts = g.Tokens(0, 6);
    auto got = ApplyOnce(rs, ts);
    auto want = OracleApply(rs.rules(), ts);
    ok += got.fired == want.fired && SameVisible(got.tokens, want.tokens);
  }
  return ok;
}

int CheckGreedy(int cases, uint32_t seed) {
  Gen g(seed);
  RuleSet plus = ParseRulesFromString("k: A[auf]+ -> A[x]\n");
  RuleSet tail = ParseRulesFromString("k: A[auf]+ B[auf] -> A+B[x]\n");
  int ok = 0;
  for (int i = 0; i < cases; ++i) {
    size_t k = g.Uniform(1, 8);
    std::vector<Token> ts;
    for (size_t j = 0; j < k + g.Uniform(0, 3); ++j) {
      Token t;
      t.surface = t.lemma = kWords[g.Uniform(0, kWords.size() - 1)];
      t.fvl = {{"CAT", j < k ? "auf" : "v"}};
      t.words = {j, j + 1};
      ts.push_back(std::move(t));
    }
    auto m = MatchAt(plus, ts, 0);
    bool good = m && m->length == k && m->bindings[0].end == k;
    if (k >= 2) {
      auto mt = MatchAt(tail, ts, 0);
      good = good && mt && mt->length == k && mt->bindings[0].end == k - 1;
    }
    ok += good;
  }
  return ok;
}

int CheckLoopBudget(int cases, uint32_t seed) {
  Gen g(seed);
  RuleSet rs = ParseRulesFromString("xy: A[x] -> A[y]\nyx: A[y] -> A[x]\n");
  int ok = 0;
  for (int i = 0; i < cases; ++i) {
    int budget = static_cast<int>(g.Uniform(1, 20));
    std::vector<Token> ts;
    size_t n = g.Uniform(1, 5);
    for (size_t j = 0; j < n; ++j) {
      Token t;
      t.surface = t.lemma = "w";
      t.fvl = {{"CAT", g.Chance(0.5) ? "x" : "y"}};
      ts.push_back(std::move(t));
    }
    try {
      RunToFixpoint(rs, ts, budget);
    } catch (const CycleBudgetExceeded &e) {
      ok += e.rule() == "xy" || e.rule() == "yx";
    }
  }
  return ok;
}

int CheckDeterminism(int cases, uint32_t seed) {
  Gen g(seed);
  int ok = 0;
  for (int i = 0; i < cases; ++i) {
    RuleSet rs = g.Rules(1, 4, true, false);
    auto ts = g.Tokens(0, 8);
    auto a = Fixpoint(rs, ts);
    auto b = Fixpoint(rs, ts);
    ok += a == b;
  }
  return ok;
}

}  // namespace vchunk::testing
