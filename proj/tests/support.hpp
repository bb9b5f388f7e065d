#pragma once

// Shared fixtures for the unit and acceptance suites.

#include "cfgame/automaton.hpp"
#include "cfgame/effects.hpp"
#include "cfgame/game.hpp"
#include "cfgame/semantics.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cfgame::testing {

inline constexpr const char *kG1 = "alphabet: a b f\nfunctions: f\ntarget: regex a | b\nrule f: finite a , b\n";
inline constexpr const char *kG2 = "alphabet: a f\nfunctions: f\ntarget: regex a a\nrule f: regex a *\n";
inline constexpr const char *kG3 = "alphabet: a f\nfunctions: f\ntarget: regex a\nrule f: finite f , a\n";
inline constexpr const char *kG4 = "alphabet: a f\nfunctions: f\ntarget: regex a *\nrule f: regex a *\n";

/// Left steps help here: f must be called iff g is later replaced by a.
inline constexpr const char *kLeftStepGame = "alphabet: x a b f g\n"
                                             "functions: f g\n"
                                             "target: regex x a | f b\n"
                                             "rule f: finite x\n"
                                             "rule g: finite a , b\n";

inline Game load(const char *text) { return parse_game(text); }

inline Word word(const Game &g, const std::string &text) { return parse_word(text, g.alphabet()); }

/// Every word over `alphabet_size` letters of length <= max_len, shortlex.
inline std::vector<Word> all_words(std::size_t alphabet_size, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t start = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i)
      for (Symbol a = 0; a < alphabet_size; ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    start = end;
  }
  return out;
}

struct CorpusGame {
  std::uint64_t seed;
  GenParams params;
  Game game;
};

/// Finite games with |Σ| <= 4, |Γ| <= 2, <= 3 rule words of length <= 2 and
/// a target DFA of at most 5 states. Seeds that miss the state bound are
/// skipped, so the corpus is a fixed function of `count`.
inline std::vector<CorpusGame> finite_corpus(std::size_t count, std::uint64_t first_seed = 1) {
  std::vector<CorpusGame> out;
  for (std::uint64_t seed = first_seed; out.size() < count; ++seed) {
    std::mt19937_64 pick(seed * 0x9e3779b97f4a7c15ull);
    GenParams p;
    p.n_symbols = 2 + pick() % 3;
    p.n_functions = 1 + pick() % 2;
    p.rule_words = 1 + pick() % 3;
    p.max_rule_len = 1 + pick() % 2;
    p.regular = false;
    p.target_depth = 1 + pick() % 3;
    Game g = random_game(seed, p);
    if (g.target_dfa().num_states() > 5)
      continue;
    out.push_back({seed, p, std::move(g)});
  }
  return out;
}

inline bool sound(Outcome o) { return o != Outcome::Unknown; }

/// Same game, but the target automaton starts in `q` and accepts exactly `goal`.
inline Game retarget(const Game &g, State q, StateSet goal) {
  const Dfa &dfa = g.target_dfa();
  Nfa nfa(dfa.alphabet_size());
  for (State s = 0; s < dfa.num_states(); ++s)
    nfa.add_state();
  for (State s = 0; s < dfa.num_states(); ++s) {
    for (Symbol a = 0; a < dfa.alphabet_size(); ++a)
      nfa.add_edge(s, a, dfa.step(s, a));
    nfa.set_final(s, goal.contains(s));
  }
  nfa.set_initial(q);
  return Game(g.alphabet(), g.functions(), g.rules(), "<retargeted>", nfa);
}

/// Replaces every regular rule by its words of length <= max_len.
inline Game slice_game(const Game &g, std::size_t max_len) {
  std::map<Symbol, ReplacementLang> rules;
  for (const auto &[f, rule] : g.rules()) {
    if (const auto *reg = std::get_if<RegularRule>(&rule))
      rules.emplace(f, FiniteRule{enumerate_words(reg->dfa, max_len)});
    else
      rules.emplace(f, rule);
  }
  return Game(g.alphabet(), g.functions(), std::move(rules), g.target_source(), g.target());
}

struct OracleEffect {
  Antichain wins;
  /// False if some goal stayed Unknown; `wins` then only lists goals the
  /// solver proved.
  bool exact = true;
};

/// Effect of `word` at `q` recomputed by the bounded solver: the minimal
/// goal sets S for which Juliet wins `word` from q with target S.
inline OracleEffect oracle_effect(const Game &g, const Word &word, State q, std::size_t budget) {
  const std::size_t n = g.target_dfa().num_states();
  std::vector<StateSet> winning;
  bool exact = true;
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    StateSet goal = StateSet::from_bits(bits);
    Outcome o = solve_lr_bounded(retarget(g, q, goal), word, budget).outcome;
    if (o == Outcome::Unknown)
      exact = false;
    if (o == Outcome::Win)
      winning.push_back(goal);
  }
  return {Antichain::reduce(std::move(winning)), exact};
}

/// Quadratic minimal-element filter, independent of Antichain::reduce.
inline std::vector<StateSet> brute_minimal(const std::vector<StateSet> &sets) {
  std::vector<StateSet> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < sets.size() && minimal; ++j) {
      if (sets[j] == sets[i])
        minimal = j >= i; // keep the first copy only
      else if (sets[j].subset_of(sets[i]))
        minimal = false;
    }
    if (minimal)
      out.push_back(sets[i]);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

} // namespace cfgame::testing
