#pragma once

// Effects summarise left-to-right play on a symbol or string: for every
// target-DFA state q, the antichain of minimal state sets S such that Juliet,
// starting the string in q, can force the processed prefix to end in a state
// of S. The table of symbol effects is a least fixpoint over the Read and
// Call options, starting from Read-only play.

#include "cfgame/game.hpp"
#include "cfgame/semantics.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cfgame {

/// Set of target-DFA states; effects support at most 64 states.
class StateSet {
public:
  static constexpr std::size_t kMaxStates = 64;

  constexpr StateSet() = default;
  static constexpr StateSet from_bits(std::uint64_t bits) { return StateSet(bits); }
  static StateSet singleton(State q);
  static StateSet of(std::initializer_list<State> states);

  std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool contains(State q) const { return q < kMaxStates && ((bits_ >> q) & 1u); }
  bool subset_of(StateSet other) const { return (bits_ & ~other.bits_) == 0; }
  void insert(State q);
  StateSet operator|(StateSet other) const { return StateSet(bits_ | other.bits_); }
  std::vector<State> states() const;

  bool operator==(const StateSet &) const = default;

private:
  constexpr explicit StateSet(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// Canonical order: by size, then lexicographically by ascending state ids.
bool canonical_less(StateSet a, StateSet b);

/// Family of pairwise incomparable non-empty state sets in canonical order.
class Antichain {
public:
  Antichain() = default;

  /// Keeps the subset-minimal elements. Throws Error on an empty set.
  static Antichain reduce(std::vector<StateSet> sets);
  static Antichain singleton(StateSet s) { return reduce({s}); }

  const std::vector<StateSet> &sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  auto begin() const { return sets_.begin(); }
  auto end() const { return sets_.end(); }

  /// Some element is contained in `bound`.
  bool has_subset_of(StateSet bound) const;
  /// Every element of `other` has a subset in this antichain.
  bool refines(const Antichain &other) const;

  bool operator==(const Antichain &) const = default;
  bool operator<(const Antichain &other) const;

private:
  std::vector<StateSet> sets_;
};

Antichain antichain_reduce(std::vector<StateSet> sets);

/// Minimal sets of the form S_1 ∪ ... ∪ S_n with S_i drawn from family i.
/// An empty list of families yields no sets.
Antichain min_union_choices(const std::vector<const Antichain *> &families);

struct Effect {
  std::vector<Antichain> by_state;

  std::size_t num_states() const { return by_state.size(); }
  const Antichain &operator[](State q) const { return by_state.at(q); }

  bool operator==(const Effect &) const = default;
};

Effect identity_effect(std::size_t num_states);
Effect read_effect(const Dfa &dfa, Symbol a);

/// Antichain reached after playing a string with effect `e` from any state
/// chosen within the sets of `from`.
Antichain post(const Antichain &from, const Effect &e);
/// Sequential composition: play `first`, then `second`.
Effect compose_effects(const Effect &first, const Effect &second);

/// One table per fixpoint round: level 0 is Read-only, the last level is
/// the least fixpoint.
class EffectTable {
public:
  EffectTable(std::size_t num_states, std::vector<std::vector<Effect>> levels, std::size_t iteration_count);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_symbols() const { return levels_.back().size(); }
  std::size_t iteration_count() const { return iteration_count_; }
  std::size_t num_levels() const { return levels_.size(); }
  std::size_t top_level() const { return levels_.size() - 1; }

  const std::vector<Effect> &level(std::size_t n) const { return levels_.at(n); }
  const std::vector<Effect> &effects() const { return levels_.back(); }
  const Effect &operator[](Symbol a) const { return levels_.back().at(a); }

  bool operator==(const EffectTable &) const = default;

private:
  std::size_t num_states_;
  std::vector<std::vector<Effect>> levels_;
  std::size_t iteration_count_;
};

/// Minimal sets T such that, for every replacement r of `a`, Juliet can
/// force play over r from q into T using `table`.
Antichain call_guarantees(const Game &game, const std::vector<Effect> &table, Symbol a, State q);
Antichain call_guarantees(const Game &game, const EffectTable &table, Symbol a, State q);

EffectTable compute_effect_table(const Game &game);

Effect string_effect(const std::vector<Effect> &table, const Word &word);
Effect string_effect(const EffectTable &table, const Word &word);

/// States p from which the rest of the game on `suffix` is won when the
/// final state must lie in `goal`.
StateSet winning_states(const std::vector<Effect> &table, const Word &suffix, StateSet goal);

StateSet final_states(const Dfa &dfa);

bool decide_lr(const Game &game, const EffectTable &table, const Word &word);
bool decide_lr(const Game &game, const Word &word);

/// Renders `{q1},{q0,q2}`.
std::string render_state_set(StateSet s);
std::string render_antichain(const Antichain &a);
/// One line per state in id order: `q0: {q1},{q2}`.
std::string render_effect(const Effect &e);

// ---------------------------------------------------------------------------
// Strategy extraction

/// Juliet's strategy read off the fixpoint levels. Each Call pushes an
/// obligation frame for the replacement at a strictly lower level, so every
/// play terminates. Prefers Read whenever Read keeps the obligation.
class EffectStrategy {
public:
  /// Throws Error if `word` is not safely rewritable.
  EffectStrategy(const Game &game, const EffectTable &table, Word word);

  /// Next move at `cfg`, which must be the configuration reached so far.
  Move next(const LrConfig &cfg);
  /// Records the move returned by next() together with Romeo's reply for a Call.
  void advance(const Move &move, const Word &replacement = {});

  /// Adapter for simulate_play; resynchronises from the trace.
  JulietPolicy policy() const;

private:
  struct Frame {
    Word symbols;
    std::size_t pos;
    StateSet target;
    std::size_t level;
  };

  void pop_finished();
  std::size_t call_level(Symbol a, State q, StateSet goal);

  const Game *game_;
  const EffectTable *table_;
  Word word_;
  std::vector<Frame> frames_;
  std::size_t pending_level_ = 0;
  StateSet pending_target_;
  std::map<std::tuple<std::size_t, Symbol, State>, Antichain> call_cache_;
};

/// Unrolls EffectStrategy against every enumerated Romeo reply. Throws
/// Error if the word is unsafe.
StrategyCert extract_strategy(const Game &game, const EffectTable &table, const Word &word,
                              std::size_t romeo_len_bound = kDefaultRomeoLen);

/// Engine Romeo: prefers a reply after which Juliet loses, then the reply
/// whose smallest guarantee is largest, then the earliest reply.
Word worst_case_reply(const Game &game, const EffectTable &table, const LrConfig &cfg,
                      std::size_t romeo_len_bound = kDefaultRomeoLen);

} // namespace cfgame
