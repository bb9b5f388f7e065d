#pragma once

#include "cfgame/effects.hpp"

#include <string>
#include <vector>

namespace cfgame {

class StateLimitExceeded : public Error {
public:
  explicit StateLimitExceeded(std::size_t reached)
      : Error("state limit exceeded: " + std::to_string(reached) + " states discovered"), reached_(reached) {}
  std::size_t reached() const { return reached_; }

private:
  std::size_t reached_;
};

/// Deterministic automaton over prefix antichains. State i stores the
/// antichain of guarantee sets reachable from the initial target state after
/// the consumed prefix; it accepts iff one of them lies inside the finals.
class SafeLrAutomaton {
public:
  SafeLrAutomaton(std::vector<Antichain> states, std::vector<std::size_t> transitions, std::size_t num_symbols,
                  StateSet finals);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_symbols() const { return num_symbols_; }
  const Antichain &state(std::size_t i) const { return states_.at(i); }
  std::size_t initial() const { return 0; }
  std::size_t next(std::size_t from, Symbol a) const;
  bool accepting(std::size_t i) const { return states_.at(i).has_subset_of(finals_); }
  StateSet finals() const { return finals_; }

  std::size_t run(const Word &word) const;

  bool operator==(const SafeLrAutomaton &) const = default;

private:
  std::vector<Antichain> states_;
  std::vector<std::size_t> transitions_; // [state * num_symbols + symbol]
  std::size_t num_symbols_;
  StateSet finals_;
};

inline constexpr std::size_t kDefaultStateLimit = 10000;

/// Breadth-first from {{q_init}}, symbols in declaration order. Throws
/// StateLimitExceeded when more than `state_limit` states are discovered.
SafeLrAutomaton build_safelr_automaton(const Game &game, const EffectTable &table,
                                       std::size_t state_limit = kDefaultStateLimit);
SafeLrAutomaton build_safelr_automaton(const Game &game, std::size_t state_limit = kDefaultStateLimit);

bool automaton_accepts(const SafeLrAutomaton &aut, const Word &word);

std::string export_dot(const SafeLrAutomaton &aut, const Alphabet &alphabet);

} // namespace cfgame
