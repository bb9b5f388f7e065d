#include "cfgame/automaton.hpp"

#include <map>

namespace cfgame {

SafeLrAutomaton::SafeLrAutomaton(std::vector<Antichain> states, std::vector<std::size_t> transitions,
                                 std::size_t num_symbols, StateSet finals)
    : states_(std::move(states)), transitions_(std::move(transitions)), num_symbols_(num_symbols),
      finals_(finals) {
  if (states_.empty() || transitions_.size() != states_.size() * num_symbols_)
    throw Error("malformed safe-LR automaton");
}

std::size_t SafeLrAutomaton::next(std::size_t from, Symbol a) const {
  if (a >= num_symbols_)
    throw UnknownSymbol("#" + std::to_string(a));
  return transitions_.at(from * num_symbols_ + a);
}

std::size_t SafeLrAutomaton::run(const Word &word) const {
  std::size_t s = initial();
  for (Symbol a : word)
    s = next(s, a);
  return s;
}

SafeLrAutomaton build_safelr_automaton(const Game &game, const EffectTable &table, std::size_t state_limit) {
  if (state_limit == 0)
    throw Error("state limit must be at least 1");
  const std::size_t k = game.alphabet().size();
  const Dfa &dfa = game.target_dfa();

  std::map<Antichain, std::size_t> index;
  std::vector<Antichain> states;
  std::vector<std::size_t> transitions;
  auto intern = [&](Antichain a) {
    auto [it, inserted] = index.emplace(a, states.size());
    if (inserted) {
      states.push_back(std::move(a));
      if (states.size() > state_limit)
        throw StateLimitExceeded(states.size());
    }
    return it->second;
  };

  intern(Antichain::singleton(StateSet::singleton(dfa.initial())));
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (Symbol a = 0; a < k; ++a) {
      Antichain succ = post(states[i], table[a]);
      transitions.push_back(intern(std::move(succ)));
    }
  }
  return SafeLrAutomaton(std::move(states), std::move(transitions), k, final_states(dfa));
}

SafeLrAutomaton build_safelr_automaton(const Game &game, std::size_t state_limit) {
  return build_safelr_automaton(game, compute_effect_table(game), state_limit);
}

bool automaton_accepts(const SafeLrAutomaton &aut, const Word &word) { return aut.accepting(aut.run(word)); }

std::string export_dot(const SafeLrAutomaton &aut, const Alphabet &alphabet) {
  std::string out = "digraph safelr {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t i = 0; i < aut.num_states(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" + render_antichain(aut.state(i)) + "\", shape=" +
           (aut.accepting(i) ? "doublecircle" : "circle") + "];\n";
  }
  out += "  init -> n0;\n";
  for (std::size_t i = 0; i < aut.num_states(); ++i)
    for (Symbol a = 0; a < aut.num_symbols(); ++a)
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(aut.next(i, a)) + " [label=\"" +
             alphabet.name(a) + "\"];\n";
  return out + "}\n";
}

} // namespace cfgame
