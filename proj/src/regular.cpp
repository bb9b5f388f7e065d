#include "cfgame/regular.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace cfgame {

bool is_valid_symbol_name(std::string_view name) {
  if (name.empty())
    return false;
  auto first = static_cast<unsigned char>(name.front());
  if (!std::isalpha(first) && first != '_')
    return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_valid_symbol_name(names_[i]))
      throw Error("invalid symbol name '" + names_[i] + "'");
    if (!index_.emplace(names_[i], static_cast<Symbol>(i)).second)
      throw Error("duplicate symbol " + names_[i]);
  }
}

const std::string &Alphabet::name(Symbol s) const {
  if (s >= names_.size())
    throw Error("symbol id " + std::to_string(s) + " outside alphabet");
  return names_[s];
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(std::string_view name) const {
  auto s = find(name);
  if (!s)
    throw UnknownSymbol(std::string(name));
  return *s;
}

std::string render_word(const Word &word, const Alphabet &alphabet) {
  if (word.empty())
    return std::string(kEpsilonToken);
  std::string out;
  for (Symbol s : word) {
    if (!out.empty())
      out += ' ';
    out += alphabet.name(s);
  }
  return out;
}

bool shortlex_less(const Word &a, const Word &b) {
  if (a.size() != b.size())
    return a.size() < b.size();
  return a < b;
}

// ---------------------------------------------------------------------------
// Nfa

State Nfa::add_state() {
  edges_.emplace_back();
  finals_.push_back(false);
  return static_cast<State>(edges_.size() - 1);
}

void Nfa::add_edge(State from, Symbol symbol, State to) {
  if (from >= num_states() || to >= num_states())
    throw Error("nfa edge endpoint out of range");
  if (symbol != kEpsilon && symbol >= alphabet_size_)
    throw Error("nfa edge symbol outside alphabet");
  edges_[from].push_back({symbol, to});
}

void Nfa::set_initial(State s) {
  if (s >= num_states())
    throw Error("nfa initial state out of range");
  initial_ = s;
}

void Nfa::set_final(State s, bool final) { finals_.at(s) = final; }

std::vector<State> Nfa::epsilon_closure(std::vector<State> seed) const {
  std::vector<bool> seen(num_states(), false);
  std::vector<State> stack;
  for (State s : seed) {
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  std::vector<State> out;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    out.push_back(s);
    for (const NfaEdge &e : edges_[s]) {
      if (e.symbol == kEpsilon && !seen[e.target]) {
        seen[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Dfa

Dfa::Dfa(std::size_t alphabet_size, std::size_t num_states, State initial)
    : alphabet_size_(alphabet_size), initial_(initial), delta_(alphabet_size * num_states, 0),
      finals_(num_states, false) {
  if (num_states == 0 || initial >= num_states)
    throw Error("dfa needs an initial state");
}

void Dfa::set_transition(State from, Symbol symbol, State to) {
  if (from >= num_states() || to >= num_states() || symbol >= alphabet_size_)
    throw Error("dfa transition out of range");
  delta_[from * alphabet_size_ + symbol] = to;
}

State Dfa::step(State from, Symbol symbol) const {
  if (symbol >= alphabet_size_)
    throw Error("symbol id " + std::to_string(symbol) + " not in alphabet");
  return delta_[from * alphabet_size_ + symbol];
}

State Dfa::run(State from, const Word &word) const {
  State s = from;
  for (Symbol a : word)
    s = step(s, a);
  return s;
}

// ---------------------------------------------------------------------------
// Algorithms

Dfa determinize(const Nfa &nfa) {
  const std::size_t k = nfa.alphabet_size();
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> subsets;
  std::vector<std::vector<State>> rows; // rows[d][a] = successor id

  auto intern = [&](std::vector<State> subset) {
    auto [it, inserted] = ids.emplace(subset, static_cast<State>(subsets.size()));
    if (inserted)
      subsets.push_back(std::move(subset));
    return it->second;
  };

  intern(nfa.epsilon_closure({nfa.initial()}));
  for (std::size_t d = 0; d < subsets.size(); ++d) {
    std::vector<State> row(k);
    for (Symbol a = 0; a < k; ++a) {
      std::vector<State> moved;
      for (State s : subsets[d])
        for (const NfaEdge &e : nfa.edges(s))
          if (e.symbol == a)
            moved.push_back(e.target);
      row[a] = intern(nfa.epsilon_closure(std::move(moved)));
    }
    rows.push_back(std::move(row));
  }

  Dfa dfa(k, subsets.size(), 0);
  for (State d = 0; d < subsets.size(); ++d) {
    for (Symbol a = 0; a < k; ++a)
      dfa.set_transition(d, a, rows[d][a]);
    dfa.set_final(d, std::any_of(subsets[d].begin(), subsets[d].end(),
                                 [&](State s) { return nfa.is_final(s); }));
  }
  return dfa;
}

State dfa_run(const Dfa &dfa, const Word &word) { return dfa.run(word); }

bool nfa_membership(const Nfa &nfa, const Word &word) {
  std::vector<State> current = nfa.epsilon_closure({nfa.initial()});
  for (Symbol a : word) {
    if (a >= nfa.alphabet_size())
      throw Error("symbol id " + std::to_string(a) + " not in alphabet");
    std::vector<State> moved;
    for (State s : current)
      for (const NfaEdge &e : nfa.edges(s))
        if (e.symbol == a)
          moved.push_back(e.target);
    current = nfa.epsilon_closure(std::move(moved));
    if (current.empty())
      return false;
  }
  return std::any_of(current.begin(), current.end(), [&](State s) { return nfa.is_final(s); });
}

std::vector<Word> enumerate_words(const Dfa &dfa, std::size_t max_len) {
  const std::size_t n = dfa.num_states();
  const std::size_t k = dfa.alphabet_size();
  // exact[len][s]: some word of exactly `len` symbols leads from s to a final state
  std::vector<std::vector<bool>> exact(max_len + 1, std::vector<bool>(n));
  for (State s = 0; s < n; ++s)
    exact[0][s] = dfa.is_final(s);
  for (std::size_t len = 1; len <= max_len; ++len)
    for (State s = 0; s < n; ++s)
      for (Symbol a = 0; a < k && !exact[len][s]; ++a)
        exact[len][s] = exact[len - 1][dfa.step(s, a)];

  std::vector<Word> out;
  Word current;
  auto walk = [&](auto &self, State s, std::size_t remaining) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (Symbol a = 0; a < k; ++a) {
      State t = dfa.step(s, a);
      if (!exact[remaining - 1][t])
        continue;
      current.push_back(a);
      self(self, t, remaining - 1);
      current.pop_back();
    }
  };
  for (std::size_t len = 0; len <= max_len; ++len)
    if (exact[len][dfa.initial()])
      walk(walk, dfa.initial(), len);
  return out;
}

std::vector<Word> enumerate_words(const Nfa &nfa, std::size_t max_len) {
  return enumerate_words(determinize(nfa), max_len);
}

bool is_empty_language(const Nfa &nfa) {
  std::vector<bool> seen(nfa.num_states(), false);
  std::vector<State> stack{nfa.initial()};
  seen[nfa.initial()] = true;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    if (nfa.is_final(s))
      return false;
    for (const NfaEdge &e : nfa.edges(s)) {
      if (!seen[e.target]) {
        seen[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  return true;
}

namespace {

// States from which a final state is reachable.
std::vector<bool> co_reachable(const Dfa &dfa) {
  const std::size_t n = dfa.num_states();
  std::vector<std::vector<State>> preds(n);
  for (State s = 0; s < n; ++s)
    for (Symbol a = 0; a < dfa.alphabet_size(); ++a)
      preds[dfa.step(s, a)].push_back(s);
  std::vector<bool> live(n, false);
  std::deque<State> queue;
  for (State s = 0; s < n; ++s) {
    if (dfa.is_final(s)) {
      live[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (State p : preds[s]) {
      if (!live[p]) {
        live[p] = true;
        queue.push_back(p);
      }
    }
  }
  return live;
}

} // namespace

std::optional<std::size_t> longest_word_length(const Dfa &dfa) {
  // Every state of a determinized automaton is reachable, so trimming only
  // removes dead states. A cycle among live states makes the language infinite.
  std::vector<bool> live = co_reachable(dfa);
  if (!live[dfa.initial()])
    return std::nullopt;
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(dfa.num_states(), Mark::White);
  std::vector<std::size_t> depth(dfa.num_states(), 0); // longest path to a final state
  bool cyclic = false;
  auto visit = [&](auto &self, State s) -> void {
    mark[s] = Mark::Grey;
    std::size_t best = 0;
    for (Symbol a = 0; a < dfa.alphabet_size() && !cyclic; ++a) {
      State t = dfa.step(s, a);
      if (!live[t])
        continue;
      if (mark[t] == Mark::Grey) {
        cyclic = true;
        return;
      }
      if (mark[t] == Mark::White)
        self(self, t);
      best = std::max(best, depth[t] + 1);
    }
    depth[s] = best;
    mark[s] = Mark::Black;
  };
  visit(visit, dfa.initial());
  if (cyclic)
    return std::nullopt;
  return depth[dfa.initial()];
}

bool is_finite_language(const Dfa &dfa) {
  std::vector<bool> live = co_reachable(dfa);
  if (!live[dfa.initial()])
    return true;
  return longest_word_length(dfa).has_value();
}

bool is_finite_language(const Nfa &nfa) { return is_finite_language(determinize(nfa)); }

} // namespace cfgame
