#pragma once

// Regular-language toolkit: symbols and words, regex parsing into NFAs,
// subset construction into complete DFAs, membership and enumeration.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cfgame {

/// Index of a letter inside an Alphabet (declaration order).
using Symbol = std::uint32_t;
/// Dense automaton state id.
using State = std::uint32_t;
using Word = std::vector<Symbol>;

inline constexpr Symbol kEpsilon = std::numeric_limits<Symbol>::max();
inline constexpr std::string_view kEpsilonToken = "%e";

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed regex, word or game text. `position()` is a character offset
/// for regexes and a 1-based line number for game files.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string &message, std::size_t position)
      : Error(message), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

class UnknownSymbol : public Error {
public:
  explicit UnknownSymbol(std::string name)
      : Error("unknown symbol " + name), name_(std::move(name)) {}
  const std::string &symbol() const { return name_; }

private:
  std::string name_;
};

bool is_valid_symbol_name(std::string_view name);

/// Ordered set of named symbols. Ids follow declaration order.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string &name(Symbol s) const;
  const std::vector<std::string> &names() const { return names_; }
  std::optional<Symbol> find(std::string_view name) const;
  /// Throws UnknownSymbol.
  Symbol at(std::string_view name) const;

  bool operator==(const Alphabet &other) const { return names_ == other.names_; }

private:
  std::vector<std::string> names_;
  std::map<std::string, Symbol, std::less<>> index_;
};

/// Space-separated symbol names, or `%e` for the empty word.
std::string render_word(const Word &word, const Alphabet &alphabet);

/// Length-then-lexicographic order on symbol ids.
bool shortlex_less(const Word &a, const Word &b);

struct NfaEdge {
  Symbol symbol; // kEpsilon for an epsilon move
  State target;

  bool operator==(const NfaEdge &) const = default;
};

class Nfa {
public:
  explicit Nfa(std::size_t alphabet_size = 0) : alphabet_size_(alphabet_size) {}

  State add_state();
  void add_edge(State from, Symbol symbol, State to);
  void set_initial(State s);
  void set_final(State s, bool final = true);

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t num_states() const { return edges_.size(); }
  State initial() const { return initial_; }
  bool is_final(State s) const { return finals_.at(s); }
  const std::vector<NfaEdge> &edges(State s) const { return edges_.at(s); }

  /// Sorted epsilon closure of `seed`.
  std::vector<State> epsilon_closure(std::vector<State> seed) const;

  bool operator==(const Nfa &) const = default;

private:
  std::size_t alphabet_size_;
  std::vector<std::vector<NfaEdge>> edges_;
  std::vector<bool> finals_;
  State initial_ = 0;
};

/// Complete deterministic automaton; `step` is total.
class Dfa {
public:
  Dfa() = default;
  Dfa(std::size_t alphabet_size, std::size_t num_states, State initial);

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t num_states() const { return finals_.size(); }
  State initial() const { return initial_; }
  bool is_final(State s) const { return finals_.at(s); }
  void set_final(State s, bool final = true) { finals_.at(s) = final; }
  void set_transition(State from, Symbol symbol, State to);

  State step(State from, Symbol symbol) const;
  /// Throws Error on a symbol outside the alphabet.
  State run(State from, const Word &word) const;
  State run(const Word &word) const { return run(initial_, word); }
  bool accepts(const Word &word) const { return is_final(run(word)); }

  bool operator==(const Dfa &) const = default;

private:
  std::size_t alphabet_size_ = 0;
  State initial_ = 0;
  std::vector<State> delta_;
  std::vector<bool> finals_;
};

/// Grammar: union `|`, juxtaposition, postfix `*` `+` `?`, parentheses,
/// `%e` for the empty word. Throws SyntaxError or UnknownSymbol.
Nfa parse_regex(std::string_view text, const Alphabet &alphabet);

/// Subset construction. States are numbered breadth-first from the initial
/// closure with symbols tried in id order; the empty subset is the sink.
Dfa determinize(const Nfa &nfa);

State dfa_run(const Dfa &dfa, const Word &word);
bool nfa_membership(const Nfa &nfa, const Word &word);

/// All accepted words of length <= max_len, shortlex ordered.
std::vector<Word> enumerate_words(const Nfa &nfa, std::size_t max_len);
std::vector<Word> enumerate_words(const Dfa &dfa, std::size_t max_len);

bool is_empty_language(const Nfa &nfa);
bool is_finite_language(const Nfa &nfa);
bool is_finite_language(const Dfa &dfa);

/// Length of the longest accepted word, or nullopt when the language is
/// infinite or empty.
std::optional<std::size_t> longest_word_length(const Dfa &dfa);

} // namespace cfgame
