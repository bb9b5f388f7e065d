#pragma once

// The rewriting game: alphabet, function symbols with their replacement
// languages, and the regular target language. Includes the text format,
// validation and a seeded random generator.

#include "cfgame/regular.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace cfgame {

struct FiniteRule {
  std::vector<Word> words;

  bool operator==(const FiniteRule &) const = default;
};

struct RegularRule {
  RegularRule(std::string source, Nfa nfa);
  static RegularRule from_regex(std::string source, const Alphabet &alphabet);

  std::string source;
  Nfa nfa;
  Dfa dfa;
  /// Detected finiteness; finite regular rules are enumerated exhaustively.
  bool finite;

  bool operator==(const RegularRule &) const = default;
};

using ReplacementLang = std::variant<FiniteRule, RegularRule>;

/// Thrown by parse_game when the text is well formed but the game violates
/// its invariants; carries every violation found.
class GameError : public Error {
public:
  explicit GameError(std::vector<std::string> violations);
  const std::vector<std::string> &violations() const { return violations_; }

private:
  std::vector<std::string> violations_;
};

class Game {
public:
  /// Builds the complete target DFA. Does not validate; see validate_game.
  Game(Alphabet alphabet, std::vector<Symbol> functions, std::map<Symbol, ReplacementLang> rules,
       std::string target_source, Nfa target);

  const Alphabet &alphabet() const { return alphabet_; }
  const std::vector<Symbol> &functions() const { return functions_; }
  bool is_function(Symbol a) const { return a < is_function_.size() && is_function_[a]; }
  const std::map<Symbol, ReplacementLang> &rules() const { return rules_; }
  /// Throws Error if `a` has no rule.
  const ReplacementLang &rule(Symbol a) const;
  const std::string &target_source() const { return target_source_; }
  const Nfa &target() const { return target_; }
  const Dfa &target_dfa() const { return target_dfa_; }

  /// True when every replacement language is finite (declared or detected).
  bool finite_rules() const;

  bool operator==(const Game &) const = default;

private:
  Alphabet alphabet_;
  std::vector<Symbol> functions_;
  std::vector<bool> is_function_;
  std::map<Symbol, ReplacementLang> rules_;
  std::string target_source_;
  Nfa target_;
  Dfa target_dfa_;
};

bool rule_contains(const ReplacementLang &rule, const Word &word);
bool rule_is_finite(const ReplacementLang &rule);

/// Empty iff the game satisfies all invariants.
std::vector<std::string> validate_game(const Game &game);

/// Parses the line-oriented game format. Throws SyntaxError (position is
/// the 1-based line) or GameError.
Game parse_game(std::string_view text);

/// Inverse of parse_game.
std::string render_game(const Game &game);
std::string render_rule(const Game &game, Symbol function);

/// Whitespace-separated symbols, or the single token `%e`.
Word parse_word(std::string_view text, const Alphabet &alphabet);

struct GenParams {
  std::size_t n_symbols = 3;
  std::size_t n_functions = 1;
  std::size_t rule_words = 2;
  std::size_t max_rule_len = 2;
  bool regular = false;
  std::size_t target_depth = 2;
};

/// Deterministic in (seed, params); the result always validates.
Game random_game(std::uint64_t seed, const GenParams &params);

} // namespace cfgame
