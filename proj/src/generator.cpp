#include "cfgame/game.hpp"

#include <algorithm>
#include <random>

namespace cfgame {

namespace {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Plain modulo keeps the stream identical across standard libraries.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(std::size_t one_in) { return below(one_in) == 0; }

private:
  std::mt19937_64 engine_;
};

std::string symbol_name(std::size_t i, bool function) {
  static constexpr const char *kTerminals[] = {"a", "b", "c", "d", "e"};
  static constexpr const char *kFunctions[] = {"f", "g", "h", "i", "j"};
  if (function)
    return i < 5 ? kFunctions[i] : "u" + std::to_string(i);
  return i < 5 ? kTerminals[i] : "t" + std::to_string(i);
}

std::string random_regex(Rng &rng, const std::vector<std::string> &pool, std::size_t depth) {
  if (depth == 0 || rng.chance(4)) {
    if (rng.chance(8))
      return "%e";
    return pool[rng.below(pool.size())];
  }
  switch (rng.below(3)) {
  case 0: return "( " + random_regex(rng, pool, depth - 1) + " | " + random_regex(rng, pool, depth - 1) + " )";
  case 1: return "( " + random_regex(rng, pool, depth - 1) + " " + random_regex(rng, pool, depth - 1) + " )";
  default: return "( " + random_regex(rng, pool, depth - 1) + " ) *";
  }
}

Word random_word(Rng &rng, const std::vector<Symbol> &pool, std::size_t max_len) {
  Word w;
  if (pool.empty())
    return w;
  std::size_t len = rng.below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i)
    w.push_back(pool[rng.below(pool.size())]);
  return w;
}

} // namespace

Game random_game(std::uint64_t seed, const GenParams &params) {
  if (params.n_symbols == 0 || params.n_functions > params.n_symbols || params.rule_words == 0)
    throw Error("invalid generator parameters");
  Rng rng(seed);

  const std::size_t n_terminals = params.n_symbols - params.n_functions;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_terminals; ++i)
    names.push_back(symbol_name(i, false));
  for (std::size_t i = 0; i < params.n_functions; ++i)
    names.push_back(symbol_name(i, true));
  Alphabet sigma(names);

  std::vector<Symbol> functions;
  for (std::size_t i = 0; i < params.n_functions; ++i)
    functions.push_back(static_cast<Symbol>(n_terminals + i));

  std::vector<Symbol> all(params.n_symbols);
  for (Symbol s = 0; s < all.size(); ++s)
    all[s] = s;

  std::map<Symbol, ReplacementLang> rules;
  for (Symbol f : functions) {
    std::vector<Symbol> others;
    std::copy_if(all.begin(), all.end(), std::back_inserter(others), [&](Symbol s) { return s != f; });
    // The first word never mentions f, so some reply always ends recursion.
    std::vector<Word> words{random_word(rng, others, params.max_rule_len)};
    for (std::size_t attempt = 0; words.size() < params.rule_words && attempt < 4 * params.rule_words; ++attempt) {
      Word w = random_word(rng, all, params.max_rule_len);
      if (std::find(words.begin(), words.end(), w) == words.end())
        words.push_back(std::move(w));
    }
    if (!params.regular) {
      rules.emplace(f, FiniteRule{std::move(words)});
      continue;
    }
    std::vector<std::string> parts;
    for (const Word &w : words)
      parts.push_back(render_word(w, sigma));
    if (parts.size() >= 2)
      parts.back() = "( " + parts.back() + " ) *";
    else
      parts.push_back("( " + sigma.name(all[rng.below(all.size())]) + " ) *");
    std::string source;
    for (const std::string &p : parts)
      source += (source.empty() ? "" : " | ") + p;
    rules.emplace(f, RegularRule::from_regex(source, sigma));
  }

  std::vector<std::string> pool;
  for (std::size_t i = 0; i < n_terminals; ++i)
    pool.push_back(names[i]);
  if (pool.empty() || rng.chance(6))
    for (Symbol f : functions)
      pool.push_back(names[f]);
  std::string target_source = random_regex(rng, pool, params.target_depth);
  Nfa target = parse_regex(target_source, sigma);

  return Game(std::move(sigma), std::move(functions), std::move(rules), std::move(target_source),
              std::move(target));
}

} // namespace cfgame
