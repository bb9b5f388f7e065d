#include "cfgame/game.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cfgame {

namespace {

std::string join(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i)
      out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front()))
    s.remove_prefix(1);
  while (!s.empty() && is_space(s.back()))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok)
    out.push_back(tok);
  return out;
}

bool has_prefix(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

} // namespace

RegularRule::RegularRule(std::string source_, Nfa nfa_)
    : source(std::move(source_)), nfa(std::move(nfa_)), dfa(determinize(nfa)),
      finite(is_finite_language(dfa)) {}

RegularRule RegularRule::from_regex(std::string source, const Alphabet &alphabet) {
  Nfa nfa = parse_regex(source, alphabet);
  return RegularRule(std::move(source), std::move(nfa));
}

GameError::GameError(std::vector<std::string> violations)
    : Error(join(violations, "; ")), violations_(std::move(violations)) {}

Game::Game(Alphabet alphabet, std::vector<Symbol> functions, std::map<Symbol, ReplacementLang> rules,
           std::string target_source, Nfa target)
    : alphabet_(std::move(alphabet)), functions_(std::move(functions)), is_function_(alphabet_.size(), false),
      rules_(std::move(rules)), target_source_(std::move(target_source)), target_(std::move(target)),
      target_dfa_(determinize(target_)) {
  for (Symbol f : functions_)
    if (f < is_function_.size())
      is_function_[f] = true;
}

const ReplacementLang &Game::rule(Symbol a) const {
  auto it = rules_.find(a);
  if (it == rules_.end())
    throw Error("no replacement rule for symbol id " + std::to_string(a));
  return it->second;
}

bool rule_is_finite(const ReplacementLang &rule) {
  if (const auto *r = std::get_if<RegularRule>(&rule))
    return r->finite;
  return true;
}

bool Game::finite_rules() const {
  return std::all_of(rules_.begin(), rules_.end(), [](const auto &kv) { return rule_is_finite(kv.second); });
}

bool rule_contains(const ReplacementLang &rule, const Word &word) {
  if (const auto *f = std::get_if<FiniteRule>(&rule))
    return std::find(f->words.begin(), f->words.end(), word) != f->words.end();
  const auto &r = std::get<RegularRule>(rule);
  for (Symbol s : word)
    if (s >= r.dfa.alphabet_size())
      return false;
  return r.dfa.accepts(word);
}

std::vector<std::string> validate_game(const Game &game) {
  std::vector<std::string> out;
  const Alphabet &sigma = game.alphabet();
  const std::size_t n = sigma.size();
  auto name = [&](Symbol s) { return s < n ? sigma.name(s) : "#" + std::to_string(s); };

  if (sigma.empty())
    out.push_back("alphabet is empty");

  std::set<Symbol> seen;
  for (Symbol f : game.functions()) {
    if (f >= n)
      out.push_back("function symbol " + name(f) + " not declared in alphabet");
    else if (!seen.insert(f).second)
      out.push_back("function symbol " + name(f) + " declared twice");
  }
  for (Symbol f : seen)
    if (!game.rules().count(f))
      out.push_back("missing rule for " + name(f));

  for (const auto &[f, rule] : game.rules()) {
    if (!seen.count(f)) {
      out.push_back("rule for non-function symbol " + name(f));
      continue;
    }
    if (const auto *fin = std::get_if<FiniteRule>(&rule)) {
      if (fin->words.empty())
        out.push_back("replacement language of " + name(f) + " is empty");
      std::set<Word> distinct;
      for (const Word &w : fin->words) {
        for (Symbol s : w)
          if (s >= n)
            out.push_back("rule " + name(f) + " uses undeclared symbol " + name(s));
        if (!distinct.insert(w).second)
          out.push_back("rule " + name(f) + " lists a word twice");
      }
    } else {
      const auto &reg = std::get<RegularRule>(rule);
      if (reg.nfa.alphabet_size() != n)
        out.push_back("rule " + name(f) + " is not over the game alphabet");
      else if (is_empty_language(reg.nfa))
        out.push_back("replacement language of " + name(f) + " is empty");
    }
  }

  if (game.target().alphabet_size() != n)
    out.push_back("target is not over the game alphabet");
  return out;
}

Word parse_word(std::string_view text, const Alphabet &alphabet) {
  std::vector<std::string> tokens = split_ws(text);
  if (tokens.size() == 1 && tokens.front() == kEpsilonToken)
    return {};
  if (tokens.empty())
    throw SyntaxError("empty word; use %e for the empty word", 0);
  Word w;
  for (const std::string &t : tokens) {
    if (t == kEpsilonToken)
      throw SyntaxError("%e must stand alone", 0);
    w.push_back(alphabet.at(t));
  }
  return w;
}

Game parse_game(std::string_view text) {
  struct Line {
    std::size_t number;
    std::string body;
  };
  std::optional<Line> alphabet_line, functions_line, target_line;
  std::vector<Line> rule_lines;

  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++number;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    auto set_once = [&](std::optional<Line> &slot, std::string_view key) {
      if (slot)
        throw SyntaxError("line " + std::to_string(number) + ": duplicate '" + std::string(key) + "' line",
                          number);
      slot = Line{number, std::string(trim(line.substr(key.size())))};
    };
    if (has_prefix(line, "alphabet:"))
      set_once(alphabet_line, "alphabet:");
    else if (has_prefix(line, "functions:"))
      set_once(functions_line, "functions:");
    else if (has_prefix(line, "target:"))
      set_once(target_line, "target:");
    else if (has_prefix(line, "rule ") || has_prefix(line, "rule\t"))
      rule_lines.push_back({number, std::string(trim(line.substr(5)))});
    else
      throw SyntaxError("line " + std::to_string(number) + ": unrecognised line", number);
  }
  if (!alphabet_line)
    throw SyntaxError("missing 'alphabet:' line", number);
  if (!target_line)
    throw SyntaxError("missing 'target:' line", number);

  std::vector<std::string> violations;

  std::vector<std::string> names = split_ws(alphabet_line->body);
  for (const auto &nm : names)
    if (!is_valid_symbol_name(nm))
      throw SyntaxError("line " + std::to_string(alphabet_line->number) + ": invalid symbol name '" + nm + "'",
                        alphabet_line->number);
  std::vector<std::string> unique_names;
  for (const auto &nm : names) {
    if (std::find(unique_names.begin(), unique_names.end(), nm) != unique_names.end())
      violations.push_back("symbol " + nm + " declared twice");
    else
      unique_names.push_back(nm);
  }
  Alphabet sigma(std::move(unique_names));

  std::vector<Symbol> functions;
  if (functions_line) {
    for (const auto &nm : split_ws(functions_line->body)) {
      auto id = sigma.find(nm);
      if (!id)
        violations.push_back("function symbol " + nm + " not declared in alphabet");
      else if (std::find(functions.begin(), functions.end(), *id) != functions.end())
        violations.push_back("function symbol " + nm + " declared twice");
      else
        functions.push_back(*id);
    }
  }

  auto regex_body = [](const Line &l, std::string_view body) -> std::string_view {
    body = trim(body);
    if (!has_prefix(body, "regex") || (body.size() > 5 && body[5] != ' ' && body[5] != '\t'))
      throw SyntaxError("line " + std::to_string(l.number) + ": expected 'regex'", l.number);
    return trim(body.substr(5));
  };
  auto compile = [&](const Line &l, std::string_view source, const std::string &owner) -> std::optional<Nfa> {
    try {
      return parse_regex(source, sigma);
    } catch (const UnknownSymbol &e) {
      violations.push_back(owner + " uses undeclared symbol " + e.symbol());
    } catch (const SyntaxError &e) {
      throw SyntaxError("line " + std::to_string(l.number) + ": " + e.what(), l.number);
    }
    return std::nullopt;
  };

  std::string target_source(regex_body(*target_line, target_line->body));
  std::optional<Nfa> target = compile(*target_line, target_source, "target");

  std::map<Symbol, ReplacementLang> rules;
  std::vector<std::string> failed_rules;
  for (const Line &l : rule_lines) {
    auto colon = l.body.find(':');
    if (colon == std::string::npos)
      throw SyntaxError("line " + std::to_string(l.number) + ": expected 'rule SYM: ...'", l.number);
    std::string head(trim(std::string_view(l.body).substr(0, colon)));
    std::string_view rhs = trim(std::string_view(l.body).substr(colon + 1));
    if (!is_valid_symbol_name(head))
      throw SyntaxError("line " + std::to_string(l.number) + ": invalid rule symbol '" + head + "'", l.number);
    auto id = sigma.find(head);
    if (!id) {
      violations.push_back("rule for undeclared symbol " + head);
      continue;
    }
    if (rules.count(*id)) {
      violations.push_back("duplicate rule for " + head);
      continue;
    }
    const std::string owner = "rule " + head;
    if (has_prefix(rhs, "finite") && (rhs.size() == 6 || rhs[6] == ' ' || rhs[6] == '\t')) {
      FiniteRule fin;
      bool ok = true;
      std::string_view rest = rhs.substr(6);
      std::size_t start = 0;
      for (;;) {
        std::size_t comma = rest.find(',', start);
        std::string_view item = rest.substr(start, comma == std::string_view::npos ? rest.npos : comma - start);
        std::vector<std::string> tokens = split_ws(item);
        if (tokens.empty())
          throw SyntaxError("line " + std::to_string(l.number) + ": empty word in finite rule", l.number);
        Word w;
        if (!(tokens.size() == 1 && tokens.front() == kEpsilonToken)) {
          for (const auto &t : tokens) {
            if (t == kEpsilonToken || !is_valid_symbol_name(t))
              throw SyntaxError("line " + std::to_string(l.number) + ": bad word token '" + t + "'", l.number);
            auto s = sigma.find(t);
            if (!s) {
              violations.push_back(owner + " uses undeclared symbol " + t);
              ok = false;
            } else {
              w.push_back(*s);
            }
          }
        }
        fin.words.push_back(std::move(w));
        if (comma == std::string_view::npos)
          break;
        start = comma + 1;
      }
      if (ok)
        rules.emplace(*id, std::move(fin));
      else
        failed_rules.push_back(head);
    } else {
      std::string source(regex_body(l, rhs));
      if (auto nfa = compile(l, source, owner))
        rules.emplace(*id, RegularRule(std::move(source), std::move(*nfa)));
      else
        failed_rules.push_back(head);
    }
  }

  if (target) {
    Game game(std::move(sigma), std::move(functions), std::move(rules), std::move(target_source),
              std::move(*target));
    for (std::string &v : validate_game(game)) {
      bool covered = std::any_of(failed_rules.begin(), failed_rules.end(),
                                 [&](const std::string &f) { return v == "missing rule for " + f; });
      if (!covered)
        violations.push_back(std::move(v));
    }
    if (violations.empty())
      return game;
  }
  throw GameError(std::move(violations));
}

std::string render_rule(const Game &game, Symbol f) {
  const ReplacementLang &rule = game.rule(f);
  std::string out = "rule " + game.alphabet().name(f) + ": ";
  if (const auto *fin = std::get_if<FiniteRule>(&rule)) {
    std::vector<std::string> words;
    for (const Word &w : fin->words)
      words.push_back(render_word(w, game.alphabet()));
    return out + "finite " + join(words, " , ");
  }
  return out + "regex " + std::get<RegularRule>(rule).source;
}

std::string render_game(const Game &game) {
  std::string out = "alphabet: " + join(game.alphabet().names(), " ") + "\n";
  std::vector<std::string> fnames;
  for (Symbol f : game.functions())
    fnames.push_back(game.alphabet().name(f));
  out += "functions:" + (fnames.empty() ? std::string() : " " + join(fnames, " ")) + "\n";
  out += "target: regex " + game.target_source() + "\n";
  for (Symbol f : game.functions())
    out += render_rule(game, f) + "\n";
  return out;
}

} // namespace cfgame
