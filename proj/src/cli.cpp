#include "cfgame/cli.hpp"

#include "cfgame/automaton.hpp"
#include "cfgame/play.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cfgame {

namespace {

Game load_game(const std::string &path) {
  std::ifstream file(path);
  if (!file)
    throw Error("cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_game(buffer.str());
}

// All words over the alphabet up to max_len, shortlex.
std::vector<Word> all_words(std::size_t alphabet_size, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t level_start = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i) {
      for (Symbol a = 0; a < alphabet_size; ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    level_start = level_end;
  }
  return out;
}

int verdict_exit(Outcome outcome, std::ostream &out) {
  switch (outcome) {
  case Outcome::Win: out << "SAFE\n"; return exit_code::kSafe;
  case Outcome::Lose: out << "UNSAFE\n"; return exit_code::kUnsafe;
  case Outcome::Unknown: out << "UNKNOWN\n"; return exit_code::kUnknown;
  }
  return exit_code::kUsage;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
  CLI::App app{"Context-free rewriting games: left-to-right safety engine", "cfgame"};
  app.require_subcommand(1);

  std::string file;
  std::string word_text;

  auto *validate = app.add_subcommand("validate", "Parse and validate a game file");
  validate->add_option("FILE", file, "Game file")->required();

  std::string mode = "effects";
  std::size_t k = 1;
  std::size_t budget = kDefaultBudget;
  std::size_t romeo_len = kDefaultRomeoLen;
  auto *decide = app.add_subcommand("decide", "Decide whether a word is safely rewritable left to right");
  decide->add_option("FILE", file, "Game file")->required();
  decide->add_option("--word", word_text, "Word, space separated, or %e")->required();
  decide->add_option("--mode", mode, "effects | lr-oracle | any-oracle | multipass")
      ->check(CLI::IsMember({"effects", "lr-oracle", "any-oracle", "multipass"}));
  auto *k_opt = decide->add_option("--k", k, "Left steps for multipass mode");
  decide->add_option("--budget", budget, "Call budget for oracle modes");
  decide->add_option("--romeo-len", romeo_len, "Length bound for infinite replacement languages");

  std::string dot_path;
  std::size_t limit = kDefaultStateLimit;
  auto *automaton = app.add_subcommand("automaton", "Build the safe left-to-right automaton");
  automaton->add_option("FILE", file, "Game file")->required();
  automaton->add_option("--dot", dot_path, "Write Graphviz output to PATH");
  automaton->add_option("--limit", limit, "State limit")->check(CLI::PositiveNumber);

  std::size_t max_len = 0;
  auto *compare = app.add_subcommand("compare", "List words safe in general but not left to right");
  compare->add_option("FILE", file, "Game file")->required();
  compare->add_option("--max-len", max_len, "Maximum word length")->required();
  compare->add_option("--budget", budget, "Call budget for the any-order oracle")->required();

  std::uint64_t seed = 0;
  GenParams params;
  auto *gen = app.add_subcommand("gen", "Print a random game");
  gen->add_option("--seed", seed, "Random seed")->required();
  gen->add_option("--symbols", params.n_symbols, "Alphabet size")->check(CLI::PositiveNumber);
  gen->add_option("--functions", params.n_functions, "Number of function symbols");
  gen->add_option("--rule-words", params.rule_words, "Words per rule")->check(CLI::PositiveNumber);
  gen->add_option("--max-rule-len", params.max_rule_len, "Maximum replacement word length");
  gen->add_flag("--regular", params.regular, "Emit regular (starred) rules");
  gen->add_option("--target-depth", params.target_depth, "Target regex depth");

  std::string role = "juliet";
  auto *play = app.add_subcommand("play", "Play interactively against the engine");
  play->add_option("FILE", file, "Game file")->required();
  play->add_option("--word", word_text, "Starting word")->required();
  play->add_option("--as", role, "Side played by the human")->required()->check(CLI::IsMember({"juliet", "romeo"}));
  play->add_option("--seed", seed, "Accepted for scripting; the engine is deterministic");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (k_opt->count() > 0 && mode != "multipass")
      throw CLI::ValidationError("--k", "only valid with --mode multipass");
    if (gen->parsed() && params.n_functions > params.n_symbols)
      throw CLI::ValidationError("--functions", "must not exceed --symbols");
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code::kUsage;
  }

  try {
    if (validate->parsed()) {
      Game g = load_game(file);
      out << "VALID\n";
      return exit_code::kSafe;
    }

    if (decide->parsed()) {
      Game g = load_game(file);
      Word w = parse_word(word_text, g.alphabet());
      if (mode == "effects")
        return verdict_exit(decide_lr(g, w) ? Outcome::Win : Outcome::Lose, out);
      if (mode == "lr-oracle")
        return verdict_exit(solve_lr_bounded(g, w, budget, romeo_len).outcome, out);
      if (mode == "any-oracle")
        return verdict_exit(solve_any_order_bounded(g, w, budget, romeo_len).outcome, out);
      return verdict_exit(solve_multipass_bounded(g, w, k, budget, romeo_len).outcome, out);
    }

    if (automaton->parsed()) {
      Game g = load_game(file);
      SafeLrAutomaton aut = build_safelr_automaton(g, limit);
      if (!dot_path.empty()) {
        std::ofstream dot(dot_path);
        if (!dot)
          throw Error("cannot write " + dot_path);
        dot << export_dot(aut, g.alphabet());
      }
      out << "STATES " << aut.num_states() << "\n";
      return exit_code::kSafe;
    }

    if (compare->parsed()) {
      Game g = load_game(file);
      EffectTable table = compute_effect_table(g);
      std::size_t total = 0;
      for (const Word &w : all_words(g.alphabet().size(), max_len)) {
        if (decide_lr(g, table, w))
          continue;
        if (solve_any_order_bounded(g, w, budget).outcome == Outcome::Win) {
          out << "WITNESS " << render_word(w, g.alphabet()) << "\n";
          ++total;
        }
      }
      out << "TOTAL " << total << "\n";
      return exit_code::kSafe;
    }

    if (gen->parsed()) {
      out << render_game(random_game(seed, params));
      return exit_code::kSafe;
    }

    if (play->parsed()) {
      Game g = load_game(file);
      Word w = parse_word(word_text, g.alphabet());
      EffectTable table = compute_effect_table(g);
      run_play_session(g, table, w, role == "juliet" ? PlayRole::Juliet : PlayRole::Romeo, in, out);
      return exit_code::kSafe;
    }
  } catch (const StateLimitExceeded &e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kStateLimit;
  } catch (const GameError &e) {
    out << "INVALID\n";
    for (const std::string &v : e.violations())
      err << v << "\n";
    return exit_code::kUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }
  return exit_code::kUsage;
}

} // namespace cfgame
