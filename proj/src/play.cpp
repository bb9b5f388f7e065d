#include "cfgame/play.hpp"

#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace cfgame {

namespace {

struct QuitSession {};

std::optional<std::string> read_command(std::istream &in) {
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (ls >> first)
      return line;
  }
  return std::nullopt;
}

std::pair<std::string, std::string> split_command(const std::string &line) {
  std::istringstream ls(line);
  std::string head;
  ls >> head;
  std::string rest;
  std::getline(ls, rest);
  return {head, rest};
}

} // namespace

std::string render_cursor(const LrConfig &cfg, const Alphabet &alphabet) {
  std::string out;
  for (std::size_t i = 0; i < cfg.word.size(); ++i) {
    if (i)
      out += ' ';
    const std::string &nm = alphabet.name(cfg.word[i]);
    out += i == cfg.cursor ? "[" + nm + "]" : nm;
  }
  if (cfg.cursor >= cfg.word.size())
    out += out.empty() ? "[]" : " []";
  return out;
}

SessionResult run_play_session(const Game &game, const EffectTable &table, const Word &word, PlayRole role,
                               std::istream &in, std::ostream &out, const PlayOptions &options) {
  const Alphabet &sigma = game.alphabet();

  JulietPolicy juliet;
  RomeoPolicy romeo;

  if (role == PlayRole::Juliet) {
    auto stopping = std::make_shared<bool>(false);
    juliet = [&, stopping](const LrConfig &cfg, const Trace &) -> Move {
      if (cfg.cursor == cfg.word.size())
        return Move::stop();
      if (*stopping)
        return Move::read();
      const bool can_call = game.is_function(cfg.word[cfg.cursor]);
      for (;;) {
        out << "WORD " << render_cursor(cfg, sigma) << "\n";
        out << "MOVES read" << (can_call ? " call" : "") << " stop quit\n";
        auto line = read_command(in);
        if (!line)
          throw QuitSession{};
        auto [cmd, rest] = split_command(*line);
        if (cmd == "quit")
          throw QuitSession{};
        if (cmd == "read")
          return Move::read();
        if (cmd == "stop") {
          *stopping = true;
          return Move::read();
        }
        if (cmd == "call" && can_call)
          return Move::call(cfg.cursor);
        out << "ERROR " << (cmd == "call" ? "call is not available here" : "unknown command '" + cmd + "'")
            << "\n";
      }
    };
    romeo = [&](const LrConfig &cfg, Symbol a, const Trace &) {
      Word r = worst_case_reply(game, table, cfg, options.romeo_len_bound);
      out << "ROMEO " << sigma.name(a) << " -> " << render_word(r, sigma) << "\n";
      return r;
    };
  } else {
    std::optional<EffectStrategy> strategy;
    try {
      strategy.emplace(game, table, word);
    } catch (const Error &) {
      out << "NOTE word is not safely rewritable; engine Juliet only reads\n";
    }
    JulietPolicy engine = strategy ? strategy->policy() : always_read_policy();
    juliet = [&, engine](const LrConfig &cfg, const Trace &trace) {
      Move m = engine(cfg, trace);
      if (m.kind != MoveKind::Stop) {
        out << "WORD " << render_cursor(cfg, sigma) << "\n";
        out << "JULIET " << to_string(m) << "\n";
      }
      return m;
    };
    romeo = [&](const LrConfig &, Symbol a, const Trace &) -> Word {
      for (;;) {
        out << "RULE " << render_rule(game, a) << "\n";
        out << "MOVES pick <word> quit\n";
        auto line = read_command(in);
        if (!line)
          throw QuitSession{};
        auto [cmd, rest] = split_command(*line);
        if (cmd == "quit")
          throw QuitSession{};
        if (cmd != "pick") {
          out << "ERROR unknown command '" << cmd << "'\n";
          continue;
        }
        try {
          Word r = parse_word(rest, sigma);
          if (rule_contains(game.rule(a), r))
            return r;
          out << "ERROR " << render_word(r, sigma) << " is not a replacement of " << sigma.name(a) << "\n";
        } catch (const Error &e) {
          out << "ERROR " << e.what() << "\n";
        }
      }
    };
  }

  SessionResult session;
  try {
    PlayResult play = simulate_play(game, word, PlayMode::lr(), juliet, romeo, options.move_cap);
    if (play.move_cap_hit)
      out << "NOTE move cap reached\n";
    out << "END " << render_word(play.final_config.word, sigma) << "\n";
    session.completed = true;
    session.juliet_won = play.outcome == Outcome::Win;
    out << "RESULT " << (session.juliet_won ? "WIN" : "LOSE") << "\n";
  } catch (const QuitSession &) {
    out << "QUIT\n";
  }
  return session;
}

} // namespace cfgame
