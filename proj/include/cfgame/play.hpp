#pragma once

// Line-based play sessions between a human and the engine.
//
// Engine output, one item per line:
//   WORD a [f] b            current word, cursor in brackets
//   MOVES read call stop quit
//   JULIET call             engine Juliet's move
//   ROMEO f -> a b          engine Romeo's reply
//   RULE rule f: finite a , b
//   ERROR <message>         rejected input; the prompt is repeated
//   END <word>
//   RESULT WIN | RESULT LOSE  (from Juliet's point of view)
//   QUIT
// Human input: read, call, stop (read the rest of the word), pick <word>, quit.

#include "cfgame/effects.hpp"

#include <iosfwd>

namespace cfgame {

enum class PlayRole { Juliet, Romeo };

struct PlayOptions {
  std::size_t romeo_len_bound = kDefaultRomeoLen;
  std::size_t move_cap = 1000;
};

struct SessionResult {
  bool completed = false;
  bool juliet_won = false;
};

/// `role` is the side played by the human.
SessionResult run_play_session(const Game &game, const EffectTable &table, const Word &word, PlayRole role,
                               std::istream &in, std::ostream &out, const PlayOptions &options = {});

/// `a [f] b`; a cursor past the end renders as a trailing `[]`.
std::string render_cursor(const LrConfig &cfg, const Alphabet &alphabet);

} // namespace cfgame
