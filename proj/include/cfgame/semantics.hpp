#pragma once

// Ground-truth play semantics and bounded alternating-search solvers.
//
// Juliet moves a cursor over the word. At a symbol she may Read it (the
// processed prefix grows by one letter) or, for a function symbol, Call it:
// Romeo then replaces the symbol by a word of its replacement language and
// the cursor stays put, pointing at the first letter of the replacement.
// A single left-to-right pass ends when the cursor passes the last letter;
// Juliet wins iff the word is then in the target language. Infinite plays
// are lost by Juliet, so the solvers report Unknown when they run out of
// call budget rather than guessing.

#include "cfgame/game.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cfgame {

enum class MoveKind { Read, Call, LeftStep, Stop };

struct Move {
  MoveKind kind = MoveKind::Read;
  /// Position of the called symbol; only meaningful in any-order play.
  std::size_t position = 0;

  static Move read() { return {MoveKind::Read, 0}; }
  static Move call(std::size_t position = 0) { return {MoveKind::Call, position}; }
  static Move left_step() { return {MoveKind::LeftStep, 0}; }
  static Move stop() { return {MoveKind::Stop, 0}; }

  bool operator==(const Move &) const = default;
};

std::string to_string(const Move &move);

struct LrConfig {
  Word word;
  std::size_t cursor = 0;
  /// Target-DFA state of word[0..cursor).
  State state = 0;
  std::size_t calls_used = 0;
  /// Remaining left steps (multipass play only).
  std::size_t left_steps = 0;

  bool operator==(const LrConfig &) const = default;
};

LrConfig initial_config(const Game &game, Word word, std::size_t left_steps = 0);

enum class Outcome { Win, Lose, Unknown };

std::string to_string(Outcome outcome);

/// A Juliet strategy unrolled against every enumerated Romeo reply.
/// Node 0 is the root; Read and LeftStep nodes have one successor, Call
/// nodes one successor per reply, Stop nodes none.
struct StrategyCert {
  struct Node {
    Move move;
    std::size_t next = 0;
    std::vector<std::pair<Word, std::size_t>> replies;
  };

  std::vector<Node> nodes;
  /// Longest play measured in Read, Call and LeftStep moves.
  std::size_t move_bound = 0;
  /// Largest number of calls along any play.
  std::size_t call_bound = 0;
  /// False if some Call node only covers a length-bounded slice of an
  /// infinite replacement language.
  bool complete = true;

  void compute_bounds();
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<StrategyCert> certificate;
};

/// Romeo's enumerated replies per function symbol.
struct ReplyTable {
  std::vector<std::vector<Word>> replies; // indexed by symbol
  std::vector<bool> exhaustive;           // indexed by symbol

  const std::vector<Word> &of(Symbol a) const { return replies.at(a); }
};

/// Finite rules (declared or detected) are enumerated completely; infinite
/// regular rules up to `romeo_len_bound` letters and flagged non-exhaustive.
ReplyTable romeo_replies(const Game &game, std::size_t romeo_len_bound);

struct Successors {
  Move move;
  std::vector<LrConfig> configs;
};

/// One-step expansion of a left-to-right configuration with cursor < |word|.
std::vector<Successors> lr_successors(const Game &game, const LrConfig &cfg, std::size_t romeo_len_bound);
std::vector<Successors> lr_successors(const Game &game, const LrConfig &cfg, const ReplyTable &replies);

/// Applies a single Juliet move or Romeo reply. Throws IllegalMove.
LrConfig apply_read(const Game &game, const LrConfig &cfg);
LrConfig apply_reply(const Game &game, const LrConfig &cfg, const Word &replacement);

class IllegalMove : public Error {
public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultBudget = 10;
inline constexpr std::size_t kDefaultRomeoLen = 6;

Verdict solve_lr_bounded(const Game &game, const Word &word, std::size_t budget,
                         std::size_t romeo_len_bound = kDefaultRomeoLen);
Verdict solve_any_order_bounded(const Game &game, const Word &word, std::size_t budget,
                                std::size_t romeo_len_bound = kDefaultRomeoLen);
Verdict solve_multipass_bounded(const Game &game, const Word &word, std::size_t k, std::size_t budget,
                                std::size_t romeo_len_bound = kDefaultRomeoLen);

// ---------------------------------------------------------------------------
// Play simulation

enum class PlayKind { LeftToRight, AnyOrder };

struct PlayMode {
  PlayKind kind = PlayKind::LeftToRight;
  /// Left steps available in left-to-right play.
  std::size_t left_steps = 0;

  static PlayMode lr(std::size_t left_steps = 0) { return {PlayKind::LeftToRight, left_steps}; }
  static PlayMode any_order() { return {PlayKind::AnyOrder, 0}; }
};

struct TraceStep {
  enum class Actor { Juliet, Romeo };
  Actor actor;
  LrConfig config; // configuration before the step
  Move move;       // Juliet's move, or the Call being answered
  Word replacement;
};

using Trace = std::vector<TraceStep>;

/// Juliet is asked for a move at every decision point. At the end of a
/// left-to-right pass she is only asked while left steps remain (Stop or
/// LeftStep); otherwise the play ends there.
using JulietPolicy = std::function<Move(const LrConfig &, const Trace &)>;
/// Romeo answers a Call on `called` with a replacement word.
using RomeoPolicy = std::function<Word(const LrConfig &, Symbol called, const Trace &)>;

struct PlayResult {
  Outcome outcome = Outcome::Lose; // Win or Lose
  Trace trace;
  LrConfig final_config;
  bool move_cap_hit = false;
};

inline constexpr std::size_t kDefaultMoveCap = 10000;

/// Plays one game. A play exceeding `move_cap` Juliet moves is lost.
/// Throws IllegalMove if a policy returns an illegal move or reply.
PlayResult simulate_play(const Game &game, const Word &word, PlayMode mode, const JulietPolicy &juliet,
                         const RomeoPolicy &romeo, std::size_t move_cap = kDefaultMoveCap);

/// Replays `juliet` against every sequence of enumerated Romeo replies.
/// Stops after `max_plays` plays.
std::vector<PlayResult> replay_exhaustive(const Game &game, const Word &word, PlayMode mode,
                                          const JulietPolicy &juliet, const ReplyTable &replies,
                                          std::size_t move_cap = kDefaultMoveCap,
                                          std::size_t max_plays = 1000000);

/// Follows a certificate; throws IllegalMove if the play leaves the tree.
JulietPolicy certificate_policy(const StrategyCert &cert);

JulietPolicy always_read_policy();
RomeoPolicy first_reply_policy(const ReplyTable &replies);

} // namespace cfgame
