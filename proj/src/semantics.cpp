#include "cfgame/semantics.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace cfgame {

std::string to_string(const Move &move) {
  switch (move.kind) {
  case MoveKind::Read: return "read";
  case MoveKind::Call: return "call";
  case MoveKind::LeftStep: return "left";
  case MoveKind::Stop: return "stop";
  }
  return "?";
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
  case Outcome::Win: return "Win";
  case Outcome::Lose: return "Lose";
  case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

LrConfig initial_config(const Game &game, Word word, std::size_t left_steps) {
  for (Symbol s : word)
    if (s >= game.alphabet().size())
      throw UnknownSymbol("#" + std::to_string(s));
  return LrConfig{std::move(word), 0, game.target_dfa().initial(), 0, left_steps};
}

ReplyTable romeo_replies(const Game &game, std::size_t romeo_len_bound) {
  const std::size_t n = game.alphabet().size();
  ReplyTable table{std::vector<std::vector<Word>>(n), std::vector<bool>(n, true)};
  for (const auto &[f, rule] : game.rules()) {
    if (const auto *fin = std::get_if<FiniteRule>(&rule)) {
      table.replies[f] = fin->words;
      continue;
    }
    const auto &reg = std::get<RegularRule>(rule);
    if (reg.finite) {
      table.replies[f] = enumerate_words(reg.dfa, longest_word_length(reg.dfa).value_or(0));
    } else {
      table.replies[f] = enumerate_words(reg.dfa, romeo_len_bound);
      table.exhaustive[f] = false;
    }
  }
  return table;
}

LrConfig apply_read(const Game &game, const LrConfig &cfg) {
  if (cfg.cursor >= cfg.word.size())
    throw IllegalMove("read at end of word");
  LrConfig next = cfg;
  next.state = game.target_dfa().step(cfg.state, cfg.word[cfg.cursor]);
  ++next.cursor;
  return next;
}

namespace {

LrConfig splice(const LrConfig &cfg, std::size_t position, const Word &replacement) {
  LrConfig next;
  next.word.reserve(cfg.word.size() + replacement.size());
  next.word.insert(next.word.end(), cfg.word.begin(), cfg.word.begin() + static_cast<std::ptrdiff_t>(position));
  next.word.insert(next.word.end(), replacement.begin(), replacement.end());
  next.word.insert(next.word.end(), cfg.word.begin() + static_cast<std::ptrdiff_t>(position) + 1, cfg.word.end());
  next.cursor = cfg.cursor;
  next.state = cfg.state;
  next.calls_used = cfg.calls_used + 1;
  next.left_steps = cfg.left_steps;
  return next;
}

} // namespace

LrConfig apply_reply(const Game &game, const LrConfig &cfg, const Word &replacement) {
  if (cfg.cursor >= cfg.word.size())
    throw IllegalMove("call at end of word");
  Symbol a = cfg.word[cfg.cursor];
  if (!game.is_function(a))
    throw IllegalMove("call on non-function symbol " + game.alphabet().name(a));
  if (!rule_contains(game.rule(a), replacement))
    throw IllegalMove("replacement " + render_word(replacement, game.alphabet()) + " not in the language of " +
                      game.alphabet().name(a));
  return splice(cfg, cfg.cursor, replacement);
}

std::vector<Successors> lr_successors(const Game &game, const LrConfig &cfg, const ReplyTable &replies) {
  if (cfg.cursor >= cfg.word.size())
    throw IllegalMove("cursor at end of word");
  std::vector<Successors> out;
  out.push_back({Move::read(), {apply_read(game, cfg)}});
  Symbol a = cfg.word[cfg.cursor];
  if (game.is_function(a)) {
    Successors call{Move::call(), {}};
    for (const Word &r : replies.of(a))
      call.configs.push_back(splice(cfg, cfg.cursor, r));
    out.push_back(std::move(call));
  }
  return out;
}

std::vector<Successors> lr_successors(const Game &game, const LrConfig &cfg, std::size_t romeo_len_bound) {
  return lr_successors(game, cfg, romeo_replies(game, romeo_len_bound));
}

// ---------------------------------------------------------------------------
// Bounded alternating search

namespace {

using Key = std::vector<std::uint32_t>;

struct KeyHash {
  std::size_t operator()(const Key &k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t x : k) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

// Budget-indexed knowledge about one position. A Win at budget b holds at
// every larger budget; a Lose is only recorded when no branch of the
// refutation ran out of budget, so it too is stable upward.
struct MemoEntry {
  std::size_t win_budget = kNever;
  Move win_move;
  std::size_t lose_budget = kNever;
  bool has_unknown = false;
  std::size_t unknown_budget = 0;
};

template <typename Node> struct Option {
  Move move;
  bool terminal = false;
  bool terminal_win = false;
  bool is_call = false;
  bool exhaustive = true;
  std::vector<Node> next;
  std::vector<Word> replies; // parallel to `next` for calls
};

template <typename Rules> class BoundedSearch {
public:
  using Node = typename Rules::Node;

  explicit BoundedSearch(Rules rules) : rules_(std::move(rules)) {}

  Outcome eval(const Node &node, std::size_t budget) {
    MemoEntry &entry = memo_[rules_.key(node)];
    if (entry.lose_budget <= budget)
      return Outcome::Lose;
    if (entry.win_budget <= budget)
      return Outcome::Win;
    if (entry.has_unknown && entry.unknown_budget >= budget)
      return Outcome::Unknown;

    bool unknown = false;
    for (const Option<Node> &opt : rules_.options(node)) {
      Outcome v;
      if (opt.terminal)
        v = opt.terminal_win ? Outcome::Win : Outcome::Lose;
      else if (!opt.is_call)
        v = eval(opt.next.front(), budget);
      else if (budget == 0)
        v = Outcome::Unknown;
      else
        v = romeo(opt, budget - 1);

      if (v == Outcome::Win) {
        // A nested visit may already have won with less budget; keep it.
        if (budget < entry.win_budget) {
          entry.win_budget = budget;
          entry.win_move = opt.move;
        }
        return Outcome::Win;
      }
      if (v == Outcome::Unknown)
        unknown = true;
    }
    if (unknown) {
      entry.has_unknown = true;
      entry.unknown_budget = std::max(entry.unknown_budget, budget);
      return Outcome::Unknown;
    }
    entry.lose_budget = std::min(entry.lose_budget, budget);
    return Outcome::Lose;
  }

  /// Unrolls the memoized winning moves below a winning node.
  StrategyCert certificate(const Node &root, std::size_t budget) {
    StrategyCert cert;
    build(cert, root, budget);
    cert.compute_bounds();
    return cert;
  }

private:
  Outcome romeo(const Option<Node> &opt, std::size_t budget) {
    bool unknown = !opt.exhaustive;
    for (const Node &child : opt.next) {
      Outcome v = eval(child, budget);
      if (v == Outcome::Lose)
        return Outcome::Lose;
      if (v == Outcome::Unknown)
        unknown = true;
    }
    return unknown ? Outcome::Unknown : Outcome::Win;
  }

  std::size_t build(StrategyCert &cert, const Node &node, std::size_t budget) {
    const MemoEntry &entry = memo_.at(rules_.key(node));
    if (entry.win_budget > budget)
      throw std::logic_error("certificate requested for a non-winning position");
    std::size_t index = cert.nodes.size();
    cert.nodes.push_back({entry.win_move, 0, {}});
    bool matched = false;
    for (Option<Node> &opt : rules_.options(node)) {
      if (!(opt.move == entry.win_move))
        continue;
      matched = true;
      if (opt.terminal)
        break;
      if (!opt.is_call) {
        std::size_t child = build(cert, opt.next.front(), budget);
        cert.nodes[index].next = child;
      } else {
        for (std::size_t i = 0; i < opt.next.size(); ++i) {
          std::size_t child = build(cert, opt.next[i], budget - 1);
          cert.nodes[index].replies.emplace_back(std::move(opt.replies[i]), child);
        }
      }
      break;
    }
    if (!matched)
      throw std::logic_error("memoized move not available at this position");
    return index;
  }

  Rules rules_;
  std::unordered_map<Key, MemoEntry, KeyHash> memo_;
};

// Left-to-right play with optional left steps. Without remaining left
// steps the future only depends on the prefix state and the unread suffix.
struct LrRules {
  using Node = LrConfig;

  const Game *game;
  const ReplyTable *replies;

  Key key(const LrConfig &cfg) const {
    Key k;
    if (cfg.left_steps == 0) {
      k.reserve(cfg.word.size() - cfg.cursor + 2);
      k.push_back(0);
      k.push_back(cfg.state);
      k.insert(k.end(), cfg.word.begin() + static_cast<std::ptrdiff_t>(cfg.cursor), cfg.word.end());
    } else {
      k.reserve(cfg.word.size() + 2);
      k.push_back(static_cast<std::uint32_t>(cfg.left_steps + 1));
      k.push_back(static_cast<std::uint32_t>(cfg.cursor));
      k.insert(k.end(), cfg.word.begin(), cfg.word.end());
    }
    return k;
  }

  std::vector<Option<LrConfig>> options(const LrConfig &cfg) const {
    std::vector<Option<LrConfig>> out;
    if (cfg.cursor == cfg.word.size()) {
      Option<LrConfig> stop;
      stop.move = Move::stop();
      stop.terminal = true;
      stop.terminal_win = game->target_dfa().is_final(cfg.state);
      out.push_back(std::move(stop));
      if (cfg.left_steps > 0) {
        Option<LrConfig> left;
        left.move = Move::left_step();
        LrConfig next = cfg;
        next.cursor = 0;
        next.state = game->target_dfa().initial();
        --next.left_steps;
        left.next.push_back(std::move(next));
        out.push_back(std::move(left));
      }
      return out;
    }
    for (Successors &s : lr_successors(*game, cfg, *replies)) {
      Option<LrConfig> opt;
      opt.move = s.move;
      opt.is_call = s.move.kind == MoveKind::Call;
      if (opt.is_call) {
        Symbol a = cfg.word[cfg.cursor];
        opt.exhaustive = replies->exhaustive[a];
        opt.replies = replies->of(a);
      }
      opt.next = std::move(s.configs);
      out.push_back(std::move(opt));
    }
    return out;
  }
};

// Unrestricted play: Juliet calls any function occurrence or stops.
struct AnyOrderRules {
  using Node = LrConfig; // only `word` is used

  const Game *game;
  const ReplyTable *replies;

  Key key(const LrConfig &cfg) const { return Key(cfg.word.begin(), cfg.word.end()); }

  std::vector<Option<LrConfig>> options(const LrConfig &cfg) const {
    std::vector<Option<LrConfig>> out;
    Option<LrConfig> stop;
    stop.move = Move::stop();
    stop.terminal = true;
    stop.terminal_win = game->target_dfa().accepts(cfg.word);
    out.push_back(std::move(stop));
    for (std::size_t i = 0; i < cfg.word.size(); ++i) {
      Symbol a = cfg.word[i];
      if (!game->is_function(a))
        continue;
      Option<LrConfig> call;
      call.move = Move::call(i);
      call.is_call = true;
      call.exhaustive = replies->exhaustive[a];
      call.replies = replies->of(a);
      for (const Word &r : call.replies)
        call.next.push_back(splice(cfg, i, r));
      out.push_back(std::move(call));
    }
    return out;
  }
};

template <typename Rules>
Verdict run_search(Rules rules, const LrConfig &root, std::size_t budget) {
  BoundedSearch<Rules> search(std::move(rules));
  Verdict verdict;
  verdict.outcome = search.eval(root, budget);
  if (verdict.outcome == Outcome::Win)
    verdict.certificate = search.certificate(root, budget);
  return verdict;
}

} // namespace

Verdict solve_lr_bounded(const Game &game, const Word &word, std::size_t budget, std::size_t romeo_len_bound) {
  return solve_multipass_bounded(game, word, 0, budget, romeo_len_bound);
}

Verdict solve_multipass_bounded(const Game &game, const Word &word, std::size_t k, std::size_t budget,
                                std::size_t romeo_len_bound) {
  LrConfig root = initial_config(game, word, k);
  ReplyTable replies = romeo_replies(game, romeo_len_bound);
  return run_search(LrRules{&game, &replies}, root, budget);
}

Verdict solve_any_order_bounded(const Game &game, const Word &word, std::size_t budget,
                                std::size_t romeo_len_bound) {
  LrConfig root = initial_config(game, word);
  ReplyTable replies = romeo_replies(game, romeo_len_bound);
  return run_search(AnyOrderRules{&game, &replies}, root, budget);
}

void StrategyCert::compute_bounds() {
  move_bound = 0;
  call_bound = 0;
  if (nodes.empty())
    return;
  // (node, moves so far, calls so far)
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> stack{{0, 0, 0}};
  while (!stack.empty()) {
    auto [i, moves, calls] = stack.back();
    stack.pop_back();
    const Node &n = nodes[i];
    switch (n.move.kind) {
    case MoveKind::Stop:
      move_bound = std::max(move_bound, moves);
      call_bound = std::max(call_bound, calls);
      break;
    case MoveKind::Read:
    case MoveKind::LeftStep:
      stack.emplace_back(n.next, moves + 1, calls);
      break;
    case MoveKind::Call:
      for (const auto &[w, child] : n.replies)
        stack.emplace_back(child, moves + 1, calls + 1);
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// Simulation

PlayResult simulate_play(const Game &game, const Word &word, PlayMode mode, const JulietPolicy &juliet,
                         const RomeoPolicy &romeo, std::size_t move_cap) {
  PlayResult result;
  LrConfig cfg = initial_config(game, word, mode.kind == PlayKind::LeftToRight ? mode.left_steps : 0);
  std::size_t moves = 0;
  const bool any_order = mode.kind == PlayKind::AnyOrder;

  for (;;) {
    if (moves >= move_cap) {
      result.outcome = Outcome::Lose;
      result.move_cap_hit = true;
      break;
    }
    const bool at_end = cfg.cursor == cfg.word.size();
    if (at_end && !any_order && cfg.left_steps == 0) {
      result.outcome = game.target_dfa().is_final(cfg.state) ? Outcome::Win : Outcome::Lose;
      break;
    }
    Move m = juliet(cfg, result.trace);
    std::size_t call_pos = any_order ? m.position : cfg.cursor;

    bool legal = false;
    switch (m.kind) {
    case MoveKind::Stop: legal = any_order || at_end; break;
    case MoveKind::Read: legal = !any_order && !at_end; break;
    case MoveKind::LeftStep: legal = !any_order && at_end && cfg.left_steps > 0; break;
    case MoveKind::Call:
      legal = call_pos < cfg.word.size() && game.is_function(cfg.word[call_pos]) && (any_order || !at_end);
      break;
    }
    if (!legal)
      throw IllegalMove("illegal move '" + to_string(m) + "' in configuration '" +
                        render_word(cfg.word, game.alphabet()) + "' at " + std::to_string(cfg.cursor));

    result.trace.push_back({TraceStep::Actor::Juliet, cfg, m, {}});
    if (m.kind == MoveKind::Stop) {
      result.outcome = game.target_dfa().accepts(cfg.word) ? Outcome::Win : Outcome::Lose;
      break;
    }
    ++moves;
    if (m.kind == MoveKind::Read) {
      cfg = apply_read(game, cfg);
    } else if (m.kind == MoveKind::LeftStep) {
      cfg.cursor = 0;
      cfg.state = game.target_dfa().initial();
      --cfg.left_steps;
    } else {
      Symbol a = cfg.word[call_pos];
      Word r = romeo(cfg, a, result.trace);
      if (!rule_contains(game.rule(a), r))
        throw IllegalMove("replacement " + render_word(r, game.alphabet()) + " not in the language of " +
                          game.alphabet().name(a));
      result.trace.push_back({TraceStep::Actor::Romeo, cfg, m, r});
      cfg = splice(cfg, call_pos, r);
    }
  }
  result.final_config = cfg;
  return result;
}

std::vector<PlayResult> replay_exhaustive(const Game &game, const Word &word, PlayMode mode,
                                          const JulietPolicy &juliet, const ReplyTable &replies,
                                          std::size_t move_cap, std::size_t max_plays) {
  std::vector<PlayResult> plays;
  std::vector<std::size_t> choices;
  for (;;) {
    std::vector<std::size_t> arity;
    RomeoPolicy romeo = [&](const LrConfig &, Symbol a, const Trace &) {
      const auto &opts = replies.of(a);
      if (opts.empty())
        throw IllegalMove("no enumerated replies for " + game.alphabet().name(a));
      std::size_t depth = arity.size();
      if (depth == choices.size())
        choices.push_back(0);
      arity.push_back(opts.size());
      return opts[choices[depth]];
    };
    plays.push_back(simulate_play(game, word, mode, juliet, romeo, move_cap));
    if (plays.size() >= max_plays)
      break;
    choices.resize(arity.size());
    while (!choices.empty() && choices.back() + 1 >= arity.back()) {
      choices.pop_back();
      arity.pop_back();
    }
    if (choices.empty())
      break;
    ++choices.back();
  }
  return plays;
}

JulietPolicy certificate_policy(const StrategyCert &cert) {
  return [&cert](const LrConfig &, const Trace &trace) {
    std::size_t node = 0;
    for (const TraceStep &step : trace) {
      const StrategyCert::Node &n = cert.nodes.at(node);
      if (step.actor == TraceStep::Actor::Juliet) {
        if (!(step.move == n.move))
          throw IllegalMove("play diverged from certificate");
        if (n.move.kind == MoveKind::Read || n.move.kind == MoveKind::LeftStep)
          node = n.next;
      } else {
        auto it = std::find_if(n.replies.begin(), n.replies.end(),
                               [&](const auto &r) { return r.first == step.replacement; });
        if (it == n.replies.end())
          throw IllegalMove("reply not covered by certificate");
        node = it->second;
      }
    }
    return cert.nodes.at(node).move;
  };
}

JulietPolicy always_read_policy() {
  return [](const LrConfig &cfg, const Trace &) {
    return cfg.cursor < cfg.word.size() ? Move::read() : Move::stop();
  };
}

RomeoPolicy first_reply_policy(const ReplyTable &replies) {
  return [replies](const LrConfig &, Symbol a, const Trace &) { return replies.of(a).front(); };
}

} // namespace cfgame
