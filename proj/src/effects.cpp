#include "cfgame/effects.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <set>
#include <stdexcept>
#include <tuple>

namespace cfgame {

StateSet StateSet::singleton(State q) {
  StateSet s;
  s.insert(q);
  return s;
}

StateSet StateSet::of(std::initializer_list<State> states) {
  StateSet s;
  for (State q : states)
    s.insert(q);
  return s;
}

void StateSet::insert(State q) {
  if (q >= kMaxStates)
    throw Error("state " + std::to_string(q) + " exceeds the 64-state limit of effect sets");
  bits_ |= std::uint64_t{1} << q;
}

std::vector<State> StateSet::states() const {
  std::vector<State> out;
  for (std::uint64_t b = bits_; b; b &= b - 1)
    out.push_back(static_cast<State>(std::countr_zero(b)));
  return out;
}

bool canonical_less(StateSet a, StateSet b) {
  if (a.size() != b.size())
    return a.size() < b.size();
  if (a == b)
    return false;
  // The lowest differing state decides the lexicographic comparison.
  std::uint64_t diff = a.bits() ^ b.bits();
  return (a.bits() & (diff & (~diff + 1))) != 0;
}

namespace {

// Minimal elements in canonical order. Sorting by size first means every
// proper subset of a set is examined before the set itself.
std::vector<StateSet> minimize(std::vector<StateSet> sets) {
  std::sort(sets.begin(), sets.end(), canonical_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<StateSet> kept;
  for (StateSet s : sets) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](StateSet k) { return k.subset_of(s); });
    if (!dominated)
      kept.push_back(s);
  }
  return kept;
}

} // namespace

Antichain Antichain::reduce(std::vector<StateSet> sets) {
  for (StateSet s : sets)
    if (s.empty())
      throw Error("empty guarantee set");
  Antichain a;
  a.sets_ = minimize(std::move(sets));
  return a;
}

bool Antichain::has_subset_of(StateSet bound) const {
  return std::any_of(sets_.begin(), sets_.end(), [&](StateSet s) { return s.subset_of(bound); });
}

bool Antichain::refines(const Antichain &other) const {
  return std::all_of(other.sets_.begin(), other.sets_.end(), [&](StateSet o) { return has_subset_of(o); });
}

bool Antichain::operator<(const Antichain &other) const {
  return std::lexicographical_compare(sets_.begin(), sets_.end(), other.sets_.begin(), other.sets_.end(),
                                      [](StateSet a, StateSet b) { return a.bits() < b.bits(); });
}

Antichain antichain_reduce(std::vector<StateSet> sets) { return Antichain::reduce(std::move(sets)); }

Antichain min_union_choices(const std::vector<const Antichain *> &families) {
  if (families.empty())
    return {};
  // Folding family by family and minimising in between is exact: a
  // dominated partial union can only produce dominated final unions.
  std::vector<StateSet> acc{StateSet{}};
  for (const Antichain *family : families) {
    std::vector<StateSet> next;
    next.reserve(acc.size() * family->size());
    for (StateSet u : acc)
      for (StateSet s : *family)
        next.push_back(u | s);
    acc = minimize(std::move(next));
  }
  return Antichain::reduce(std::move(acc));
}

Effect identity_effect(std::size_t num_states) {
  Effect e;
  for (State q = 0; q < num_states; ++q)
    e.by_state.push_back(Antichain::singleton(StateSet::singleton(q)));
  return e;
}

Effect read_effect(const Dfa &dfa, Symbol a) {
  if (a >= dfa.alphabet_size())
    throw UnknownSymbol("#" + std::to_string(a));
  Effect e;
  for (State q = 0; q < dfa.num_states(); ++q)
    e.by_state.push_back(Antichain::singleton(StateSet::singleton(dfa.step(q, a))));
  return e;
}

Antichain post(const Antichain &from, const Effect &e) {
  std::vector<StateSet> all;
  std::vector<const Antichain *> families;
  for (StateSet s : from) {
    families.clear();
    for (State p : s.states())
      families.push_back(&e[p]);
    const Antichain unions = min_union_choices(families);
    all.insert(all.end(), unions.begin(), unions.end());
  }
  return Antichain::reduce(std::move(all));
}

Effect compose_effects(const Effect &first, const Effect &second) {
  if (first.num_states() != second.num_states())
    throw Error("composing effects over different state spaces");
  Effect out;
  out.by_state.reserve(first.num_states());
  for (const Antichain &a : first.by_state)
    out.by_state.push_back(post(a, second));
  return out;
}

EffectTable::EffectTable(std::size_t num_states, std::vector<std::vector<Effect>> levels,
                         std::size_t iteration_count)
    : num_states_(num_states), levels_(std::move(levels)), iteration_count_(iteration_count) {
  if (levels_.empty())
    throw Error("effect table without levels");
}

namespace {

void check_state_space(const Dfa &dfa) {
  if (dfa.num_states() > StateSet::kMaxStates)
    throw Error("target automaton has " + std::to_string(dfa.num_states()) + " states; effects support at most " +
                std::to_string(StateSet::kMaxStates));
}

Antichain play_word(const std::vector<Effect> &table, const Word &word, State q) {
  Antichain a = Antichain::singleton(StateSet::singleton(q));
  for (Symbol b : word)
    a = post(a, table.at(b));
  return a;
}

} // namespace

Antichain call_guarantees(const Game &game, const std::vector<Effect> &table, Symbol a, State q) {
  if (!game.is_function(a))
    throw Error("call_guarantees on non-function symbol " + game.alphabet().name(a));

  // One antichain per replacement outcome; the caller needs a set T that
  // contains a guarantee from each of them.
  std::set<Antichain> outcomes;
  const ReplacementLang &rule = game.rule(a);
  if (const auto *fin = std::get_if<FiniteRule>(&rule)) {
    for (const Word &r : fin->words)
      outcomes.insert(play_word(table, r, q));
  } else {
    // Product of the rule DFA with the prefix-antichain automaton; every
    // reachable accepting product state contributes its antichain.
    const Dfa &dfa = std::get<RegularRule>(rule).dfa;
    std::set<std::pair<State, Antichain>> seen;
    std::deque<std::pair<State, Antichain>> queue;
    auto push = [&](State d, Antichain ac) {
      if (seen.emplace(d, ac).second)
        queue.emplace_back(d, std::move(ac));
    };
    push(dfa.initial(), Antichain::singleton(StateSet::singleton(q)));
    while (!queue.empty()) {
      auto [d, ac] = std::move(queue.front());
      queue.pop_front();
      if (dfa.is_final(d))
        outcomes.insert(ac);
      for (Symbol b = 0; b < dfa.alphabet_size(); ++b)
        push(dfa.step(d, b), post(ac, table.at(b)));
    }
  }

  std::vector<const Antichain *> families;
  for (const Antichain &o : outcomes)
    families.push_back(&o);
  return min_union_choices(families);
}

Antichain call_guarantees(const Game &game, const EffectTable &table, Symbol a, State q) {
  return call_guarantees(game, table.effects(), a, q);
}

EffectTable compute_effect_table(const Game &game) {
  const Dfa &dfa = game.target_dfa();
  check_state_space(dfa);
  const std::size_t n_sym = game.alphabet().size();

  std::vector<Effect> current;
  for (Symbol a = 0; a < n_sym; ++a)
    current.push_back(read_effect(dfa, a));
  std::vector<std::vector<Effect>> levels{current};

  std::size_t iterations = 0;
  for (;;) {
    ++iterations;
    std::vector<Effect> next = current;
    for (Symbol a : game.functions()) {
      for (State q = 0; q < dfa.num_states(); ++q) {
        Antichain calls = call_guarantees(game, current, a, q);
        std::vector<StateSet> options(calls.begin(), calls.end());
        options.push_back(StateSet::singleton(dfa.step(q, a)));
        next[a].by_state[q] = Antichain::reduce(std::move(options));
      }
    }
    if (next == current)
      break;
    levels.push_back(next);
    current = std::move(next);
  }
  return EffectTable(dfa.num_states(), std::move(levels), iterations);
}

Effect string_effect(const std::vector<Effect> &table, const Word &word) {
  if (table.empty())
    throw Error("empty effect table");
  Effect e = identity_effect(table.front().num_states());
  for (Symbol a : word) {
    if (a >= table.size())
      throw UnknownSymbol("#" + std::to_string(a));
    e = compose_effects(e, table[a]);
  }
  return e;
}

Effect string_effect(const EffectTable &table, const Word &word) { return string_effect(table.effects(), word); }

StateSet winning_states(const std::vector<Effect> &table, const Word &suffix, StateSet goal) {
  const std::size_t n = table.empty() ? 0 : table.front().num_states();
  StateSet w = goal;
  for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) {
    const Effect &e = table.at(*it);
    StateSet prev;
    for (State p = 0; p < n; ++p)
      if (e[p].has_subset_of(w))
        prev.insert(p);
    w = prev;
  }
  return w;
}

StateSet final_states(const Dfa &dfa) {
  check_state_space(dfa);
  StateSet f;
  for (State q = 0; q < dfa.num_states(); ++q)
    if (dfa.is_final(q))
      f.insert(q);
  return f;
}

bool decide_lr(const Game &game, const EffectTable &table, const Word &word) {
  for (Symbol s : word)
    if (s >= game.alphabet().size())
      throw UnknownSymbol("#" + std::to_string(s));
  const Dfa &dfa = game.target_dfa();
  return string_effect(table, word)[dfa.initial()].has_subset_of(final_states(dfa));
}

bool decide_lr(const Game &game, const Word &word) { return decide_lr(game, compute_effect_table(game), word); }

std::string render_state_set(StateSet s) {
  std::string out = "{";
  bool first = true;
  for (State q : s.states()) {
    if (!first)
      out += ',';
    first = false;
    out += 'q' + std::to_string(q);
  }
  return out + "}";
}

std::string render_antichain(const Antichain &a) {
  std::string out;
  for (StateSet s : a) {
    if (!out.empty())
      out += ',';
    out += render_state_set(s);
  }
  return out;
}

std::string render_effect(const Effect &e) {
  std::string out;
  for (State q = 0; q < e.num_states(); ++q)
    out += 'q' + std::to_string(q) + ": " + render_antichain(e[q]) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Strategy

EffectStrategy::EffectStrategy(const Game &game, const EffectTable &table, Word word)
    : game_(&game), table_(&table), word_(std::move(word)) {
  const Dfa &dfa = game.target_dfa();
  StateSet goal = final_states(dfa);
  if (!winning_states(table.effects(), word_, goal).contains(dfa.initial()))
    throw Error("word is not safely rewritable left to right");
  frames_.push_back({word_, 0, goal, table.top_level()});
}

void EffectStrategy::pop_finished() {
  while (!frames_.empty() && frames_.back().pos == frames_.back().symbols.size())
    frames_.pop_back();
}

std::size_t EffectStrategy::call_level(Symbol a, State q, StateSet goal) {
  const std::size_t top = frames_.back().level;
  for (std::size_t m = 1; m <= top; ++m) {
    auto key = std::make_tuple(m - 1, a, q);
    auto it = call_cache_.find(key);
    if (it == call_cache_.end())
      it = call_cache_.emplace(key, call_guarantees(*game_, table_->level(m - 1), a, q)).first;
    if (it->second.has_subset_of(goal))
      return m;
  }
  throw std::logic_error("effect strategy lost its obligation");
}

Move EffectStrategy::next(const LrConfig &cfg) {
  pop_finished();
  if (frames_.empty()) {
    if (cfg.cursor != cfg.word.size())
      throw std::logic_error("effect strategy out of sync with play");
    return Move::stop();
  }
  Frame &f = frames_.back();
  Symbol b = f.symbols[f.pos];
  if (cfg.cursor >= cfg.word.size() || cfg.word[cfg.cursor] != b)
    throw std::logic_error("effect strategy out of sync with play");

  Word rest(f.symbols.begin() + static_cast<std::ptrdiff_t>(f.pos) + 1, f.symbols.end());
  StateSet goal = winning_states(table_->level(f.level), rest, f.target);
  if (goal.contains(game_->target_dfa().step(cfg.state, b)))
    return Move::read();
  std::size_t m = call_level(b, cfg.state, goal);
  pending_level_ = m - 1;
  pending_target_ = goal;
  return Move::call();
}

void EffectStrategy::advance(const Move &move, const Word &replacement) {
  pop_finished();
  if (move.kind == MoveKind::Stop || move.kind == MoveKind::LeftStep)
    return;
  if (frames_.empty())
    throw std::logic_error("effect strategy advanced past the end");
  ++frames_.back().pos;
  if (move.kind == MoveKind::Call)
    frames_.push_back({replacement, 0, pending_target_, pending_level_});
}

JulietPolicy EffectStrategy::policy() const {
  struct Sync {
    EffectStrategy initial;
    EffectStrategy live;
    std::size_t processed = 0;
  };
  auto state = std::make_shared<Sync>(Sync{*this, *this, 0});
  return [state](const LrConfig &cfg, const Trace &trace) {
    if (trace.size() < state->processed) {
      state->live = state->initial;
      state->processed = 0;
    }
    std::size_t i = state->processed;
    while (i < trace.size()) {
      const TraceStep &step = trace[i];
      if (step.actor == TraceStep::Actor::Juliet && step.move.kind == MoveKind::Call) {
        if (i + 1 >= trace.size())
          break;
        state->live.advance(step.move, trace[i + 1].replacement);
        i += 2;
      } else {
        state->live.advance(step.move);
        ++i;
      }
    }
    state->processed = i;
    return state->live.next(cfg);
  };
}

namespace {

std::size_t unroll(StrategyCert &cert, const Game &game, const ReplyTable &replies, EffectStrategy strategy,
                   const LrConfig &cfg) {
  Move m = strategy.next(cfg);
  std::size_t index = cert.nodes.size();
  cert.nodes.push_back({m, 0, {}});
  if (m.kind == MoveKind::Read) {
    strategy.advance(m);
    std::size_t child = unroll(cert, game, replies, std::move(strategy), apply_read(game, cfg));
    cert.nodes[index].next = child;
  } else if (m.kind == MoveKind::Call) {
    Symbol a = cfg.word[cfg.cursor];
    if (!replies.exhaustive[a])
      cert.complete = false;
    for (const Word &r : replies.of(a)) {
      EffectStrategy branch = strategy;
      branch.advance(m, r);
      std::size_t child = unroll(cert, game, replies, std::move(branch), apply_reply(game, cfg, r));
      cert.nodes[index].replies.emplace_back(r, child);
    }
  }
  return index;
}

} // namespace

StrategyCert extract_strategy(const Game &game, const EffectTable &table, const Word &word,
                              std::size_t romeo_len_bound) {
  EffectStrategy strategy(game, table, word);
  ReplyTable replies = romeo_replies(game, romeo_len_bound);
  StrategyCert cert;
  unroll(cert, game, replies, std::move(strategy), initial_config(game, word));
  cert.compute_bounds();
  return cert;
}

Word worst_case_reply(const Game &game, const EffectTable &table, const LrConfig &cfg,
                      std::size_t romeo_len_bound) {
  if (cfg.cursor >= cfg.word.size() || !game.is_function(cfg.word[cfg.cursor]))
    throw IllegalMove("no call to answer");
  Symbol a = cfg.word[cfg.cursor];
  ReplyTable replies = romeo_replies(game, romeo_len_bound);
  Word rest(cfg.word.begin() + static_cast<std::ptrdiff_t>(cfg.cursor) + 1, cfg.word.end());
  StateSet goal = winning_states(table.effects(), rest, final_states(game.target_dfa()));

  const Word *best = nullptr;
  std::tuple<bool, std::size_t> best_score{false, 0};
  for (const Word &r : replies.of(a)) {
    Antichain reached = play_word(table.effects(), r, cfg.state);
    bool juliet_loses = !reached.has_subset_of(goal);
    std::size_t obligation = reached.empty() ? 0 : reached.sets().front().size();
    std::tuple<bool, std::size_t> score{juliet_loses, obligation};
    if (!best || score > best_score) {
      best = &r;
      best_score = score;
    }
  }
  if (!best)
    throw IllegalMove("no enumerated reply for " + game.alphabet().name(a));
  return *best;
}

} // namespace cfgame
