#include "cfgame/semantics.hpp"

#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace cfgame;
using namespace cfgame::testing;

namespace {

std::vector<Word> successor_words(const std::vector<Successors> &succ, MoveKind kind) {
  std::vector<Word> out;
  for (const Successors &s : succ)
    if (s.move.kind == kind)
      for (const LrConfig &c : s.configs)
        out.push_back(c.word);
  return out;
}

void check_all_plays_win(const Game &g, const Word &w, PlayMode mode, const StrategyCert &cert) {
  std::vector<PlayResult> plays = replay_exhaustive(g, w, mode, certificate_policy(cert), romeo_replies(g, 6));
  REQUIRE_FALSE(plays.empty());
  for (const PlayResult &p : plays)
    CHECK(p.outcome == Outcome::Win);
}

} // namespace

TEST_CASE("lr_successors: G1 on f") {
  Game g = load(kG1);
  LrConfig cfg = initial_config(g, word(g, "f"));
  auto succ = lr_successors(g, cfg, 6);
  REQUIRE(succ.size() == 2);
  CHECK(succ[0].move == Move::read());
  REQUIRE(succ[0].configs.size() == 1);
  CHECK(succ[0].configs[0].cursor == 1);
  CHECK(succ[0].configs[0].state == 2); // sink
  CHECK(succ[1].move == Move::call());
  CHECK(successor_words(succ, MoveKind::Call) == std::vector<Word>{{0}, {1}});
  for (const LrConfig &c : succ[1].configs) {
    CHECK(c.cursor == 0);
    CHECK(c.state == g.target_dfa().initial());
    CHECK(c.calls_used == 1);
  }
}

TEST_CASE("lr_successors: G2 includes the empty reply") {
  Game g = load(kG2);
  auto succ = lr_successors(g, initial_config(g, word(g, "f")), 2);
  CHECK(successor_words(succ, MoveKind::Call) == std::vector<Word>{{}, {0}, {0, 0}});
  for (const Successors &s : succ)
    if (s.move.kind == MoveKind::Call)
      CHECK(s.configs.front().cursor == s.configs.front().word.size());
}

TEST_CASE("Call on a non-function symbol is illegal") {
  Game g = load(kG1);
  LrConfig cfg = initial_config(g, word(g, "a"));
  auto succ = lr_successors(g, cfg, 6);
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].move == Move::read());
  CHECK_THROWS_AS(apply_reply(g, cfg, word(g, "b")), IllegalMove);
  auto juliet = [](const LrConfig &, const Trace &) { return Move::call(); };
  CHECK_THROWS_AS(simulate_play(g, word(g, "a"), PlayMode::lr(), juliet, first_reply_policy(romeo_replies(g, 6))),
                  IllegalMove);
}

TEST_CASE("apply_reply rejects words outside the replacement language") {
  Game g = load(kG1);
  LrConfig cfg = initial_config(g, word(g, "f"));
  CHECK_THROWS_AS(apply_reply(g, cfg, word(g, "f")), IllegalMove);
  CHECK(apply_reply(g, cfg, word(g, "b")).word == word(g, "b"));
}

TEST_CASE("solve_lr_bounded examples") {
  Game g1 = load(kG1);
  Verdict v = solve_lr_bounded(g1, word(g1, "f"), 4);
  CHECK(v.outcome == Outcome::Win);
  REQUIRE(v.certificate.has_value());
  CHECK(v.certificate->nodes[0].move == Move::call());
  CHECK(v.certificate->complete);
  CHECK(v.certificate->call_bound == 1);
  check_all_plays_win(g1, word(g1, "f"), PlayMode::lr(), *v.certificate);

  CHECK(solve_lr_bounded(g1, word(g1, "f f"), 6).outcome == Outcome::Lose);
  CHECK(solve_lr_bounded(g1, {}, 6).outcome == Outcome::Lose);

  Game g3 = load(kG3);
  CHECK(solve_lr_bounded(g3, word(g3, "f"), 8).outcome == Outcome::Unknown);
  CHECK(solve_lr_bounded(g3, word(g3, "f"), 0).outcome == Outcome::Unknown);
  CHECK(solve_lr_bounded(g3, word(g3, "a"), 0).outcome == Outcome::Win);
}

TEST_CASE("solve_lr_bounded: truncated regular rules never yield Lose from truncation") {
  Game g2 = load(kG2);
  // Romeo's a^n replies are infinitely many; a Lose needs a losing reply
  // inside the enumerated slice, which exists here (a^3 overshoots).
  CHECK(solve_lr_bounded(g2, word(g2, "f"), 4, 2).outcome == Outcome::Lose);
  // Every enumerated reply wins, but a partial enumeration proves nothing.
  Game g4 = load(kG4);
  CHECK(solve_lr_bounded(g4, word(g4, "f f"), 4, 3).outcome == Outcome::Unknown);
  CHECK(solve_lr_bounded(g4, word(g4, "a a"), 0, 3).outcome == Outcome::Win);
}

TEST_CASE("solve_any_order_bounded examples") {
  Game g1 = load(kG1);
  CHECK(solve_any_order_bounded(g1, word(g1, "f"), 4).outcome == Outcome::Win);
  Verdict v = solve_any_order_bounded(g1, word(g1, "a"), 0);
  CHECK(v.outcome == Outcome::Win);
  REQUIRE(v.certificate.has_value());
  CHECK(v.certificate->nodes[0].move == Move::stop());
  check_all_plays_win(g1, word(g1, "f"), PlayMode::any_order(),
                      *solve_any_order_bounded(g1, word(g1, "f"), 4).certificate);
  CHECK(solve_any_order_bounded(g1, word(g1, "f f"), 6).outcome == Outcome::Lose);
}

TEST_CASE("solve_any_order_bounded can choose the call order") {
  // Calling g first reveals which replacement f must produce; left to right
  // Juliet must commit on f before seeing g's reply.
  Game g = load(kLeftStepGame);
  Word w = word(g, "f g");
  CHECK(solve_lr_bounded(g, w, 6).outcome == Outcome::Lose);
  Verdict v = solve_any_order_bounded(g, w, 6);
  CHECK(v.outcome == Outcome::Win);
  REQUIRE(v.certificate.has_value());
  check_all_plays_win(g, w, PlayMode::any_order(), *v.certificate);
}

TEST_CASE("solve_multipass_bounded examples") {
  Game g1 = load(kG1);
  CHECK(solve_multipass_bounded(g1, word(g1, "f"), 3, 6).outcome == Outcome::Win);

  Game g = load(kLeftStepGame);
  Word w = word(g, "f g");
  CHECK(solve_multipass_bounded(g, w, 0, 6).outcome == Outcome::Lose);
  Verdict v = solve_multipass_bounded(g, w, 1, 6);
  CHECK(v.outcome == Outcome::Win);
  REQUIRE(v.certificate.has_value());
  check_all_plays_win(g, w, PlayMode::lr(1), *v.certificate);
  CHECK(solve_multipass_bounded(g, w, 2, 6).outcome == Outcome::Win);
}

TEST_CASE("multipass: a k=0 Lose / k=1 Win witness from the generator") {
  // First hit of a scan over seeds 1..20000 (|Σ| = 3 + seed % 2, words of
  // length <= 3) restricted to targets that mention a function symbol.
  GenParams p;
  p.n_symbols = 3;
  p.n_functions = 1;
  p.rule_words = 2;
  p.max_rule_len = 1;
  p.target_depth = 2;
  Game g = random_game(4544, p);
  CHECK(render_game(g) == "alphabet: a b f\nfunctions: f\ntarget: regex ( ( %e | a ) | ( f a ) )\n"
                          "rule f: finite %e , a\n");
  Word w = word(g, "f f");
  CHECK(solve_multipass_bounded(g, w, 0, 6).outcome == Outcome::Lose);
  Verdict v = solve_multipass_bounded(g, w, 1, 6);
  CHECK(v.outcome == Outcome::Win);
  REQUIRE(v.certificate.has_value());
  check_all_plays_win(g, w, PlayMode::lr(1), *v.certificate);
}

TEST_CASE("simulate_play examples") {
  Game g1 = load(kG1);
  Verdict v = solve_lr_bounded(g1, word(g1, "f"), 4);
  REQUIRE(v.certificate.has_value());
  PlayResult r = simulate_play(g1, word(g1, "f"), PlayMode::lr(), certificate_policy(*v.certificate),
                               first_reply_policy(romeo_replies(g1, 6)));
  CHECK(r.outcome == Outcome::Win);
  REQUIRE(r.trace.size() == 3);
  CHECK(r.trace[0].actor == TraceStep::Actor::Juliet);
  CHECK(r.trace[0].move == Move::call());
  CHECK(r.trace[1].actor == TraceStep::Actor::Romeo);
  CHECK(r.trace[1].replacement == word(g1, "a"));
  CHECK(r.trace[2].move == Move::read());
  CHECK(r.final_config.word == word(g1, "a"));

  PlayResult lose = simulate_play(g1, word(g1, "f"), PlayMode::lr(), always_read_policy(),
                                  first_reply_policy(romeo_replies(g1, 6)));
  CHECK(lose.outcome == Outcome::Lose);
  CHECK(lose.final_config.word == word(g1, "f"));
}

TEST_CASE("simulate_play: an endless caller loses at the move cap") {
  Game g3 = load(kG3);
  auto juliet = [](const LrConfig &, const Trace &) { return Move::call(); };
  auto romeo = [&](const LrConfig &, Symbol, const Trace &) { return word(g3, "f"); };
  PlayResult r = simulate_play(g3, word(g3, "f"), PlayMode::lr(), juliet, romeo, 50);
  CHECK(r.outcome == Outcome::Lose);
  CHECK(r.move_cap_hit);
}

TEST_CASE("replay_exhaustive visits every reply sequence of the certificate") {
  Game g = load(kG1);
  Verdict v = solve_lr_bounded(g, word(g, "f a f"), 6);
  // f a f: the middle a forces a two-letter prefix, so the word is lost.
  CHECK(v.outcome == Outcome::Lose);

  Game h = load("alphabet: a b f\nfunctions: f\ntarget: regex ( a | b ) *\nrule f: finite a , b , a b\n");
  Word w = word(h, "f f");
  Verdict hv = solve_lr_bounded(h, w, 6);
  REQUIRE(hv.outcome == Outcome::Win);
  std::vector<PlayResult> plays = replay_exhaustive(h, w, PlayMode::lr(), certificate_policy(*hv.certificate),
                                                    romeo_replies(h, 6));
  // Two independent calls with three replies each.
  CHECK(plays.size() == 9);
  std::set<Word> finals;
  for (const PlayResult &p : plays) {
    CHECK(p.outcome == Outcome::Win);
    finals.insert(p.final_config.word);
  }
  CHECK(finals.size() == 9);
}

TEST_CASE("property: prefix-state coherence along exhaustive plays") {
  for (const CorpusGame &cg : finite_corpus(30)) {
    const Game &g = cg.game;
    ReplyTable replies = romeo_replies(g, 6);
    std::size_t flip = 0;
    auto juliet = [&](const LrConfig &cfg, const Trace &) {
      if (cfg.cursor == cfg.word.size())
        return Move::stop();
      ++flip;
      bool call = g.is_function(cfg.word[cfg.cursor]) && cfg.calls_used < 3 && flip % 2 == 0;
      return call ? Move::call() : Move::read();
    };
    for (const Word &w : all_words(g.alphabet().size(), 2)) {
      for (const PlayResult &p : replay_exhaustive(g, w, PlayMode::lr(), juliet, replies, 200, 200)) {
        for (const TraceStep &s : p.trace) {
          Word prefix(s.config.word.begin(), s.config.word.begin() + s.config.cursor);
          REQUIRE(s.config.state == dfa_run(g.target_dfa(), prefix));
        }
      }
    }
  }
}

TEST_CASE("property: solver laws on the finite corpus") {
  std::size_t checked = 0;
  for (const CorpusGame &cg : finite_corpus(40)) {
    const Game &g = cg.game;
    for (const Word &w : all_words(g.alphabet().size(), 3)) {
      Verdict small = solve_lr_bounded(g, w, 3);
      Verdict large = solve_lr_bounded(g, w, 8);
      if (small.outcome == Outcome::Win)
        CHECK(large.outcome == Outcome::Win);
      if (small.outcome == Outcome::Lose)
        CHECK(large.outcome == Outcome::Lose);

      if (large.outcome == Outcome::Win) {
        REQUIRE(large.certificate.has_value());
        CHECK(large.certificate->call_bound <= 8);
        check_all_plays_win(g, w, PlayMode::lr(), *large.certificate);
        CHECK(solve_any_order_bounded(g, w, 8).outcome == Outcome::Win);
      }

      Verdict k0 = solve_multipass_bounded(g, w, 0, 8);
      CHECK(k0.outcome == large.outcome);
      Verdict k1 = solve_multipass_bounded(g, w, 1, 8);
      if (k0.outcome == Outcome::Win)
        CHECK(k1.outcome == Outcome::Win);
      ++checked;
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("property: enlarging Romeo's languages never helps Juliet") {
  for (const CorpusGame &cg : finite_corpus(40)) {
    const Game &g = cg.game;
    std::map<Symbol, ReplacementLang> bigger = g.rules();
    Symbol f = g.functions().front();
    auto &words = std::get<FiniteRule>(bigger.at(f)).words;
    Word extra{0, 0};
    if (std::find(words.begin(), words.end(), extra) == words.end())
      words.push_back(extra);
    Game g2(g.alphabet(), g.functions(), bigger, g.target_source(), g.target());
    REQUIRE(validate_game(g2).empty());
    for (const Word &w : all_words(g.alphabet().size(), 3)) {
      Outcome small = solve_lr_bounded(g, w, 8).outcome;
      Outcome big = solve_lr_bounded(g2, w, 8).outcome;
      if (big == Outcome::Win)
        CHECK(small == Outcome::Win);
      if (small == Outcome::Lose)
        CHECK(big == Outcome::Lose);
    }
  }
}
