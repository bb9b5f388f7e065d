#include "cfgame/cli.hpp"
#include "cfgame/play.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace cfgame;
using namespace cfgame::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args, const std::string &input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string write_game(const std::string &name, const std::string &text) {
  fs::path dir = fs::temp_directory_path() / "cfgame_cli_tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

std::vector<std::string> lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);)
    out.push_back(l);
  return out;
}

} // namespace

TEST_CASE("decide examples") {
  std::string g1 = write_game("g1.game", kG1);
  std::string g3 = write_game("g3.game", kG3);
  Run safe = cli({"decide", g1, "--word", "f"});
  CHECK(safe.code == 0);
  CHECK(safe.out == "SAFE\n");
  Run unsafe = cli({"decide", g1, "--word", "f f"});
  CHECK(unsafe.code == 1);
  CHECK(unsafe.out == "UNSAFE\n");
  Run unknown = cli({"decide", g3, "--word", "f", "--mode", "lr-oracle", "--budget", "4"});
  CHECK(unknown.code == 3);
  CHECK(unknown.out == "UNKNOWN\n");

  CHECK(cli({"decide", g1, "--word", "f", "--mode", "lr-oracle"}).code == 0);
  CHECK(cli({"decide", g1, "--word", "f f", "--mode", "any-oracle"}).code == 1);
  CHECK(cli({"decide", g1, "--word", "%e"}).code == 1);

  std::string ls = write_game("leftstep.game", kLeftStepGame);
  CHECK(cli({"decide", ls, "--word", "f g", "--mode", "multipass", "--k", "0"}).code == 1);
  CHECK(cli({"decide", ls, "--word", "f g", "--mode", "multipass"}).code == 0);
}

TEST_CASE("usage errors exit 2") {
  std::string g1 = write_game("g1.game", kG1);
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"decide", g1}).code == 2);
  CHECK(cli({"decide", g1, "--word", "f", "--bogus"}).code == 2);
  CHECK(cli({"decide", g1, "--word", "f", "--mode", "guess"}).code == 2);
  CHECK(cli({"decide", g1, "--word", "f", "--k", "2"}).code == 2);
  CHECK(cli({"decide", g1, "--word", "c"}).code == 2);
  CHECK(cli({"decide", "/nonexistent/x.game", "--word", "f"}).code == 2);
  CHECK(cli({"gen", "--seed", "1", "--symbols", "2", "--functions", "3"}).code == 2);
  CHECK(cli({"play", g1, "--word", "f", "--as", "nurse"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("validate") {
  Run ok = cli({"validate", write_game("g1.game", kG1)});
  CHECK(ok.code == 0);
  CHECK(ok.out == "VALID\n");
  Run bad = cli({"validate", write_game("bad.game", "alphabet: a g\nfunctions: g\ntarget: regex a\n")});
  CHECK(bad.code == 2);
  CHECK(bad.out == "INVALID\n");
  CHECK(bad.err == "missing rule for g\n");
  Run syntax = cli({"validate", write_game("syntax.game", "alphabet: a\nnonsense\n")});
  CHECK(syntax.code == 2);
  CHECK(syntax.err.find("line 2") != std::string::npos);
}

TEST_CASE("automaton") {
  std::string g1 = write_game("g1.game", kG1);
  fs::path dot = fs::temp_directory_path() / "cfgame_cli_tests" / "g1.dot";
  Run r = cli({"automaton", g1, "--dot", dot.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "STATES 4\n");
  std::ifstream in(dot);
  std::stringstream content;
  content << in.rdbuf();
  Game g = load(kG1);
  CHECK(content.str() == export_dot(build_safelr_automaton(g), g.alphabet()));

  Run limited = cli({"automaton", g1, "--limit", "2"});
  CHECK(limited.code == 4);
  CHECK(limited.err.find("state limit") != std::string::npos);
}

TEST_CASE("compare finds replayable witnesses") {
  std::string path = write_game("leftstep.game", kLeftStepGame);
  Run r = cli({"compare", path, "--max-len", "2", "--budget", "4"});
  CHECK(r.code == 0);
  std::vector<std::string> out = lines(r.out);
  REQUIRE_FALSE(out.empty());
  CHECK(out.back() == "TOTAL " + std::to_string(out.size() - 1));
  bool found = false;
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    REQUIRE(out[i].rfind("WITNESS ", 0) == 0);
    std::string w = out[i].substr(8);
    found = found || w == "f g";
    CHECK(cli({"decide", path, "--word", w}).code == 1);
    CHECK(cli({"decide", path, "--word", w, "--mode", "any-oracle", "--budget", "4"}).code == 0);
  }
  CHECK(found);

  // Exactly the words that disagree, checked against the library.
  Game g = load(kLeftStepGame);
  std::size_t expected = 0;
  for (const Word &w : all_words(g.alphabet().size(), 2))
    if (!decide_lr(g, w) && solve_any_order_bounded(g, w, 4).outcome == Outcome::Win)
      ++expected;
  CHECK(out.size() - 1 == expected);

  Run none = cli({"compare", write_game("g1.game", kG1), "--max-len", "3", "--budget", "4"});
  CHECK(none.out == "TOTAL 0\n");
}

TEST_CASE("gen is byte-identical per seed and parses back") {
  std::vector<std::string> args{"gen", "--seed", "7", "--symbols", "4", "--functions", "2", "--rule-words", "3"};
  Run a = cli(args), b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(validate_game(parse_game(a.out)).empty());
  CHECK(cli({"gen", "--seed", "8", "--symbols", "4", "--functions", "2", "--rule-words", "3"}).out != a.out);
  Run reg = cli({"gen", "--seed", "7", "--regular"});
  CHECK(reg.out.find("regex") != std::string::npos);
}

TEST_CASE("play as Juliet") {
  std::string g1 = write_game("g1.game", kG1);
  Run r = cli({"play", g1, "--word", "f", "--as", "juliet"}, "call\nread\n");
  CHECK(r.code == 0);
  CHECK(r.out == "WORD [f]\n"
                 "MOVES read call stop quit\n"
                 "ROMEO f -> a\n"
                 "WORD [a]\n"
                 "MOVES read stop quit\n"
                 "END a\n"
                 "RESULT WIN\n");

  Run bad = cli({"play", g1, "--word", "a f", "--as", "juliet"}, "call\nfly\nread\nstop\n");
  CHECK(bad.out == "WORD [a] f\n"
                   "MOVES read stop quit\n"
                   "ERROR call is not available here\n"
                   "WORD [a] f\n"
                   "MOVES read stop quit\n"
                   "ERROR unknown command 'fly'\n"
                   "WORD [a] f\n"
                   "MOVES read stop quit\n"
                   "WORD a [f]\n"
                   "MOVES read call stop quit\n"
                   "END a f\n"
                   "RESULT LOSE\n");

  Run quit = cli({"play", g1, "--word", "f", "--as", "juliet"}, "quit\n");
  CHECK(lines(quit.out).back() == "QUIT");
  Run eof = cli({"play", g1, "--word", "f", "--as", "juliet"}, "");
  CHECK(lines(eof.out).back() == "QUIT");
}

TEST_CASE("play as Romeo") {
  std::string g1 = write_game("g1.game", kG1);
  Run r = cli({"play", g1, "--word", "f", "--as", "romeo"}, "pick f\npick c\npick b\n");
  CHECK(r.out == "WORD [f]\n"
                 "JULIET call\n"
                 "RULE rule f: finite a , b\n"
                 "MOVES pick <word> quit\n"
                 "ERROR f is not a replacement of f\n"
                 "RULE rule f: finite a , b\n"
                 "MOVES pick <word> quit\n"
                 "ERROR unknown symbol c\n"
                 "RULE rule f: finite a , b\n"
                 "MOVES pick <word> quit\n"
                 "WORD [b]\n"
                 "JULIET read\n"
                 "END b\n"
                 "RESULT WIN\n");

  Run unsafe = cli({"play", g1, "--word", "f f", "--as", "romeo"}, "");
  CHECK(lines(unsafe.out).front() == "NOTE word is not safely rewritable; engine Juliet only reads");
  CHECK(lines(unsafe.out).back() == "RESULT LOSE");
}

TEST_CASE("property: engine Juliet wins every scripted Romeo session on SAFE words") {
  std::mt19937_64 rng(2024);
  std::size_t sessions = 0;
  std::vector<Game> games;
  for (const CorpusGame &cg : finite_corpus(40))
    games.push_back(cg.game);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenParams p;
    p.regular = true;
    games.push_back(random_game(seed, p));
  }
  PlayOptions options;
  options.romeo_len_bound = 3;
  for (const Game &g : games) {
    EffectTable t = compute_effect_table(g);
    ReplyTable replies = romeo_replies(g, 3);
    for (const Word &w : all_words(g.alphabet().size(), 3)) {
      if (!decide_lr(g, t, w))
        continue;
      // The engine is deterministic, so a dry run records a random human
      // script (legal picks with the odd junk line) that the REPL replays.
      std::string script;
      RomeoPolicy human = [&](const LrConfig &, Symbol a, const Trace &) {
        const Word &r = replies.of(a)[rng() % replies.of(a).size()];
        if (rng() % 5 == 0)
          script += rng() % 2 ? "dance\n" : "pick " + g.alphabet().name(a) + " " + g.alphabet().name(a) + "\n";
        script += "pick " + render_word(r, g.alphabet()) + "\n";
        return r;
      };
      EffectStrategy strategy(g, t, w);
      CHECK(simulate_play(g, w, PlayMode::lr(), strategy.policy(), human).outcome == Outcome::Win);

      std::istringstream in(script);
      std::ostringstream out;
      SessionResult res = run_play_session(g, t, w, PlayRole::Romeo, in, out, options);
      REQUIRE(res.completed);
      CHECK(res.juliet_won);
      CHECK(lines(out.str()).back() == "RESULT WIN");
      ++sessions;
    }
  }
  CHECK(sessions >= 100);
}

TEST_CASE("the installed binary maps exit codes") {
  const char *bin = std::getenv("CFGAME_BIN");
  if (!bin) {
    MESSAGE("CFGAME_BIN not set; skipping process-level check");
    return;
  }
  std::string g1 = write_game("g1.game", kG1);
  auto run = [&](const std::string &args) {
    int status = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  CHECK(run("decide " + g1 + " --word f") == 0);
  CHECK(run("decide " + g1 + " --word 'f f'") == 1);
  CHECK(run("decide " + g1 + " --word f --mode nope") == 2);
  CHECK(run("automaton " + g1 + " --limit 1") == 4);
}
