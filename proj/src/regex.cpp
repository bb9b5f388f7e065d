#include "cfgame/regular.hpp"

#include <cctype>
#include <memory>
#include <variant>

namespace cfgame {

namespace {

enum class TokenKind { Symbol, Epsilon, Bar, Star, Plus, Question, LParen, RParen, End };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t pos;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    TokenKind kind;
    switch (c) {
    case '|': kind = TokenKind::Bar; break;
    case '*': kind = TokenKind::Star; break;
    case '+': kind = TokenKind::Plus; break;
    case '?': kind = TokenKind::Question; break;
    case '(': kind = TokenKind::LParen; break;
    case ')': kind = TokenKind::RParen; break;
    default:
      if (text.substr(i, kEpsilonToken.size()) == kEpsilonToken &&
          (i + kEpsilonToken.size() == text.size() || !is_ident_char(text[i + kEpsilonToken.size()]))) {
        out.push_back({TokenKind::Epsilon, std::string(kEpsilonToken), i});
        i += kEpsilonToken.size();
        continue;
      }
      if (is_ident_start(c)) {
        std::size_t j = i + 1;
        while (j < text.size() && is_ident_char(text[j]))
          ++j;
        out.push_back({TokenKind::Symbol, std::string(text.substr(i, j - i)), i});
        i = j;
        continue;
      }
      throw SyntaxError("syntax error at position " + std::to_string(i) + ": unexpected character '" +
                            std::string(1, c) + "'",
                        i);
    }
    out.push_back({kind, std::string(1, c), i});
    ++i;
  }
  out.push_back({TokenKind::End, "", text.size()});
  return out;
}

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct SymbolNode {
  Symbol symbol;
};
struct EpsilonNode {};
struct UnionNode {
  std::vector<NodePtr> alternatives;
};
struct ConcatNode {
  std::vector<NodePtr> parts;
};
struct RepeatNode {
  char op; // '*', '+', '?'
  NodePtr inner;
};

struct Node {
  std::variant<SymbolNode, EpsilonNode, UnionNode, ConcatNode, RepeatNode> v;
};

class Parser {
public:
  Parser(std::vector<Token> tokens, const Alphabet &alphabet)
      : tokens_(std::move(tokens)), alphabet_(alphabet) {}

  NodePtr parse() {
    NodePtr root = parse_union();
    if (peek().kind != TokenKind::End)
      fail("unexpected '" + peek().text + "'");
    return root;
  }

private:
  const Token &peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string &what) const {
    throw SyntaxError("syntax error at position " + std::to_string(peek().pos) + ": " + what, peek().pos);
  }

  static bool starts_atom(TokenKind k) {
    return k == TokenKind::Symbol || k == TokenKind::Epsilon || k == TokenKind::LParen;
  }

  NodePtr parse_union() {
    UnionNode u;
    u.alternatives.push_back(parse_concat());
    while (peek().kind == TokenKind::Bar) {
      ++pos_;
      u.alternatives.push_back(parse_concat());
    }
    if (u.alternatives.size() == 1)
      return std::move(u.alternatives.front());
    return std::make_unique<Node>(Node{std::move(u)});
  }

  NodePtr parse_concat() {
    if (!starts_atom(peek().kind))
      fail(peek().kind == TokenKind::End ? "unexpected end of expression" : "unexpected '" + peek().text + "'");
    ConcatNode c;
    while (starts_atom(peek().kind))
      c.parts.push_back(parse_postfix());
    if (c.parts.size() == 1)
      return std::move(c.parts.front());
    return std::make_unique<Node>(Node{std::move(c)});
  }

  NodePtr parse_postfix() {
    NodePtr n = parse_atom();
    for (;;) {
      char op;
      switch (peek().kind) {
      case TokenKind::Star: op = '*'; break;
      case TokenKind::Plus: op = '+'; break;
      case TokenKind::Question: op = '?'; break;
      default: return n;
      }
      ++pos_;
      n = std::make_unique<Node>(Node{RepeatNode{op, std::move(n)}});
    }
  }

  NodePtr parse_atom() {
    const Token &t = peek();
    switch (t.kind) {
    case TokenKind::Symbol: {
      auto id = alphabet_.find(t.text);
      if (!id)
        throw UnknownSymbol(t.text);
      ++pos_;
      return std::make_unique<Node>(Node{SymbolNode{*id}});
    }
    case TokenKind::Epsilon:
      ++pos_;
      return std::make_unique<Node>(Node{EpsilonNode{}});
    case TokenKind::LParen: {
      ++pos_;
      NodePtr inner = parse_union();
      if (peek().kind != TokenKind::RParen)
        fail("expected ')'");
      ++pos_;
      return inner;
    }
    default:
      fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> tokens_;
  const Alphabet &alphabet_;
  std::size_t pos_ = 0;
};

// Right-to-left compilation: each node is built in front of an existing
// continuation state, so alternatives share their exit state.
class Compiler {
public:
  explicit Compiler(Nfa &nfa) : nfa_(nfa) {}

  State compile(const Node &node, State next) {
    return std::visit([&](const auto &n) { return compile_node(n, next); }, node.v);
  }

private:
  State compile_node(const SymbolNode &n, State next) {
    State s = nfa_.add_state();
    nfa_.add_edge(s, n.symbol, next);
    return s;
  }
  State compile_node(const EpsilonNode &, State next) { return next; }
  State compile_node(const UnionNode &n, State next) {
    State s = nfa_.add_state();
    for (const auto &alt : n.alternatives)
      nfa_.add_edge(s, kEpsilon, compile(*alt, next));
    return s;
  }
  State compile_node(const ConcatNode &n, State next) {
    State cur = next;
    for (auto it = n.parts.rbegin(); it != n.parts.rend(); ++it)
      cur = compile(**it, cur);
    return cur;
  }
  State compile_node(const RepeatNode &n, State next) {
    switch (n.op) {
    case '*': {
      State loop = nfa_.add_state();
      nfa_.add_edge(loop, kEpsilon, compile(*n.inner, loop));
      nfa_.add_edge(loop, kEpsilon, next);
      return loop;
    }
    case '+': {
      State loop = nfa_.add_state();
      State start = compile(*n.inner, loop);
      nfa_.add_edge(loop, kEpsilon, start);
      nfa_.add_edge(loop, kEpsilon, next);
      return start;
    }
    default: {
      State s = nfa_.add_state();
      nfa_.add_edge(s, kEpsilon, compile(*n.inner, next));
      nfa_.add_edge(s, kEpsilon, next);
      return s;
    }
    }
  }

  Nfa &nfa_;
};

} // namespace

Nfa parse_regex(std::string_view text, const Alphabet &alphabet) {
  NodePtr root = Parser(tokenize(text), alphabet).parse();
  Nfa nfa(alphabet.size());
  State final_state = nfa.add_state();
  nfa.set_final(final_state);
  nfa.set_initial(Compiler(nfa).compile(*root, final_state));
  return nfa;
}

} // namespace cfgame
