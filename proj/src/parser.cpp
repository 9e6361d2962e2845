#include "oblisat/parser.hpp"

#include <cctype>

namespace oblisat {

SynPtr Syntax::mk(Op op, std::vector<SynPtr> kids) {
  auto s = std::make_shared<Syntax>();
  s->op = op;
  s->kids = std::move(kids);
  return s;
}

SynPtr Syntax::mk_atom(std::string name) {
  auto s = std::make_shared<Syntax>();
  s->op = Op::Atom;
  s->atom = std::move(name);
  return s;
}

std::size_t Syntax::node_count() const {
  std::size_t n = 1;
  for (const auto& k : kids) n += k->node_count();
  return n;
}

std::string Syntax::to_string() const {
  switch (op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return atom;
    case Op::Not: return "!(" + kids[0]->to_string() + ")";
    case Op::Next: return "X (" + kids[0]->to_string() + ")";
    case Op::Finally: return "F (" + kids[0]->to_string() + ")";
    case Op::Globally: return "G (" + kids[0]->to_string() + ")";
    case Op::And:
      return "(" + kids[0]->to_string() + ") & (" + kids[1]->to_string() + ")";
    case Op::Or:
      return "(" + kids[0]->to_string() + ") | (" + kids[1]->to_string() + ")";
    case Op::Until:
      return "(" + kids[0]->to_string() + ") U (" + kids[1]->to_string() + ")";
    case Op::Release:
      return "(" + kids[0]->to_string() + ") R (" + kids[1]->to_string() + ")";
    case Op::Implies:
      return "(" + kids[0]->to_string() + ") -> (" + kids[1]->to_string() +
             ")";
    case Op::Equiv:
      return "(" + kids[0]->to_string() + ") <-> (" + kids[1]->to_string() +
             ")";
  }
  return "?";
}

ParseError::ParseError(std::string msg, int line, int column)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  Atom,
  True,
  False,
  Not,
  NextOp,
  FinallyOp,
  GloballyOp,
  UntilOp,
  ReleaseOp,
  AndOp,
  OrOp,
  ImpliesOp,
  EquivOp,
  LParen,
  RParen,
  End,
};

struct Token {
  Tok tok;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::End, "", line, col};
    char c = text_[pos_];
    if (c == '(') return advance(1), Token{Tok::LParen, "(", line, col};
    if (c == ')') return advance(1), Token{Tok::RParen, ")", line, col};
    if (c == '!') return advance(1), Token{Tok::Not, "!", line, col};
    if (c == '&') return advance(1), Token{Tok::AndOp, "&", line, col};
    if (c == '|') return advance(1), Token{Tok::OrOp, "|", line, col};
    if (c == '<') {
      if (text_.substr(pos_).starts_with("<->"))
        return advance(3), Token{Tok::EquivOp, "<->", line, col};
      throw ParseError("expected '<->' ", line, col);
    }
    if (c == '-') {
      if (text_.substr(pos_).starts_with("->"))
        return advance(2), Token{Tok::ImpliesOp, "->", line, col};
      throw ParseError("expected '->'", line, col);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        advance(1);
      }
      std::string word(text_.substr(start, pos_ - start));
      if (word == "true") return {Tok::True, word, line, col};
      if (word == "false") return {Tok::False, word, line, col};
      if (word == "X") return {Tok::NextOp, word, line, col};
      if (word == "F") return {Tok::FinallyOp, word, line, col};
      if (word == "G") return {Tok::GloballyOp, word, line, col};
      if (word == "U") return {Tok::UntilOp, word, line, col};
      if (word == "R") return {Tok::ReleaseOp, word, line, col};
      return {Tok::Atom, word, line, col};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line,
                     col);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance(1);
    }
  }

  void advance(int n) {
    for (int i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  SynPtr run() {
    SynPtr e = equiv();
    expect(Tok::End, "end of input");
    return e;
  }

 private:
  void shift() { cur_ = lexer_.next(); }

  void expect(Tok t, const char* what) {
    if (cur_.tok != t)
      throw ParseError(std::string("expected ") + what + ", got '" +
                           (cur_.tok == Tok::End ? "<end>" : cur_.text) + "'",
                       cur_.line, cur_.column);
  }

  // Operands are parsed into named locals before the node is built; a parse
  // error thrown inside a braced initializer would otherwise skip the
  // cleanup of its earlier elements under g++ 11.
  SynPtr equiv() {
    SynPtr l = implies();
    if (cur_.tok == Tok::EquivOp) {
      shift();
      SynPtr r = equiv();
      return Syntax::mk(Syntax::Op::Equiv, {l, r});
    }
    return l;
  }

  SynPtr implies() {
    SynPtr l = disj();
    if (cur_.tok == Tok::ImpliesOp) {
      shift();
      SynPtr r = implies();
      return Syntax::mk(Syntax::Op::Implies, {l, r});
    }
    return l;
  }

  SynPtr disj() {
    SynPtr l = conj();
    while (cur_.tok == Tok::OrOp) {
      shift();
      SynPtr r = conj();
      l = Syntax::mk(Syntax::Op::Or, {l, r});
    }
    return l;
  }

  SynPtr conj() {
    SynPtr l = unary();
    while (cur_.tok == Tok::AndOp) {
      shift();
      SynPtr r = unary();
      l = Syntax::mk(Syntax::Op::And, {l, r});
    }
    return l;
  }

  SynPtr unary() {
    switch (cur_.tok) {
      case Tok::Not:
        shift();
        return Syntax::mk(Syntax::Op::Not, {unary()});
      case Tok::NextOp:
        shift();
        return Syntax::mk(Syntax::Op::Next, {unary()});
      case Tok::FinallyOp:
        shift();
        return Syntax::mk(Syntax::Op::Finally, {unary()});
      case Tok::GloballyOp:
        shift();
        return Syntax::mk(Syntax::Op::Globally, {unary()});
      default:
        return temporal();
    }
  }

  // U/R bind tighter than the unary operators; their left operand is a
  // primary while the right side admits prefix operators.
  SynPtr temporal() {
    SynPtr l = primary();
    if (cur_.tok == Tok::UntilOp || cur_.tok == Tok::ReleaseOp) {
      auto op = cur_.tok == Tok::UntilOp ? Syntax::Op::Until
                                         : Syntax::Op::Release;
      shift();
      SynPtr r = unary();
      return Syntax::mk(op, {l, r});
    }
    return l;
  }

  SynPtr primary() {
    switch (cur_.tok) {
      case Tok::True:
        shift();
        return Syntax::mk(Syntax::Op::True);
      case Tok::False:
        shift();
        return Syntax::mk(Syntax::Op::False);
      case Tok::Atom: {
        std::string name = cur_.text;
        shift();
        return Syntax::mk_atom(std::move(name));
      }
      case Tok::LParen: {
        shift();
        SynPtr e = equiv();
        expect(Tok::RParen, "')'");
        shift();
        return e;
      }
      default:
        throw ParseError("expected a formula, got '" +
                             (cur_.tok == Tok::End ? "<end>" : cur_.text) +
                             "'",
                         cur_.line, cur_.column);
    }
  }

  Lexer lexer_;
  Token cur_;
};

NodeId nnf(Arena& a, const Syntax& s, bool neg) {
  using Op = Syntax::Op;
  switch (s.op) {
    case Op::True:
      return neg ? a.ff() : a.tt();
    case Op::False:
      return neg ? a.tt() : a.ff();
    case Op::Atom:
      return a.lit(a.atom(s.atom), neg);
    case Op::Not:
      return nnf(a, *s.kids[0], !neg);
    case Op::And: {
      NodeId l = nnf(a, *s.kids[0], neg);
      NodeId r = nnf(a, *s.kids[1], neg);
      return neg ? a.lor({l, r}) : a.land({l, r});
    }
    case Op::Or: {
      NodeId l = nnf(a, *s.kids[0], neg);
      NodeId r = nnf(a, *s.kids[1], neg);
      return neg ? a.land({l, r}) : a.lor({l, r});
    }
    case Op::Next:
      return a.next(nnf(a, *s.kids[0], neg));
    case Op::Until: {
      NodeId l = nnf(a, *s.kids[0], neg);
      NodeId r = nnf(a, *s.kids[1], neg);
      return neg ? a.release(l, r) : a.until(l, r);
    }
    case Op::Release: {
      NodeId l = nnf(a, *s.kids[0], neg);
      NodeId r = nnf(a, *s.kids[1], neg);
      return neg ? a.until(l, r) : a.release(l, r);
    }
    case Op::Finally: {
      NodeId r = nnf(a, *s.kids[0], neg);
      return neg ? a.release(a.ff(), r) : a.until(a.tt(), r);
    }
    case Op::Globally: {
      NodeId r = nnf(a, *s.kids[0], neg);
      return neg ? a.until(a.tt(), r) : a.release(a.ff(), r);
    }
    case Op::Implies: {
      NodeId l = nnf(a, *s.kids[0], !neg);
      NodeId r = nnf(a, *s.kids[1], neg);
      return neg ? a.land({l, r}) : a.lor({l, r});
    }
    case Op::Equiv: {
      // (f & g) | (!f & !g), or its dual under negation.
      NodeId f = nnf(a, *s.kids[0], false);
      NodeId g = nnf(a, *s.kids[1], false);
      NodeId nf = nnf(a, *s.kids[0], true);
      NodeId ng = nnf(a, *s.kids[1], true);
      if (neg) return a.lor({a.land({f, ng}), a.land({nf, g})});
      return a.lor({a.land({f, g}), a.land({nf, ng})});
    }
  }
  return a.tt();
}

}  // namespace

SynPtr parse_syntax(std::string_view text) { return Parser(text).run(); }

NodeId to_nnf(Arena& arena, const Syntax& s) { return nnf(arena, s, false); }

NodeId parse(Arena& arena, std::string_view text) {
  return to_nnf(arena, *parse_syntax(text));
}

}  // namespace oblisat
