// Concrete-syntax trees and the infix parser.
//
// Precedence, loosest binding first: <->, ->, |, &, unary {! X F G}, binary
// temporal {U R} (right-associative). Atoms are [a-zA-Z_][a-zA-Z0-9_]*;
// constants true/false; whitespace insignificant. Prefix operators are also
// accepted on the right of a binary operator, where they are unambiguous.

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "oblisat/formula.hpp"

namespace oblisat {

/// Raw parse tree, before negation normal form. Negation may wrap compound
/// subformulas and F/G/->/<-> are still present.
struct Syntax;
using SynPtr = std::shared_ptr<const Syntax>;

struct Syntax {
  enum class Op {
    True,
    False,
    Atom,
    Not,
    And,
    Or,
    Next,
    Until,
    Release,
    Finally,
    Globally,
    Implies,
    Equiv,
  };

  Op op;
  std::string atom;          // Op::Atom only
  std::vector<SynPtr> kids;

  static SynPtr mk(Op op, std::vector<SynPtr> kids = {});
  static SynPtr mk_atom(std::string name);
  std::size_t node_count() const;
  std::string to_string() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

SynPtr parse_syntax(std::string_view text);

/// Desugars (F, G, ->, <->), pushes negations to the literals and returns the
/// canonical arena node.
NodeId to_nnf(Arena& arena, const Syntax& s);

/// parse_syntax + to_nnf.
NodeId parse(Arena& arena, std::string_view text);

}  // namespace oblisat
