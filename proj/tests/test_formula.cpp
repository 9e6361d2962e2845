#include "doctest.h"

#include <random>

#include "oblisat/formula.hpp"
#include "oblisat/lasso.hpp"
#include "oblisat/parser.hpp"
#include "support/family.hpp"
#include "support/naive_eval.hpp"

using namespace oblisat;
using oblisat::testsupport::enumerate_family;
using oblisat::testsupport::naive_eval;
using oblisat::testsupport::naive_eval_syntax;

TEST_CASE("parse produces the expected shapes") {
  Arena a;
  AtomId pa = a.atom("a"), pb = a.atom("b");

  CHECK(parse(a, "a U b") == a.until(a.lit(pa, false), a.lit(pb, false)));

  // G a & X !a desugars to (false R a) & X !a
  NodeId f = parse(a, "G a & X !a");
  NodeId expect = a.land(
      {a.release(a.ff(), a.lit(pa, false)), a.next(a.lit(pa, true))});
  CHECK(f == expect);

  // F a & G !a desugars to (true U a) & (false R !a)
  NodeId g = parse(a, "F a & G !a");
  NodeId expect2 = a.land(
      {a.until(a.tt(), a.lit(pa, false)), a.release(a.ff(), a.lit(pa, true))});
  CHECK(g == expect2);
}

TEST_CASE("parser precedence") {
  Arena a;
  // & binds looser than U
  CHECK(parse(a, "a U b & c U d") ==
        a.land({parse(a, "a U b"), parse(a, "c U d")}));
  // unary binds looser than U
  CHECK(parse(a, "!a U b") == parse(a, "!(a U b)"));
  CHECK(parse(a, "X a U b") == parse(a, "X (a U b)"));
  // right-associative temporal chain
  CHECK(parse(a, "a U b U c") == parse(a, "a U (b U c)"));
  // prefix accepted on the right of U
  CHECK(parse(a, "a U X b") == a.until(a.lit(a.atom("a"), false),
                                       a.next(a.lit(a.atom("b"), false))));
  // | looser than &
  CHECK(parse(a, "a & b | c") == parse(a, "(a & b) | c"));
  // implications
  CHECK(parse(a, "a -> b") == parse(a, "!a | b"));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_syntax("a &"), ParseError);
  CHECK_THROWS_AS(parse_syntax("(a U b"), ParseError);
  CHECK_THROWS_AS(parse_syntax("a @ b"), ParseError);
  CHECK_THROWS_AS(parse_syntax("a <- b"), ParseError);
  try {
    parse_syntax("a &\n& b");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);
  }
}

TEST_CASE("parser rejects garbage without crashing") {
  std::mt19937_64 rng(5);
  const char chars[] = "abXFGUR!&|()<-> \t\n_01";
  for (int t = 0; t < 5000; ++t) {
    std::string s;
    std::size_t len = rng() % 24;
    for (std::size_t i = 0; i < len; ++i)
      s += chars[rng() % (sizeof(chars) - 1)];
    try {
      parse_syntax(s);
    } catch (const ParseError&) {
    }
  }
}

TEST_CASE("nnf dualities") {
  Arena a;
  CHECK(parse(a, "!(a U b)") == parse(a, "(!a) R (!b)"));
  CHECK(parse(a, "!F a") == parse(a, "G !a"));
  CHECK(parse(a, "!!a") == parse(a, "a"));
  CHECK(parse(a, "!(a & b)") == parse(a, "!a | !b"));
  CHECK(parse(a, "!X a") == parse(a, "X !a"));
  CHECK(parse(a, "!G a") == parse(a, "F !a"));
}

TEST_CASE("canonicalization simplifies and orders") {
  Arena a;
  CHECK(parse(a, "a & true") == parse(a, "a"));
  CHECK(parse(a, "a & false") == a.ff());
  CHECK(parse(a, "a | true") == a.tt());
  CHECK(parse(a, "a | false") == parse(a, "a"));
  CHECK(parse(a, "a & a") == parse(a, "a"));
  CHECK(parse(a, "a & !a") == a.ff());
  CHECK(parse(a, "b & a") == parse(a, "a & b"));
  CHECK(parse(a, "(a & b) & c") == parse(a, "a & (b & c)"));
  // a | !a is not collapsed
  CHECK(parse(a, "a | !a") != a.tt());
}

TEST_CASE("disjuncts and conjuncts") {
  Arena a;
  NodeId f = parse(a, "a | (b & c)");
  auto df = a.disjuncts(f);
  REQUIRE(df.size() == 2);
  CHECK(((df[0] == parse(a, "a") && df[1] == parse(a, "b & c")) ||
         (df[1] == parse(a, "a") && df[0] == parse(a, "b & c"))));

  auto df2 = a.disjuncts(parse(a, "a U b"));
  REQUIRE(df2.size() == 1);
  CHECK(df2[0] == parse(a, "a U b"));

  auto cf = a.conjuncts(parse(a, "a & b & c"));
  CHECK(cf.size() == 3);
}

TEST_CASE("tagging marks right-of-until occurrences") {
  Arena a;
  AtomId pa = a.atom("a"), pb = a.atom("b");

  SUBCASE("a U b tags b") {
    NodeId f = parse(a, "a U b");
    NodeId t = a.tag(f);
    const Node& n = a.node(t);
    REQUIRE(n.kind == Kind::Until);
    CHECK(a.node(n.kids[0]).lit.tags.empty());
    CHECK(a.node(n.kids[1]).lit.tags == TagSet{f});
  }

  SUBCASE("(a|b) U (G a): only the enclosed a is tagged") {
    NodeId f = parse(a, "(a | b) U (G a)");
    NodeId t = a.tag(f);
    const Node& n = a.node(t);
    REQUIRE(n.kind == Kind::Until);
    // left: a | b untagged
    for (NodeId k : a.node(n.kids[0]).kids)
      CHECK(a.node(k).lit.tags.empty());
    // right: G a with tag {f}
    const Node& g = a.node(n.kids[1]);
    REQUIRE(g.kind == Kind::Release);
    CHECK(a.node(g.kids[1]).lit.tags == TagSet{f});
  }

  SUBCASE("no untils, no tags") {
    NodeId f = parse(a, "G a");
    CHECK(a.tag(f) == f);
  }

  SUBCASE("tagged literals differ structurally, not semantically") {
    NodeId f = parse(a, "a U a");
    NodeId t = a.tag(f);
    const Node& n = a.node(t);
    CHECK(n.kids[0] != n.kids[1]);  // tags distinguish
    CHECK(a.node(n.kids[0]).lit.atom == a.node(n.kids[1]).lit.atom);
    (void)pa;
    (void)pb;
  }
}

TEST_CASE("tagging transparency: erasing tags restores the formula") {
  Arena a;
  std::vector<AtomId> atoms{a.atom("a"), a.atom("b")};
  auto family = enumerate_family(a, 6, atoms);
  for (NodeId f : family) {
    NodeId t = a.tag(f);
    CHECK(a.erase_tags(t) == f);
  }
}

TEST_CASE("canonicalization is idempotent over the small family") {
  Arena a;
  std::vector<AtomId> atoms{a.atom("a"), a.atom("b")};
  auto family = enumerate_family(a, 6, atoms);
  for (NodeId f : family) {
    // Rebuilding from the node parts must give the identical id.
    const Node& n = a.node(f);
    NodeId again = f;
    switch (n.kind) {
      case Kind::And: again = a.land(n.kids); break;
      case Kind::Or: again = a.lor(n.kids); break;
      case Kind::Next: again = a.next(n.kids[0]); break;
      case Kind::Until: again = a.until(n.kids[0], n.kids[1]); break;
      case Kind::Release: again = a.release(n.kids[0], n.kids[1]); break;
      default: break;
    }
    CHECK(again == f);
  }
}

TEST_CASE("arena rollback forgets nodes past the checkpoint") {
  Arena a;
  NodeId f = parse(a, "a U b");
  std::size_t cp = a.checkpoint();
  NodeId g = parse(a, "G (a & X b)");
  CHECK(a.num_nodes() > cp);
  a.rollback(cp);
  CHECK(a.num_nodes() == cp);
  // Older nodes survive and re-interning reproduces the same ids.
  CHECK(parse(a, "a U b") == f);
  CHECK(parse(a, "G (a & X b)") == g);
}

TEST_CASE("print/parse round trip on the small family") {
  Arena a;
  std::vector<AtomId> atoms{a.atom("a"), a.atom("b")};
  auto family = enumerate_family(a, 7, atoms);
  for (NodeId f : family) {
    CAPTURE(a.print(f));
    CHECK(parse(a, a.print(f)) == f);
  }
}

namespace {

// All lassos over full valuations of two atoms with small total length.
std::vector<Lasso> small_lassos(const std::vector<AtomId>& atoms,
                                std::size_t max_total) {
  std::vector<LitSet> letters;
  for (std::size_t m = 0; m < (1u << atoms.size()); ++m) {
    LitSet s;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      s.push_back(Lit{atoms[i], (m & (1u << i)) == 0, {}});
    normalize(s);
    letters.push_back(s);
  }
  std::vector<Lasso> out;
  std::size_t k = letters.size();
  for (std::size_t n = 1; n <= max_total; ++n) {
    std::vector<std::size_t> digits(n, 0);
    for (;;) {
      for (std::size_t s = 0; s < n; ++s) {
        Lasso w;
        for (std::size_t i = 0; i < s; ++i) w.stem.push_back(letters[digits[i]]);
        for (std::size_t i = s; i < n; ++i) w.loop.push_back(letters[digits[i]]);
        out.push_back(std::move(w));
      }
      std::size_t pos = n;
      while (pos > 0 && digits[pos - 1] + 1 == k) digits[--pos] = 0;
      if (pos == 0) break;
      ++digits[pos - 1];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("nnf preserves semantics on sampled raw formulas") {
  Arena a;
  std::vector<AtomId> atoms{a.atom("a"), a.atom("b")};
  std::map<std::string, AtomId> names{{"a", atoms[0]}, {"b", atoms[1]}};

  // Random raw trees with negations over compounds.
  std::mt19937_64 rng(7);
  auto rnd_tree = [&](auto&& self, int size) -> SynPtr {
    using Op = Syntax::Op;
    if (size <= 1)
      return Syntax::mk_atom(rng() % 2 ? "a" : "b");
    switch (rng() % 8) {
      case 0: return Syntax::mk(Op::Not, {self(self, size - 1)});
      case 1: return Syntax::mk(Op::Next, {self(self, size - 1)});
      case 2: return Syntax::mk(Op::Finally, {self(self, size - 1)});
      case 3: return Syntax::mk(Op::Globally, {self(self, size - 1)});
      default: {
        int left = 1 + static_cast<int>(rng() % std::max(1, size - 2));
        Op op;
        switch (rng() % 4) {
          case 0: op = Op::And; break;
          case 1: op = Op::Or; break;
          case 2: op = Op::Until; break;
          default: op = Op::Release; break;
        }
        return Syntax::mk(op, {self(self, left), self(self, size - 1 - left)});
      }
    }
  };

  auto lassos = small_lassos(atoms, 4);
  for (int trial = 0; trial < 300; ++trial) {
    SynPtr raw = rnd_tree(rnd_tree, 8);
    NodeId f = to_nnf(a, *raw);
    for (const Lasso& w : lassos) {
      bool expect = naive_eval_syntax(names, *raw, w, 0);
      bool got = lasso_check(a, f, w);
      if (expect != got) {
        CAPTURE(raw->to_string());
        CAPTURE(a.print(f));
        CAPTURE(format_lasso(a, w));
        REQUIRE(expect == got);
      }
    }
  }
}

TEST_CASE("lasso_check is tag-invariant") {
  Arena a;
  std::vector<AtomId> atoms{a.atom("a"), a.atom("b")};
  auto family = enumerate_family(a, 6, atoms);
  auto lassos = small_lassos(atoms, 3);
  for (std::size_t i = 0; i < family.size(); i += 7) {
    NodeId f = family[i];
    NodeId t = a.tag(f);
    if (t == f) continue;
    for (const Lasso& w : lassos)
      CHECK(lasso_check(a, f, w) == lasso_check(a, t, w));
  }
}
