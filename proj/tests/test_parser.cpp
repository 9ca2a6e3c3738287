#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "semnav/parser.h"
#include "support/test_support.h"

using namespace semnav;

namespace {

const char* kId1Constraints =
    ":-#count{T : cross_left(T)}=0.\n"
    ":-#count{T : cross_left(T)}>1.\n"
    "\n"
    ":-#count{T : cross_straight(T)}=0.\n"
    ":-#count{T : cross_straight(T)}>1.\n"
    "\n"
    ":-#count{T : cross_right(T)}=0.\n"
    ":-#count{T : cross_right(T)}>1.\n"
    "\n"
    ":-cross_left(T1), cross_straight(T2), T1>=T2.\n"
    ":-cross_left(T1), cross_right(T3), T1>=T3.\n"
    "\n"
    ":-cross_straight(T2), cross_right(T3),T2>=T3.\n";

}  // namespace

TEST_CASE("aggregate constraint parses into the expected shape") {
  Program p = parse_program(":-#count{T : cross_left(T)}=0.");
  REQUIRE(p.rules.size() == 1);
  const Rule& r = p.rules[0];
  CHECK(r.is_constraint());
  REQUIRE(r.body.size() == 1);
  REQUIRE(r.body[0].kind == BodyElemKind::Aggregate);
  const AggregateAtom& agg = r.body[0].agg;
  CHECK(agg.bound_var == "T");
  CHECK(agg.inner.predicate == "cross_left");
  REQUIRE(agg.inner.args.size() == 1);
  CHECK(agg.inner.args[0] == Term::variable("T"));
  CHECK(agg.op == CmpOp::Eq);
  CHECK(agg.guard == Term::integer(0));
}

TEST_CASE("empty text yields an empty program") {
  Program p = parse_program("");
  CHECK(p.rules.empty());
  CHECK(print_program(p) == "");
}

TEST_CASE("unclosed parenthesis is a syntax error at the right position") {
  try {
    parse_program("cross_left(1");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 13);  // where ')' or ',' should have appeared
  }
}

TEST_CASE("safety accepts positive-only bodies and rejects unbound negation") {
  CHECK_NOTHROW(parse_program(":- p(X, Y)."));
  try {
    parse_program("q(X) :- not p(X).");
    FAIL("expected SafetyError");
  } catch (const SafetyError& e) {
    CHECK(e.variable == "X");
    CHECK(e.rule_index == 0);
  }
}

TEST_CASE("safety covers comparisons, guards and aggregate atoms") {
  CHECK_THROWS_AS(parse_program(":- p(X), X > Y."), SafetyError);
  CHECK_THROWS_AS(parse_program(":- #count{T : p(T)} >= G."), SafetyError);
  CHECK_NOTHROW(parse_program(":- q(G), #count{T : p(T)} >= G."));
  CHECK_THROWS_AS(parse_program(":- #count{T : r(T, X)} = 1."), SafetyError);
  CHECK_NOTHROW(parse_program(":- q(X), #count{T : r(T, X)} = 1."));
}

TEST_CASE("canonical printing of the counting constraint") {
  Program p = parse_program(":-#count{T : cross_left(T)}=0.");
  CHECK(print_program(p) == ":- #count{T : cross_left(T)} = 0.");
  // round trip
  CHECK(parse_program(print_program(p)) == p);
}

TEST_CASE("canonical printing of a fact") {
  Program p = parse_program("cross_left(1).");
  CHECK(print_program(p) == "cross_left(1).");
  CHECK(p.rules[0].is_fact());
}

TEST_CASE("count_effective_lines on the recorded constraint text") {
  CHECK(count_effective_lines(kId1Constraints) == 9);
  CHECK(count_effective_lines("") == 0);
  CHECK(count_effective_lines("% comment only\n\n") == 0);
  CHECK(count_effective_lines("a.\n% note\n  \nb.") == 2);
}

TEST_CASE("the recorded constraint text parses") {
  Program p = parse_program(kId1Constraints, 3);
  CHECK(p.rules.size() == 9);
  for (const auto& r : p.rules) CHECK(r.is_constraint());
  CHECK(p.maxint == 3);
}

TEST_CASE("'!=' is rejected anywhere in the input") {
  CHECK_THROWS_AS(parse_program(":- p(X), q(Y), X != Y."), SyntaxError);
  CHECK_THROWS_AS(parse_program("% a comment mentioning !=\na."), SyntaxError);
  CHECK_THROWS_AS(parse_program("a :- b, 1 != 2."), SyntaxError);
}

TEST_CASE("aggregate functions other than #count are unsupported") {
  CHECK_THROWS_AS(parse_program(":- #sum{T : p(T)} = 0."),
                  UnsupportedAggregate);
  CHECK_THROWS_AS(parse_program(":- #max{T : p(T)} = 0."),
                  UnsupportedAggregate);
  // still a SyntaxError for callers that do not care about the distinction
  CHECK_THROWS_AS(parse_program(":- #sum{T : p(T)} = 0."), SyntaxError);
}

TEST_CASE("aggregates are only allowed in constraint bodies") {
  CHECK_THROWS_AS(parse_program("a :- #count{T : p(T)} = 0."), SyntaxError);
  CHECK_NOTHROW(parse_program(":- #count{T : p(T)} = 0."));
}

TEST_CASE("arity is fixed by first use") {
  try {
    parse_program("p(1). p(1, 2).");
    FAIL("expected ArityError");
  } catch (const ArityError& e) {
    CHECK(e.predicate == "p");
    CHECK(e.expected == 1);
    CHECK(e.found == 2);
  }
  // a 0-ary predicate and a constant of the same name may coexist
  CHECK_NOTHROW(parse_program("p. q(p)."));
}

TEST_CASE("maxint: directive wins over parameter, parameter over literals") {
  Program with_directive = parse_program("#maxint = 7. p(2).", 4);
  CHECK(with_directive.maxint == 7);
  CHECK(with_directive.explicit_maxint);
  Program with_param = parse_program("p(2).", 4);
  CHECK(with_param.maxint == 4);
  Program from_literals = parse_program("p(2). q(5).");
  CHECK(from_literals.maxint == 5);
  Program empty = parse_program("");
  CHECK(empty.maxint == 0);
}

TEST_CASE("comparison operands must be integers or variables") {
  CHECK_THROWS_AS(parse_program(":- p(X), X > foo."), SyntaxError);
  CHECK_THROWS_AS(parse_program(":- foo > 1."), SyntaxError);
  CHECK_THROWS_AS(parse_program(":- q(G), #count{T : p(T)} = bar."),
                  SyntaxError);
}

TEST_CASE("degenerate statements are rejected") {
  CHECK_THROWS_AS(parse_program("."), SyntaxError);
  CHECK_THROWS_AS(parse_program(":- ."), SyntaxError);
  CHECK_THROWS_AS(parse_program("a v ."), SyntaxError);
  CHECK_THROWS_AS(parse_program("{ a } = 1."), SyntaxError);
}

TEST_CASE("disjunction keyword does not shadow a predicate named v") {
  Program p = parse_program("v(1). a v b :- v(1).");
  REQUIRE(p.rules.size() == 2);
  CHECK(p.rules[1].head.size() == 2);
  CHECK(print_program(p) == "v(1).\na v b :- v(1).");
}

TEST_CASE("parse determinism: identical input, identical AST and errors") {
  const char* text = "a v b :- c, not d, 1 < 2.\nc.";
  CHECK(parse_program(text) == parse_program(text));
  int line1 = 0, col1 = 0, line2 = 0, col2 = 0;
  try {
    parse_program("a :- b\nc.");
  } catch (const SyntaxError& e) {
    line1 = e.line;
    col1 = e.column;
  }
  try {
    parse_program("a :- b\nc.");
  } catch (const SyntaxError& e) {
    line2 = e.line;
    col2 = e.column;
  }
  CHECK(line1 == line2);
  CHECK(col1 == col2);
  CHECK(line1 > 0);
}

TEST_CASE("property: print/parse round trip on random programs") {
  std::mt19937 rng(20250810);
  for (int i = 0; i < 1000; ++i) {
    Program p = semnav::testing::random_program(rng);
    std::string text = print_program(p);
    Program q = parse_program(text, p.maxint);
    CHECK(q == p);
    CHECK(print_program(q) == text);
  }
}

TEST_CASE("property: '!=' injected into valid programs always rejects") {
  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    Program p = semnav::testing::random_program(rng);
    std::string text = print_program(p);
    std::size_t pos = text.empty()
                          ? 0
                          : std::uniform_int_distribution<std::size_t>(
                                0, text.size())(rng);
    text.insert(pos, " X != Y ");
    CHECK_THROWS_AS(parse_program(text), SyntaxError);
  }
}
