#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "semnav/grounder.h"
#include "semnav/parser.h"
#include "semnav/solver.h"
#include "support/test_support.h"

using namespace semnav;
using semnav::testing::answer_set_texts;

namespace {

GroundProgram gp_of(const std::string& text,
                    std::optional<long> maxint = std::nullopt) {
  return ground(parse_program(text, maxint));
}

std::vector<GroundAtom> atoms(const std::vector<std::string>& names) {
  std::vector<GroundAtom> out;
  for (const auto& n : names) out.push_back(GroundAtom{n, {}});
  return out;
}

// All stable models by brute force over the universe, the oracle side of the
// solver equivalence property.
std::set<std::vector<std::string>> brute_force_answer_sets(
    const GroundProgram& gp) {
  std::set<std::vector<std::string>> out;
  std::size_t n = gp.atom_universe.size();
  REQUIRE(n <= 16);
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<GroundAtom> candidate;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ull << i)) candidate.push_back(gp.atom_universe[i]);
    if (check_stability(gp, candidate)) {
      std::vector<std::string> texts;
      for (const auto& a : candidate) texts.push_back(to_string(a));
      out.insert(std::move(texts));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("disjunction has its two minimal models") {
  SolveReport r = solve(gp_of("a v b."));
  REQUIRE(r.count == 2);
  CHECK(answer_set_texts(r) ==
        std::set<std::vector<std::string>>{{"a"}, {"b"}});
}

TEST_CASE("even negation loop has two answer sets") {
  SolveReport r = solve(gp_of("a :- not b. b :- not a."));
  CHECK(answer_set_texts(r) ==
        std::set<std::vector<std::string>>{{"a"}, {"b"}});
}

TEST_CASE("direct inconsistency has no answer set") {
  CHECK(solve(gp_of("a. :- a.")).count == 0);
}

TEST_CASE("aggregate constraint rejects an over-count") {
  SolveReport r = solve(
      gp_of("cross_left(1). cross_left(2). :-#count{T : cross_left(T)}>1."));
  CHECK(r.count == 0);
}

TEST_CASE("aggregate constraint accepts an exact count") {
  SolveReport r =
      solve(gp_of("cross_left(1). :-#count{T : cross_left(T)}>1."));
  CHECK(r.count == 1);
}

TEST_CASE("odd loop through negation is inconsistent") {
  CHECK(solve(gp_of("a :- not a.")).count == 0);
}

TEST_CASE("positive loops stay unfounded") {
  SolveReport r = solve(gp_of("a :- b. b :- a."));
  REQUIRE(r.count == 1);
  CHECK(r.answer_sets[0].atoms.empty());
}

TEST_CASE("empty program has the empty answer set") {
  SolveReport r = solve(gp_of(""));
  REQUIRE(r.count == 1);
  CHECK(r.answer_sets[0].atoms.empty());
}

TEST_CASE("check_stability matches the textbook cases") {
  CHECK_FALSE(check_stability(gp_of("a v b."), atoms({"a", "b"})));
  CHECK(check_stability(gp_of("a v b."), atoms({"a"})));
  CHECK(check_stability(gp_of("a :- not b."), atoms({"a"})));
  CHECK_FALSE(check_stability(gp_of("a :- not b."), atoms({"b"})));
  CHECK_FALSE(check_stability(gp_of("a :- a."), atoms({"a"})));
  CHECK(check_stability(gp_of("a :- a."), {}));
  // candidates touching atoms outside the universe are never stable
  CHECK_FALSE(check_stability(gp_of("a."), atoms({"zzz"})));
}

TEST_CASE("canonical ordering and determinism") {
  const char* text = "a v b. c :- not a.";
  SolveReport r1 = solve(gp_of(text));
  SolveReport r2 = solve(gp_of(text));
  REQUIRE(r1.count == r2.count);
  for (std::size_t i = 0; i < r1.count; ++i)
    CHECK(r1.answer_sets[i] == r2.answer_sets[i]);
  // sorted lexicographically on the sorted atom texts
  std::vector<std::vector<std::string>> listed;
  for (const auto& s : r1.answer_sets) {
    std::vector<std::string> texts;
    for (const auto& a : s.atoms) texts.push_back(to_string(a));
    listed.push_back(texts);
  }
  CHECK(std::is_sorted(listed.begin(), listed.end()));
}

TEST_CASE("limit keeps the first sets in canonical order") {
  GroundProgram gp = gp_of("a v b. c v d.");
  SolveReport all = solve(gp);
  REQUIRE(all.count == 4);
  SolveOptions opts;
  opts.limit = 2;
  SolveReport some = solve(gp, opts);
  REQUIRE(some.count == 2);
  CHECK(some.answer_sets[0] == all.answer_sets[0]);
  CHECK(some.answer_sets[1] == all.answer_sets[1]);
}

TEST_CASE("node budget raises ResourceExceeded") {
  SolveOptions opts;
  opts.node_budget = 3;
  CHECK_THROWS_AS(solve(gp_of("a v b. c v d. e v f."), opts),
                  ResourceExceeded);
}

TEST_CASE("property: solve equals brute-force stability enumeration") {
  std::mt19937 rng(123);
  for (int i = 0; i < 150; ++i) {
    std::string text = semnav::testing::random_ground_program_text(rng);
    CAPTURE(text);
    GroundProgram gp = gp_of(text);
    CHECK(answer_set_texts(solve(gp)) == brute_force_answer_sets(gp));
  }
}

TEST_CASE("property: adding a constraint never adds answer sets") {
  std::mt19937 rng(321);
  for (int i = 0; i < 80; ++i) {
    std::string text = semnav::testing::random_ground_program_text(rng);
    std::string constraint;
    switch (semnav::testing::pick(rng, 0, 2)) {
      case 0: constraint = ":- a."; break;
      case 1: constraint = ":- p(1)."; break;
      case 2: constraint = ":- #count{T : p(T)} > 1."; break;
    }
    auto before = answer_set_texts(solve(gp_of(text)));
    auto after = answer_set_texts(solve(gp_of(text + "\n" + constraint)));
    for (const auto& s : after) CHECK(before.count(s));
  }
}

TEST_CASE("non-monotonicity: a new fact can retract a conclusion") {
  auto before = answer_set_texts(solve(gp_of("a :- not b.")));
  auto after = answer_set_texts(solve(gp_of("a :- not b.\nb.")));
  CHECK(before == std::set<std::vector<std::string>>{{"a"}});
  CHECK(after == std::set<std::vector<std::string>>{{"b"}});
  // {a} was an answer set and is gone after adding the fact
  CHECK(before.count({"a"}));
  CHECK_FALSE(after.count({"a"}));
}

TEST_CASE("elapsed time is reported") {
  SolveReport r = solve(gp_of("a v b."));
  CHECK(r.elapsed_s >= 0.0);
  CHECK(r.elapsed_s < 10.0);
}
