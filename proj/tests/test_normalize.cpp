#include "doctest.h"

#include "ipcmu/formula.hpp"
#include "ipcmu/normalize.hpp"
#include "ipcmu/random_formula.hpp"
#include "ipcmu/semantics.hpp"

#include <string>
#include <vector>

using namespace ipcmu;

namespace {

Formula P(const std::string& text) { return parse(text); }

}  // namespace

TEST_CASE("renaming splits off the occurrences under antecedents") {
  SUBCASE("doubly nested occurrence is renamed") {
    RenamedPair rp = rename_weakly_negative(P("(x -> a) -> b"), "x");
    CHECK(rp.x == "x");
    CHECK(rp.y == "x'");
    CHECK(rp.formula == Formula::imp(Formula::imp(Formula::var("x'"), Formula::var("a")),
                                     Formula::var("b")));
  }

  SUBCASE("strongly positive occurrences stay put") {
    Formula phi = P("b \\/ (a -> x)");
    RenamedPair rp = rename_weakly_negative(phi, "x");
    CHECK(rp.formula == phi);
    CHECK(!is_free_in(rp.formula, rp.y));
  }

  SUBCASE("mixed occurrences are separated") {
    RenamedPair rp = rename_weakly_negative(P("x /\\ ((x -> a) -> b)"), "x");
    CHECK(to_string(rp.formula) == "x /\\ ((x' -> a) -> b)");
  }

  SUBCASE("substituting x back for y recovers the input") {
    std::vector<std::string> inputs = {
        "(x -> a) -> b",
        "x /\\ ((x -> a) -> b)",
        "((x -> a) -> x) \\/ (b -> x)",
        "a",
    };
    for (const auto& text : inputs) {
      Formula phi = P(text);
      RenamedPair rp = rename_weakly_negative(phi, "x");
      CHECK(substitute(rp.formula, rp.y, Formula::var(rp.x)) == phi);
    }
  }

  SUBCASE("absent variable leaves the formula untouched") {
    Formula phi = P("a -> b");
    RenamedPair rp = rename_weakly_negative(phi, "x");
    CHECK(rp.formula == phi);
    CHECK(rp.y == "x'");
  }

  SUBCASE("negative occurrences are rejected") {
    CHECK_THROWS_AS(rename_weakly_negative(P("x -> a"), "x"), std::invalid_argument);
    CHECK_THROWS_AS(rename_weakly_negative(P("x /\\ (x -> a)"), "x"), std::invalid_argument);
  }

  SUBCASE("fixed points are rejected") {
    CHECK_THROWS_AS(rename_weakly_negative(P("mu u. u \\/ x"), "x"), std::invalid_argument);
  }

  SUBCASE("fresh name avoids every variable in sight, bound or free") {
    Formula phi = Formula::imp(Formula::imp(Formula::var("x"), Formula::var("x'")),
                               Formula::var("b"));
    RenamedPair rp = rename_weakly_negative(phi, "x");
    CHECK(rp.y == "x'1");
  }

  SUBCASE("random positive formulas split and reassemble") {
    FormulaGenerator gen(31, GeneratorOptions{4, 0, {"a", "b"}});
    for (int round = 0; round < 200; ++round) {
      Formula phi = gen.positive_in("x");
      RenamedPair rp = rename_weakly_negative(phi, "x");
      CHECK(substitute(rp.formula, rp.y, Formula::var(rp.x)) == phi);
      // Every x left behind is strongly positive; every y is weakly negative.
      for (const Occurrence& occ : analyze(rp.formula, rp.x).occurrences) {
        CHECK(occ.crossings == 0);
      }
      for (const Occurrence& occ : analyze(rp.formula, rp.y).occurrences) {
        CHECK(occ.crossings > 0);
      }
    }
  }
}

TEST_CASE("disjunctive formulas are recognized and harvested") {
  SUBCASE("the variable alone") {
    DisjunctiveTerm t = parse_disjunctive(P("x"), "x");
    CHECK(t.head.empty());
    CHECK(t.side.empty());
    CHECK(t.var == "x");
  }

  SUBCASE("one guard and one side disjunct") {
    DisjunctiveTerm t = parse_disjunctive(P("b \\/ (a -> x)"), "x");
    REQUIRE(t.head.size() == 1);
    CHECK(t.head[0] == Formula::var("a"));
    REQUIRE(t.side.size() == 1);
    CHECK(t.side[0] == Formula::var("b"));
  }

  SUBCASE("several guards harvest left to right") {
    DisjunctiveTerm t = parse_disjunctive(P("b \\/ (a1 -> x) \\/ (a2 -> x)"), "x");
    REQUIRE(t.head.size() == 2);
    CHECK(t.head[0] == Formula::var("a1"));
    CHECK(t.head[1] == Formula::var("a2"));
    REQUIRE(t.side.size() == 1);
    CHECK(t.side[0] == Formula::var("b"));
  }

  SUBCASE("nested guards stack") {
    DisjunctiveTerm t = parse_disjunctive(P("a -> (b -> x)"), "x");
    REQUIRE(t.head.size() == 2);
    CHECK(t.head[0] == Formula::var("a"));
    CHECK(t.head[1] == Formula::var("b"));
    CHECK(t.side.empty());
  }

  SUBCASE("duplicate guards and sides collapse") {
    DisjunctiveTerm t = parse_disjunctive(P("(a -> x) \\/ (a -> x)"), "x");
    CHECK(t.head.size() == 1);
    CHECK(t.side.empty());

    DisjunctiveTerm u = parse_disjunctive(P("b \\/ x \\/ b"), "x");
    CHECK(u.side.size() == 1);
  }

  SUBCASE("compound guards and sides are kept whole") {
    DisjunctiveTerm t = parse_disjunctive(P("(p /\\ q) \\/ ((a -> b) -> x)"), "x");
    REQUIRE(t.head.size() == 1);
    CHECK(t.head[0] == P("a -> b"));
    REQUIRE(t.side.size() == 1);
    CHECK(t.side[0] == P("p /\\ q"));
  }

  SUBCASE("both disjuncts may contain the variable") {
    DisjunctiveTerm t = parse_disjunctive(P("(a -> x) \\/ (b -> x)"), "x");
    REQUIRE(t.head.size() == 2);
    CHECK(t.head[0] == Formula::var("a"));
    CHECK(t.head[1] == Formula::var("b"));
    CHECK(t.side.empty());
  }

  SUBCASE("a formula without the variable is not disjunctive in it") {
    std::string reason;
    CHECK(!try_parse_disjunctive(P("a -> b"), "x", &reason));
    CHECK(reason == "'x' does not occur");
  }

  SUBCASE("conjunctions are rejected with the offending position") {
    try {
      parse_disjunctive(P("x /\\ b"), "x");
      FAIL("expected NotDisjunctiveError");
    } catch (const NotDisjunctiveError& e) {
      CHECK(e.position == "(root)");
      CHECK(e.reason == "a conjunction may not contain 'x' here");
    }
  }

  SUBCASE("the variable may not sit in an antecedent") {
    try {
      parse_disjunctive(P("b \\/ (x -> a)"), "x");
      FAIL("expected NotDisjunctiveError");
    } catch (const NotDisjunctiveError& e) {
      CHECK(e.position == "RL");
      CHECK(e.reason == "'x' occurs in an antecedent");
    }
  }

  SUBCASE("try_parse reports the same diagnosis without throwing") {
    std::string reason;
    CHECK(!try_parse_disjunctive(P("b \\/ (x -> a)"), "x", &reason));
    CHECK(reason == "'x' occurs in an antecedent (at RL)");
    CHECK(try_parse_disjunctive(P("b \\/ (a -> x)"), "x").has_value());
  }
}

TEST_CASE("normal form rewrites into x-free and disjunctive conjuncts") {
  SUBCASE("implication distributes over the conjuncts of its consequent") {
    NormalForm nf = to_normal_form(P("a -> (x /\\ b)"), "x");
    REQUIRE(nf.conjuncts.size() == 2);
    CHECK(nf.conjuncts[0].formula == P("a -> x"));
    REQUIRE(nf.conjuncts[0].disjunctive.has_value());
    CHECK(nf.conjuncts[0].disjunctive->head == std::vector<Formula>{Formula::var("a")});
    CHECK(nf.conjuncts[1].formula == P("a -> b"));
    CHECK(nf.conjuncts[1].constant());
  }

  SUBCASE("a conjunction splits into its parts") {
    NormalForm nf = to_normal_form(P("(b \\/ x) /\\ (a -> x)"), "x");
    REQUIRE(nf.conjuncts.size() == 2);
    CHECK(nf.conjuncts[0].formula == P("b \\/ x"));
    CHECK(nf.conjuncts[0].disjunctive->side == std::vector<Formula>{Formula::var("b")});
    CHECK(nf.conjuncts[1].formula == P("a -> x"));
    CHECK(nf.conjuncts[1].disjunctive->head == std::vector<Formula>{Formula::var("a")});
  }

  SUBCASE("a disjunction distributes as a cross product") {
    NormalForm nf = to_normal_form(P("(x /\\ b) \\/ (c -> x)"), "x");
    REQUIRE(nf.conjuncts.size() == 2);
    CHECK(nf.conjuncts[0].formula == P("x \\/ (c -> x)"));
    CHECK(nf.conjuncts[1].formula == P("b \\/ (c -> x)"));
    CHECK(!nf.conjuncts[0].constant());
    CHECK(!nf.conjuncts[1].constant());
  }

  SUBCASE("an x-free conjunction is kept whole as a constant") {
    NormalForm nf = to_normal_form(P("(p /\\ q) \\/ x"), "x");
    REQUIRE(nf.conjuncts.size() == 1);
    CHECK(nf.conjuncts[0].disjunctive->side == std::vector<Formula>{P("p /\\ q")});
  }

  SUBCASE("already disjunctive input is a single conjunct") {
    NormalForm nf = to_normal_form(P("b \\/ (a -> x)"), "x");
    REQUIRE(nf.conjuncts.size() == 1);
    CHECK(nf.conjuncts[0].formula == P("b \\/ (a -> x)"));
    CHECK(nf.conjunction() == P("b \\/ (a -> x)"));
  }

  SUBCASE("occurrences under an antecedent are rejected") {
    CHECK_THROWS_AS(to_normal_form(P("(x -> a) -> b"), "x"), std::invalid_argument);
  }

  SUBCASE("a binder over the variable is rejected") {
    CHECK_THROWS_AS(to_normal_form(P("a -> mu u. (x \\/ u)"), "x"), std::invalid_argument);
  }

  SUBCASE("the conjunction of the parts equals the input on every small algebra") {
    std::vector<std::string> inputs = {
        "a -> (x /\\ b)",
        "(b \\/ x) /\\ (a -> x)",
        "(x /\\ b) \\/ (c -> x)",
        "a -> (b -> (x /\\ (b \\/ x)))",
        "(x \\/ (a /\\ x)) /\\ b",
    };
    std::vector<DownsetAlgebra> algebras = algebras_up_to(3);
    for (const auto& text : inputs) {
      Formula psi = P(text);
      Formula folded = to_normal_form(psi, "x").conjunction();
      for (const DownsetAlgebra& algebra : algebras) {
        CHECK(!check_equiv(psi, folded, algebra).has_value());
      }
    }
  }

  SUBCASE("random strongly positive formulas normalize soundly") {
    FormulaGenerator gen(47, GeneratorOptions{4, 0, {"a", "b"}});
    std::vector<DownsetAlgebra> algebras = algebras_up_to(3);
    int nontrivial = 0;
    for (int round = 0; round < 120; ++round) {
      Formula phi = gen.positive_in("x");
      RenamedPair rp = rename_weakly_negative(phi, "x");
      NormalForm nf = to_normal_form(rp.formula, "x");
      if (nf.conjuncts.size() > 1) ++nontrivial;
      for (const NormalForm::Conjunct& c : nf.conjuncts) {
        if (c.constant()) {
          CHECK(!is_free_in(c.formula, "x"));
        } else {
          CHECK(try_parse_disjunctive(c.formula, "x").has_value());
        }
      }
      Formula folded = nf.conjunction();
      for (const DownsetAlgebra& algebra : algebras) {
        CHECK(!check_equiv(rp.formula, folded, algebra).has_value());
      }
    }
    CHECK(nontrivial > 10);
  }
}
