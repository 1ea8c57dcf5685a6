#include "ipcmu/formula.hpp"
#include "ipcmu/json_io.hpp"

#include <doctest.h>

#include <set>
#include <string>
#include <vector>

using namespace ipcmu;

namespace {

Formula v(const char* name) { return Formula::var(name); }

}  // namespace

TEST_CASE("parser respects precedence and associativity") {
  CHECK(parse("a -> b -> c") == Formula::imp(v("a"), Formula::imp(v("b"), v("c"))));
  CHECK(parse("a /\\ b \\/ c") == Formula::disj(Formula::conj(v("a"), v("b")), v("c")));
  CHECK(parse("a \\/ b /\\ c") == Formula::disj(v("a"), Formula::conj(v("b"), v("c"))));
  CHECK(parse("a /\\ b /\\ c") == Formula::conj(Formula::conj(v("a"), v("b")), v("c")));
  CHECK(parse("a -> b \\/ c") == Formula::imp(v("a"), Formula::disj(v("b"), v("c"))));
  CHECK(parse("(a -> b) -> c") == Formula::imp(Formula::imp(v("a"), v("b")), v("c")));
}

TEST_CASE("binder bodies extend as far right as possible") {
  Formula f = parse("mu x. b \\/ (a -> x)");
  REQUIRE(f.kind() == Kind::Mu);
  CHECK(f.name() == "x");
  CHECK(f.body() == Formula::disj(v("b"), Formula::imp(v("a"), v("x"))));

  CHECK(parse("mu x. x /\\ a") == Formula::mu("x", Formula::conj(v("x"), v("a"))));
  CHECK(parse("b \\/ mu x. x \\/ c") ==
        Formula::disj(v("b"), Formula::mu("x", Formula::disj(v("x"), v("c")))));
  CHECK(parse("a -> nu y. y") == Formula::imp(v("a"), Formula::nu("y", v("y"))));
  CHECK(parse("(mu x. x) -> a") == Formula::imp(Formula::mu("x", v("x")), v("a")));
}

TEST_CASE("negation is sugar for implication into F") {
  CHECK(parse("~a") == Formula::imp(v("a"), Formula::bot()));
  CHECK(parse("~~a") ==
        Formula::imp(Formula::imp(v("a"), Formula::bot()), Formula::bot()));
  CHECK(parse("~a /\\ b") ==
        Formula::conj(Formula::imp(v("a"), Formula::bot()), v("b")));
}

TEST_CASE("constants and keywords") {
  CHECK(parse("T").kind() == Kind::Top);
  CHECK(parse("F").kind() == Kind::Bot);
  // Keywords are not identifiers, but identifiers may contain them.
  CHECK(parse("mute") == v("mute"));
  CHECK(parse("Ty_1") == v("Ty_1"));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse("mu . x"), ParseError);
  CHECK_THROWS_AS(parse("(a -> b"), ParseError);
  CHECK_THROWS_AS(parse("a -> "), ParseError);
  CHECK_THROWS_AS(parse("a b"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("a @ b"), ParseError);
  CHECK_THROWS_AS(parse("x'"), ParseError);  // primes are reserved for fresh names

  try {
    parse("a ->\n@");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 1);
  }
}

TEST_CASE("printing uses minimal parentheses") {
  CHECK(to_string(Formula::imp(v("a"), Formula::imp(v("b"), v("c")))) == "a -> b -> c");
  CHECK(to_string(Formula::imp(Formula::imp(v("a"), v("b")), v("c"))) == "(a -> b) -> c");
  CHECK(to_string(Formula::conj(Formula::disj(v("a"), v("b")), v("c"))) == "(a \\/ b) /\\ c");
  CHECK(to_string(Formula::disj(v("a"), Formula::disj(v("b"), v("c")))) == "a \\/ (b \\/ c)");
  CHECK(to_string(parse("mu x. b \\/ (a -> x)")) == "mu x. b \\/ (a -> x)");
  // A binder that is not the final suffix must be parenthesized.
  CHECK(to_string(Formula::conj(Formula::mu("x", v("x")), v("a"))) == "(mu x. x) /\\ a");
  CHECK(to_string(Formula::imp(v("a"), Formula::mu("x", v("x")))) == "a -> mu x. x");
}

TEST_CASE("printing round-trips through the parser") {
  const char* samples[] = {
      "a", "T", "F", "a -> b -> c", "(a -> b) -> c", "a /\\ b \\/ c",
      "a \\/ (b \\/ c)", "mu x. b \\/ (a -> x)", "nu x. (x -> b) -> x",
      "mu x. nu y. (a -> x) \\/ y", "b /\\ mu x. x \\/ c",
      "(mu x. a /\\ x) -> nu z. z", "~~(a \\/ ~a)",
  };
  for (const char* s : samples) {
    CAPTURE(s);
    Formula f = parse(s);
    CHECK(parse(to_string(f)) == f);
  }
}

TEST_CASE("structural equality distinguishes binder names") {
  CHECK(parse("mu x. x") != parse("mu y. y"));
  CHECK(parse("a /\\ b") != parse("b /\\ a"));
  CHECK(parse("mu x. a -> x") == parse("mu x. (a -> x)"));
}

TEST_CASE("free, bound and fresh variables") {
  Formula f = parse("a /\\ mu x. x \\/ b");
  CHECK(free_vars(f) == std::set<std::string>{"a", "b"});
  CHECK(all_vars(f) == std::set<std::string>{"a", "b", "x"});
  CHECK(is_free_in(f, "a"));
  CHECK(!is_free_in(f, "x"));
  CHECK(fixed_point_free(parse("a -> b \\/ ~c")));
  CHECK(!fixed_point_free(f));

  CHECK(fresh_var("x", {"x"}) == "x'");
  CHECK(fresh_var("x", {"x", "x'"}) == "x'1");
  CHECK(fresh_var("x", {"x", "x'", "x'1"}) == "x'2");
}

TEST_CASE("substitution replaces free occurrences only") {
  CHECK(substitute(parse("x /\\ (x -> b)"), "x", parse("a \\/ b")) ==
        parse("(a \\/ b) /\\ ((a \\/ b) -> b)"));
  // x is bound inside the binder: nothing to do.
  CHECK(substitute(parse("mu x. x /\\ a"), "x", v("b")) == parse("mu x. x /\\ a"));
  CHECK(substitute(parse("y -> mu x. x \\/ y"), "y", v("c")) == parse("c -> mu x. x \\/ c"));
}

TEST_CASE("substitution avoids capture by renaming binders") {
  // y := x under a mu binding x: the binder must step aside first.
  Formula got = substitute(parse("mu x. x /\\ y"), "y", v("x"));
  CHECK(got == Formula::mu("x'", Formula::conj(v("x'"), v("x"))));
  // The primed name is itself avoided when already taken.
  Formula taken = Formula::mu("x", Formula::conj(Formula::conj(v("x"), v("y")), v("x'")));
  Formula nested = substitute(taken, "y", v("x"));
  CHECK(nested == Formula::mu("x'1", Formula::conj(Formula::conj(v("x'1"), v("x")), v("x'"))));
}

TEST_CASE("simultaneous substitution does not chain") {
  // x := y, y := x swaps the two variables.
  Formula got = substitute_all(parse("x -> y"), {{"x", v("y")}, {"y", v("x")}});
  CHECK(got == parse("y -> x"));
}

TEST_CASE("iterated substitution unfolds a map n times") {
  Formula f = parse("a -> x");
  CHECK(iterate_subst(f, "x", 0, Formula::bot()) == Formula::bot());
  CHECK(iterate_subst(f, "x", 1, Formula::bot()) == parse("a -> F"));
  CHECK(iterate_subst(f, "x", 2, Formula::bot()) == parse("a -> a -> F"));
}

TEST_CASE("occurrence analysis counts antecedent crossings") {
  SUBCASE("consequent position is strongly positive") {
    VariableReport r = analyze(parse("b \\/ (a -> x)"), "x");
    CHECK(r.polarity == Polarity::Positive);
    REQUIRE(r.occurrences.size() == 1);
    CHECK(r.occurrences[0].crossings == 0);
    CHECK(r.occurrences[0].cls() == OccurrenceClass::StronglyPositive);
  }
  SUBCASE("antecedent position is negative") {
    VariableReport r = analyze(parse("x -> a"), "x");
    CHECK(r.polarity == Polarity::Negative);
    REQUIRE(r.occurrences.size() == 1);
    CHECK(r.occurrences[0].crossings == 1);
  }
  SUBCASE("two crossings make a weakly negative positive occurrence") {
    VariableReport r = analyze(parse("(x -> a) -> b"), "x");
    CHECK(r.polarity == Polarity::Positive);
    REQUIRE(r.occurrences.size() == 1);
    CHECK(r.occurrences[0].crossings == 2);
    CHECK(r.occurrences[0].cls() == OccurrenceClass::WeaklyNegative);
  }
  SUBCASE("mixed polarity") {
    VariableReport r = analyze(parse("x /\\ (x -> a)"), "x");
    CHECK(r.polarity == Polarity::Mixed);
    CHECK(r.occurrences.size() == 2);
  }
  SUBCASE("bound occurrences are not reported") {
    VariableReport r = analyze(parse("mu x. x \\/ a"), "x");
    CHECK(r.polarity == Polarity::Absent);
    CHECK(r.occurrences.empty());
  }
  SUBCASE("paths identify the occurrence") {
    VariableReport r = analyze(parse("b \\/ (a -> x)"), "x");
    REQUIRE(r.occurrences.size() == 1);
    CHECK(to_string(r.occurrences[0].path) == "RR");
  }
}

TEST_CASE("well-formedness accepts positive binders only") {
  CHECK(well_formed(parse("mu x. b \\/ (a -> x)")).ok);
  CHECK(well_formed(parse("mu x. (x -> a) -> b")).ok);
  CHECK(well_formed(parse("nu x. x")).ok);
  CHECK(well_formed(parse("mu x. a")).ok);  // absent is fine
  CHECK(well_formed(parse("mu x. nu y. x /\\ y")).ok);

  WellFormedness bad = well_formed(parse("a \\/ mu x. x -> b"));
  CHECK(!bad.ok);
  REQUIRE(bad.issues.size() == 1);
  CHECK(bad.issues[0].binder == "x");
  CHECK(bad.issues[0].occurrence.crossings == 1);
  CHECK(!bad.issues[0].message().empty());

  // The offending binder may be nested.
  CHECK(!well_formed(parse("mu x. a /\\ nu y. (y -> b)")).ok);
  // Mixed occurrences are rejected too.
  CHECK(!well_formed(parse("mu x. x /\\ (x -> a)")).ok);
}

TEST_CASE("json serialization round-trips") {
  const char* samples[] = {
      "a", "T", "F", "a -> b -> c", "mu x. b \\/ (a -> x)",
      "nu y. y /\\ (a \\/ ~b)", "mu x. nu y. (a -> x) \\/ y",
  };
  for (const char* s : samples) {
    CAPTURE(s);
    Formula f = parse(s);
    CHECK(from_json(to_json(f)) == f);
  }
  Formula f = parse("mu x. b \\/ (a -> x)");
  nlohmann::json j = to_json(f);
  CHECK(j["kind"] == "mu");
  CHECK(j["var"] == "x");
  CHECK(j["body"]["kind"] == "or");
  CHECK(j["body"]["right"]["left"]["name"] == "a");
}

TEST_CASE("json rejects malformed input") {
  CHECK_THROWS_AS(from_json(nlohmann::json::parse(R"({"kind":"woof"})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_json(nlohmann::json::parse(R"({"kind":"and","left":{"kind":"top"}})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(from_json(nlohmann::json::parse(R"(["top"])")), std::invalid_argument);
  CHECK_THROWS_AS(from_json(nlohmann::json::parse(R"({"kind":"var","name":3})")),
                  std::invalid_argument);
}
