#include "doctest.h"

#include "ipcmu/bounds.hpp"
#include "ipcmu/eliminate.hpp"
#include "ipcmu/formula.hpp"
#include "ipcmu/normalize.hpp"
#include "ipcmu/random_formula.hpp"
#include "ipcmu/semantics.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

using namespace ipcmu;

namespace {

Formula P(const std::string& text) { return parse(text); }

// The family b \/ (a1 -> x) \/ ... \/ (an -> x), whose least fixed point
// needs exactly n + 1 iterations on the right algebra.
Formula phi_family(int n) {
  Formula f = Formula::var("b");
  for (int i = 1; i <= n; ++i) {
    f = Formula::disj(std::move(f),
                      Formula::imp(Formula::var("a" + std::to_string(i)), Formula::var("x")));
  }
  return f;
}

std::size_t node_count(const Formula& f) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      return 1;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return 1 + node_count(f.left()) + node_count(f.right());
    case Kind::Mu:
    case Kind::Nu:
      return 1 + node_count(f.body());
  }
  return 1;
}

void for_each_valuation(const std::vector<std::string>& vars, const DownsetAlgebra& algebra,
                        const std::function<void(const Valuation&)>& body) {
  std::vector<int> digits(vars.size(), 0);
  for (;;) {
    Valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v.emplace_back(vars[i], digits[i]);
    body(v);
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == algebra.size()) digits[i++] = 0;
    if (i == digits.size()) return;
  }
}

std::vector<std::string> params_without(const Formula& f, const std::string& x,
                                        const std::string& y = "") {
  std::vector<std::string> vars;
  for (const std::string& v : free_vars(f)) {
    if (v != x && v != y) vars.push_back(v);
  }
  return vars;
}

}  // namespace

TEST_CASE("combinator arithmetic") {
  CHECK(roll_bound(2) == 3);
  CHECK(roll_bound(0) == 1);
  CHECK(conj_bound(1, 1) == 1);
  CHECK(conj_bound(2, 3) == 4);
  CHECK(diag_bound(2, 3) == 6);
  CHECK(diag_bound(0, 5) == 0);
  CHECK(bekic_bound(2, 3) == 11);
  CHECK(bekic_bound(0, 0) == 0);

  CHECK_THROWS_AS(roll_bound(-1), std::invalid_argument);
  CHECK_THROWS_AS(conj_bound(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(conj_bound(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(diag_bound(-2, 1), std::invalid_argument);
  CHECK_THROWS_AS(bekic_bound(1, -1), std::invalid_argument);
}

TEST_CASE("structural bounds") {
  CHECK(bound_disjunctive(parse_disjunctive(phi_family(2), "x")).value == 3);
  CHECK(bound_disjunctive(parse_disjunctive(P("x"), "x")).value == 1);
  CHECK(bound_disjunctive(parse_disjunctive(P("b \\/ x"), "x")).value == 1);

  CHECK(bound_weakly_negative(decompose_weakly_negative(P("(x -> a) -> b"), "x")).value == 2);
  CHECK(bound_weakly_negative(decompose_weakly_negative(P("a -> b"), "x")).value == 1);
  CHECK(bound_weakly_negative(
            decompose_weakly_negative(P("((x -> a) -> b) /\\ ((x -> c) -> d)"), "x"))
            .value == 3);
}

TEST_CASE("whole-body bounds follow the elimination route") {
  for (int n = 1; n <= 4; ++n) {
    CHECK(bound_mu(phi_family(n), "x").value == n + 1);
  }
  CHECK(bound_mu(P("x"), "x").value == 1);
  CHECK(bound_mu(P("(x -> a) -> b"), "x").value == 2);

  SUBCASE("derivations carry their factors") {
    ConvergenceBound bound = bound_mu(P("(b \\/ (a -> x)) /\\ ((x -> c) -> d)"), "x");
    REQUIRE(bound.inputs.size() == 2);
    CHECK(bound.rule.find("diagonal") != std::string::npos);
    CHECK(bound.value == bound.inputs[0].value * bound.inputs[1].value);
    std::string trace = bound.render();
    CHECK(trace.find("disjunctive part") != std::string::npos);
    CHECK(trace.find("antecedent system") != std::string::npos);
    CHECK(std::count(trace.begin(), trace.end(), '\n') >= 3);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_AS(bound_mu(P("x -> a"), "x"), std::invalid_argument);
    CHECK_THROWS_AS(bound_mu(P("mu u. u"), "x"), std::invalid_argument);
  }
}

TEST_CASE("the family witness meets its bound exactly") {
  for (int n = 1; n <= 3; ++n) {
    Formula body = phi_family(n);
    int bound = bound_mu(body, "x").value;
    REQUIRE(bound == n + 1);
    DownsetAlgebra algebra(powerset_poset(n));
    CHECK(measure_closure_ordinal(body, "x", algebra) == bound);
  }
}

TEST_CASE("measured closure ordinals never exceed the computed bound") {
  FormulaGenerator gen(211, GeneratorOptions{4, 0, {"a", "b"}});
  std::vector<DownsetAlgebra> algebras = algebras_up_to(3);
  int slack_seen = 0;
  for (int round = 0; round < 50; ++round) {
    Formula body = gen.positive_in("x");
    int bound = bound_mu(body, "x").value;
    for (const DownsetAlgebra& algebra : algebras) {
      int measured = measure_closure_ordinal(body, "x", algebra);
      CHECK(measured <= bound);
      if (measured < bound) ++slack_seen;
    }
  }
  CHECK(slack_seen > 0);  // the bound is an upper bound, not an exact count
}

TEST_CASE("iterating the body to the bound reaches the fixed point syntactically") {
  FormulaGenerator gen(223, GeneratorOptions{3, 0, {"a", "b"}});
  std::vector<DownsetAlgebra> algebras = algebras_up_to(3);
  int checked = 0;
  for (int round = 0; round < 40 && checked < 25; ++round) {
    Formula body = gen.positive_in("x");
    int bound = bound_mu(body, "x").value;
    Formula at_bound = iterate_subst(body, "x", bound, Formula::bot());
    if (node_count(at_bound) > 100000) continue;
    Formula once_more = substitute(body, "x", at_bound);
    ++checked;
    std::vector<std::string> params = params_without(body, "x");
    for (const DownsetAlgebra& algebra : algebras) {
      for_each_valuation(params, algebra, [&](const Valuation& v) {
        int settled = eval(at_bound, algebra, v);
        CHECK(settled == eval(once_more, algebra, v));
        CHECK(settled == lfp_trace(body, "x", algebra, v).value);
      });
    }
  }
  CHECK(checked >= 25);
}

TEST_CASE("combinator bounds hold for sampled maps with measured convergences") {
  FormulaGenerator gen(239, GeneratorOptions{3, 0, {"a"}});
  std::vector<DownsetAlgebra> algebras = algebras_up_to(3);

  SUBCASE("meets of strong maps") {
    for (int round = 0; round < 30; ++round) {
      Formula f = gen.positive_in("x");
      Formula g = gen.positive_in("x");
      Formula both = Formula::conj(f, g);
      std::vector<std::string> params = params_without(both, "x");
      for (const DownsetAlgebra& algebra : algebras) {
        for_each_valuation(params, algebra, [&](const Valuation& v) {
          int n = std::max(1, lfp_trace(f, "x", algebra, v).steps);
          int m = std::max(1, lfp_trace(g, "x", algebra, v).steps);
          CHECK(lfp_trace(both, "x", algebra, v).steps <= conj_bound(n, m));
        });
      }
    }
  }

  SUBCASE("rolled compositions") {
    for (int round = 0; round < 30; ++round) {
      Formula f = gen.positive_in("x");
      Formula g = gen.positive_in("x");
      Formula f_after_g = substitute(f, "x", g);
      Formula g_after_f = substitute(g, "x", f);
      std::vector<std::string> params = params_without(Formula::conj(f, g), "x");
      for (const DownsetAlgebra& algebra : algebras) {
        for_each_valuation(params, algebra, [&](const Valuation& v) {
          int n = lfp_trace(f_after_g, "x", algebra, v).steps;
          CHECK(lfp_trace(g_after_f, "x", algebra, v).steps <= roll_bound(n));
        });
      }
    }
  }

  SUBCASE("diagonal collapse") {
    for (int round = 0; round < 20; ++round) {
      Formula h = gen.positive_in_pair("x", "y");
      Formula diagonal = substitute(h, "y", Formula::var("x"));
      Formula induced = Formula::mu("y", h);  // x -> mu y. h(x,y)
      std::vector<std::string> params = params_without(h, "x", "y");
      for (const DownsetAlgebra& algebra : algebras) {
        for_each_valuation(params, algebra, [&](const Valuation& v) {
          // One bound for the inner fixed point, uniformly in x, and one for
          // the induced one-variable map.
          int inner = 0;
          for (int c = 0; c < algebra.size(); ++c) {
            Valuation with_x = v;
            with_x.emplace_back("x", c);
            inner = std::max(inner, lfp_trace(h, "y", algebra, with_x).steps);
          }
          int outer = lfp_trace(induced, "x", algebra, v).steps;
          CHECK(lfp_trace(diagonal, "x", algebra, v).steps <= diag_bound(inner, outer));
        });
      }
    }
  }

  SUBCASE("simultaneous pairs") {
    for (int round = 0; round < 20; ++round) {
      Formula f = gen.positive_in_pair("x", "y");
      Formula g = gen.positive_in_pair("x", "y");
      Formula composed = substitute(f, "y", Formula::mu("y", g));  // x -> f(x, mu y. g(x,y))
      std::vector<std::string> params = params_without(Formula::conj(f, g), "x", "y");
      for (const DownsetAlgebra& algebra : algebras) {
        for_each_valuation(params, algebra, [&](const Valuation& v) {
          // One bound for g's fixed point in y, uniformly in x, and one for
          // f composed with that solution.
          int inner = 0;
          for (int c = 0; c < algebra.size(); ++c) {
            Valuation with_x = v;
            with_x.emplace_back("x", c);
            inner = std::max(inner, lfp_trace(g, "y", algebra, with_x).steps);
          }
          int outer = lfp_trace(composed, "x", algebra, v).steps;
          // Iterate the pair map from (F, F) and count the settling step.
          int u = algebra.bottom(), w = algebra.bottom();
          int steps = 0;
          for (;;) {
            Valuation env = v;
            env.emplace_back("x", u);
            env.emplace_back("y", w);
            int nu = eval(f, algebra, env);
            int nw = eval(g, algebra, env);
            if (nu == u && nw == w) break;
            u = nu;
            w = nw;
            ++steps;
          }
          CHECK(steps <= bekic_bound(outer, inner));
        });
      }
    }
  }
}
