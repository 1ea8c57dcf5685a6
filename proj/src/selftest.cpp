#include "ipcmu/selftest.hpp"

#include "ipcmu/bounds.hpp"
#include "ipcmu/eliminate.hpp"
#include "ipcmu/formula.hpp"
#include "ipcmu/prover.hpp"
#include "ipcmu/random_formula.hpp"
#include "ipcmu/semantics.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>
#include <utility>

namespace ipcmu {

namespace {

class SuiteRun {
 public:
  explicit SuiteRun(std::string name) : start_(std::chrono::steady_clock::now()) {
    result_.name = std::move(name);
  }

  void check(bool ok, const std::function<std::string()>& describe_failure) {
    ++result_.checks;
    if (ok) return;
    ++failures_;
    if (result_.detail.empty()) result_.detail = describe_failure();
  }

  void tally() { ++result_.checks; }

  SuiteResult finish(const std::string& summary) {
    result_.passed = failures_ == 0;
    if (!result_.passed) {
      std::ostringstream out;
      out << failures_ << " failure" << (failures_ == 1 ? "" : "s") << "; first: "
          << result_.detail;
      result_.detail = out.str();
    } else {
      result_.detail = summary;
    }
    result_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return result_;
  }

 private:
  SuiteResult result_;
  long long failures_ = 0;
  std::chrono::steady_clock::time_point start_;
};

void for_each_valuation(const std::vector<std::string>& vars, const DownsetAlgebra& algebra,
                        const std::function<void(const Valuation&)>& body) {
  std::vector<int> digits(vars.size(), 0);
  for (;;) {
    Valuation v;
    v.reserve(vars.size());
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

bool has_generated_variable(const Formula& f) {
  for (const std::string& v : all_vars(f)) {
    if (v.find('\'') != std::string::npos) return true;
  }
  return false;
}

// b \/ (a1 -> x) \/ ... \/ (an -> x)
Formula family_body(int n) {
  Formula f = Formula::var("b");
  for (int i = 1; i <= n; ++i) {
    f = Formula::disj(std::move(f),
                      Formula::imp(Formula::var("a" + std::to_string(i)), Formula::var("x")));
  }
  return f;
}

// a1 /\ ... /\ an -> b
Formula family_closed_form(int n) {
  Formula guards = Formula::var("a1");
  for (int i = 2; i <= n; ++i) {
    guards = Formula::conj(std::move(guards), Formula::var("a" + std::to_string(i)));
  }
  return Formula::imp(std::move(guards), Formula::var("b"));
}

int element_of_mask(const DownsetAlgebra& algebra, std::uint32_t mask) {
  for (int e = 0; e < algebra.size(); ++e) {
    if (algebra.mask_of(e) == mask) return e;
  }
  throw std::logic_error("requested down-set is not in the carrier");
}

// On the algebra of down-sets of subsets of {1..n}: b is the principal
// down-set of the empty set, and each a_i holds exactly on the subsets not
// containing i. Under this valuation the family needs every one of its
// n + 1 iterations.
Valuation family_valuation(int n, const DownsetAlgebra& algebra) {
  Valuation v;
  v.emplace_back("b", element_of_mask(algebra, 1u));  // point 0 is the empty set
  for (int i = 1; i <= n; ++i) {
    std::uint32_t mask = 0;
    for (int s = 0; s < (1 << n); ++s) {
      if (!(s & (1 << (i - 1)))) mask |= 1u << s;
    }
    v.emplace_back("a" + std::to_string(i), element_of_mask(algebra, mask));
  }
  return v;
}

std::string plural(long long n, const char* word) {
  std::ostringstream out;
  out << n << " " << word << (n == 1 ? "" : "s");
  return out.str();
}

}  // namespace

SuiteResult run_family_suite(const SelftestConfig& config) {
  SuiteRun run("family convergence");
  std::vector<DownsetAlgebra> algebras = algebras_up_to(config.max_poset_size);
  ProverOptions prover_options{config.prover_budget};

  for (int n = 1; n <= 4; ++n) {
    Formula body = family_body(n);
    Formula bound = Formula::mu("x", body);
    Formula closed = family_closed_form(n);
    Formula out = eliminate_all(bound);
    run.check(equivalent(out, closed, prover_options), [&] {
      return "prover rejects " + to_string(out) + " == " + to_string(closed);
    });
    for (const DownsetAlgebra& algebra : algebras) {
      run.check(!check_equiv(out, closed, algebra).has_value(), [&] {
        return to_string(out) + " differs from " + to_string(closed) + " on " +
               algebra.poset().describe();
      });
      run.check(!check_equiv(bound, closed, algebra).has_value(), [&] {
        return to_string(bound) + " differs from " + to_string(closed) + " on " +
               algebra.poset().describe();
      });
    }
  }

  for (int n = 1; n <= 3; ++n) {
    Formula body = family_body(n);
    DownsetAlgebra algebra{powerset_poset(n)};
    int steps = lfp_trace(body, "x", algebra, family_valuation(n, algebra)).steps;
    run.check(steps == n + 1, [&] {
      std::ostringstream out;
      out << "family of size " << n << " stabilized after " << steps << " steps, not "
          << n + 1;
      return out.str();
    });
  }

  return run.finish("closed forms proved and checked on " + plural(algebras.size(), "algebra") +
                    "; ordinals exact");
}

SuiteResult run_roundtrip_suite(const SelftestConfig& config) {
  SuiteRun run("elimination round-trip");
  std::vector<DownsetAlgebra> algebras = algebras_up_to(config.max_poset_size);
  FormulaGenerator gen(config.seed, GeneratorOptions{5, 2, {"a", "b", "c"}});

  for (int i = 0; i < config.corpus; ++i) {
    Formula chi = gen.formula();
    run.check(well_formed(chi).ok,
              [&] { return "generator produced ill-formed " + to_string(chi); });
    Formula out = eliminate_all(chi);
    run.check(fixed_point_free(out),
              [&] { return "binder left in " + to_string(out); });
    run.check(!has_generated_variable(out),
              [&] { return "helper variable left in " + to_string(out); });
    for (const DownsetAlgebra& algebra : algebras) {
      auto counterexample = check_equiv(chi, out, algebra);
      run.check(!counterexample.has_value(), [&] {
        return to_string(chi) + " != " + to_string(out) + " on " +
               algebra.poset().describe();
      });
    }
  }

  return run.finish(plural(config.corpus, "formula") + " eliminated and verified on " +
                    plural(algebras.size(), "algebra"));
}

SuiteResult run_one_step_nu_suite(const SelftestConfig& config) {
  SuiteRun run("one-step greatest fixed points");
  std::vector<DownsetAlgebra> algebras = algebras_up_to(config.max_poset_size);
  FormulaGenerator gen(config.seed + 1, GeneratorOptions{4, 0, {"a", "b"}});

  for (int i = 0; i < config.corpus; ++i) {
    Formula phi = gen.positive_in("x");
    Formula at_top = substitute(phi, "x", Formula::top());
    Formula twice = substitute(phi, "x", at_top);
    std::vector<std::string> params = params_without(phi, "x");
    for (const DownsetAlgebra& algebra : algebras) {
      bool agreed = true;
      for_each_valuation(params, algebra, [&](const Valuation& v) {
        if (!agreed) return;
        int one = eval(at_top, algebra, v);
        agreed = eval(twice, algebra, v) == one &&
                 gfp_trace(phi, "x", algebra, v).value == one;
      });
      run.check(agreed, [&] {
        return to_string(phi) + " does not stabilize in one step on " +
               algebra.poset().describe();
      });
    }
  }

  return run.finish(plural(config.corpus, "operator") + " stabilized at the first iterate on " +
                    plural(algebras.size(), "algebra"));
}

SuiteResult run_lemma_suite(const SelftestConfig& config) {
  SuiteRun run("algebraic lemmas");
  std::uint64_t seed = config.seed + 2;
  long long properties = 0;
  std::vector<DownsetAlgebra> algebras = algebras_up_to(config.max_poset_size);
  for (const DownsetAlgebra& algebra : algebras) {
    LemmaReport report = check_lemma_properties(algebra, config.lemma_samples, seed++);
    properties += report.total();
    run.check(report.ok(), [&] {
      return report.failures.front() + " [on " + algebra.poset().describe() + "]";
    });
    run.check(report.total() >=
                  static_cast<long long>(config.lemma_samples) * 10,  // ten properties per round
              [&] { return "lemma round count fell short on " + algebra.poset().describe(); });
  }
  std::ostringstream summary;
  summary << properties << " property samples across " << algebras.size() << " algebras";
  return run.finish(summary.str());
}

SuiteResult run_bound_suite(const SelftestConfig& config) {
  SuiteRun run("bound soundness");
  std::vector<DownsetAlgebra> algebras = algebras_up_to(config.max_poset_size);
  FormulaGenerator gen(config.seed + 3, GeneratorOptions{4, 0, {"a", "b"}});

  for (int i = 0; i < config.corpus; ++i) {
    Formula body = gen.positive_in("x");
    int bound = bound_mu(body, "x").value;
    for (const DownsetAlgebra& algebra : algebras) {
      int measured = measure_closure_ordinal(body, "x", algebra);
      run.check(measured <= bound, [&] {
        std::ostringstream out;
        out << to_string(body) << " needed " << measured << " steps, bound claims " << bound
            << ", on " << algebra.poset().describe();
        return out.str();
      });
    }
  }

  // Combinators against measured convergences of sampled maps.
  const int rounds = std::max(10, config.corpus / 20);
  for (int i = 0; i < rounds; ++i) {
    Formula f = gen.positive_in("x");
    Formula g = gen.positive_in("x");
    Formula both = Formula::conj(f, g);
    Formula f_after_g = substitute(f, "x", g);
    Formula g_after_f = substitute(g, "x", f);
    Formula h = gen.positive_in_pair("x", "y");
    Formula k = gen.positive_in_pair("x", "y");
    Formula diagonal = substitute(h, "y", Formula::var("x"));
    Formula h_induced = Formula::mu("y", h);                          // x -> mu y. h(x,y)
    Formula pair_composed = substitute(h, "y", Formula::mu("y", k));  // x -> h(x, mu y. k(x,y))
    std::vector<std::string> params = params_without(
        Formula::conj(both, Formula::conj(h, k)), "x", "y");
    for (const DownsetAlgebra& algebra : algebras) {
      bool conj_ok = true, roll_ok = true, diag_ok = true, pair_ok = true;
      for_each_valuation(params, algebra, [&](const Valuation& v) {
        int n = std::max(1, lfp_trace(f, "x", algebra, v).steps);
        int m = std::max(1, lfp_trace(g, "x", algebra, v).steps);
        conj_ok = conj_ok && lfp_trace(both, "x", algebra, v).steps <= conj_bound(n, m);
        int composed = lfp_trace(f_after_g, "x", algebra, v).steps;
        roll_ok = roll_ok &&
                  lfp_trace(g_after_f, "x", algebra, v).steps <= roll_bound(composed);

        // The diagonal and pair rules assume one bound for the inner fixed
        // point, uniformly in the other coordinate, and one for the induced
        // one-variable map -- not separate per-coordinate bounds.
        int hm = 0, km = 0;
        for (int c = 0; c < algebra.size(); ++c) {
          Valuation with_x = v;
          with_x.emplace_back("x", c);
          hm = std::max(hm, lfp_trace(h, "y", algebra, with_x).steps);
          km = std::max(km, lfp_trace(k, "y", algebra, with_x).steps);
        }
        diag_ok = diag_ok &&
                  lfp_trace(diagonal, "x", algebra, v).steps <=
                      diag_bound(hm, lfp_trace(h_induced, "x", algebra, v).steps);

        int u = algebra.bottom(), w = algebra.bottom(), steps = 0;
        for (;;) {
          Valuation env = v;
          env.emplace_back("x", u);
          env.emplace_back("y", w);
          int nu = eval(h, algebra, env);
          int nw = eval(k, algebra, env);
          if (nu == u && nw == w) break;
          u = nu;
          w = nw;
          ++steps;
        }
        pair_ok = pair_ok &&
                  steps <= bekic_bound(lfp_trace(pair_composed, "x", algebra, v).steps, km);
      });
      run.check(conj_ok, [&] { return "meet bound failed for " + to_string(both); });
      run.check(roll_ok, [&] { return "rolling bound failed for " + to_string(g_after_f); });
      run.check(diag_ok, [&] { return "diagonal bound failed for " + to_string(diagonal); });
      run.check(pair_ok, [&] {
        return "pair bound failed for " + to_string(h) + " with " + to_string(k);
      });
    }
  }

  return run.finish(plural(config.corpus, "operator") + " within bounds on " +
                    plural(algebras.size(), "algebra") + "; combinators respected");
}

SuiteResult run_agreement_suite(const SelftestConfig& config) {
  SuiteRun run("oracle agreement");
  std::vector<DownsetAlgebra> algebras = algebras_up_to(config.max_poset_size);
  FormulaGenerator gen(config.seed + 4, GeneratorOptions{4, 0, {"a", "b", "c"}});
  ProverOptions prover_options{config.prover_budget};

  long long proved = 0, refuted = 0;
  for (int i = 0; i < config.corpus; ++i) {
    Formula lhs = gen.fixed_point_free_formula();
    Formula rhs = gen.fixed_point_free_formula();
    bool is_provable = false;
    bool budget_hit = false;
    try {
      is_provable = provable(Sequent{{lhs}, rhs}, prover_options);
    } catch (const BudgetExceeded&) {
      budget_hit = true;
    }
    run.check(!budget_hit, [&] {
      return "proof search gave up on " + to_string(lhs) + " |- " + to_string(rhs);
    });
    if (budget_hit) continue;

    const DownsetAlgebra* refuting = nullptr;
    for (const DownsetAlgebra& algebra : algebras) {
      if (refute_sequent({lhs}, rhs, algebra).has_value()) {
        refuting = &algebra;
        break;
      }
    }
    if (is_provable) ++proved;
    if (refuting) ++refuted;
    run.check(!(is_provable && refuting), [&] {
      return "proved sequent " + to_string(lhs) + " |- " + to_string(rhs) +
             " has a counterexample on " + refuting->poset().describe();
    });
  }

  std::ostringstream summary;
  summary << proved << " proved, " << refuted << " refuted, verdicts never collide";
  return run.finish(summary.str());
}

std::vector<SuiteResult> run_all_suites(const SelftestConfig& config) {
  return {
      run_family_suite(config),     run_roundtrip_suite(config), run_one_step_nu_suite(config),
      run_lemma_suite(config),      run_bound_suite(config),     run_agreement_suite(config),
  };
}

}  // namespace ipcmu
