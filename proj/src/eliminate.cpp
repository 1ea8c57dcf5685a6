#include "ipcmu/eliminate.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace ipcmu {

// ---------------------------------------------------------------------------
// Unit-law simplification
// ---------------------------------------------------------------------------

Formula simplify(const Formula& f) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::And: {
      Formula l = simplify(f.left());
      Formula r = simplify(f.right());
      if (l.kind() == Kind::Top) return r;
      if (r.kind() == Kind::Top) return l;
      if (l.kind() == Kind::Bot || r.kind() == Kind::Bot) return Formula::bot();
      return Formula::conj(std::move(l), std::move(r));
    }
    case Kind::Or: {
      Formula l = simplify(f.left());
      Formula r = simplify(f.right());
      if (l.kind() == Kind::Bot) return r;
      if (r.kind() == Kind::Bot) return l;
      if (l.kind() == Kind::Top || r.kind() == Kind::Top) return Formula::top();
      return Formula::disj(std::move(l), std::move(r));
    }
    case Kind::Imp: {
      Formula l = simplify(f.left());
      Formula r = simplify(f.right());
      if (r.kind() == Kind::Top) return Formula::top();
      if (l.kind() == Kind::Bot) return Formula::top();
      if (l.kind() == Kind::Top) return r;
      if (l == r) return Formula::top();
      return Formula::imp(std::move(l), std::move(r));
    }
    case Kind::Mu:
      return Formula::mu(f.name(), simplify(f.body()));
    case Kind::Nu:
      return Formula::nu(f.name(), simplify(f.body()));
  }
  return f;  // unreachable
}

// ---------------------------------------------------------------------------
// Weakly negative decomposition
// ---------------------------------------------------------------------------

namespace {

void require_weakly_negative(const Formula& phi, const std::string& x, const char* who) {
  if (!fixed_point_free(phi)) {
    throw std::invalid_argument(std::string(who) + ": the formula must be fixed-point free");
  }
  VariableReport report = analyze(phi, x);
  if (report.polarity == Polarity::Negative || report.polarity == Polarity::Mixed) {
    throw std::invalid_argument(std::string(who) + ": '" + x + "' must be positive");
  }
  for (const Occurrence& occ : report.occurrences) {
    if (occ.cls() == OccurrenceClass::StronglyPositive) {
      throw std::invalid_argument(std::string(who) + ": '" + x +
                                  "' has a strongly positive occurrence (at " +
                                  to_string(occ.path) +
                                  "); split it off via the normal form first");
    }
  }
}

struct Decomposer {
  const std::string& x;
  std::set<std::string> avoid;
  std::vector<std::string> ys;
  std::vector<Formula> parts;

  // Replaces each outermost antecedent containing x by a fresh variable.
  // Only called on subformulas outside every antecedent, so a bare x here
  // would be strongly positive — excluded by the precondition.
  Formula walk(const Formula& f) {
    if (!is_free_in(f, x)) return f;
    switch (f.kind()) {
      case Kind::And: {
        Formula l = walk(f.left());  // sequenced: fresh names read left to right
        Formula r = walk(f.right());
        return Formula::conj(std::move(l), std::move(r));
      }
      case Kind::Or: {
        Formula l = walk(f.left());
        Formula r = walk(f.right());
        return Formula::disj(std::move(l), std::move(r));
      }
      case Kind::Imp: {
        if (!is_free_in(f.left(), x)) {
          return Formula::imp(f.left(), walk(f.right()));
        }
        std::string y = fresh_var("y", avoid);
        avoid.insert(y);
        ys.push_back(y);
        parts.push_back(f.left());
        return Formula::imp(Formula::var(y), walk(f.right()));
      }
      default:
        throw std::logic_error("decompose: occurrence outside every antecedent");
    }
  }
};

}  // namespace

WnDecomposition decompose_weakly_negative(const Formula& phi, const std::string& x) {
  require_weakly_negative(phi, x, "decompose");
  std::set<std::string> avoid = all_vars(phi);
  avoid.insert(x);
  Decomposer dec{x, std::move(avoid), {}, {}};
  Formula psi0 = dec.walk(phi);
  return WnDecomposition{x, std::move(psi0), std::move(dec.ys), std::move(dec.parts)};
}

EquationSystem equation_system(const WnDecomposition& dec) {
  EquationSystem sys;
  sys.variables = dec.ys;
  sys.rhs.reserve(dec.parts.size());
  for (const Formula& part : dec.parts) {
    sys.rhs.push_back(substitute(part, dec.x, dec.psi0));
  }
  return sys;
}

std::vector<Formula> solve_greatest_system(const WnDecomposition& dec) {
  EquationSystem sys = equation_system(dec);
  const std::size_t n = sys.variables.size();
  std::vector<Formula> current(n, Formula::top());
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::pair<std::string, Formula>> subs;
    subs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      subs.emplace_back(sys.variables[i], current[i]);
    }
    std::vector<Formula> next;
    next.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      next.push_back(simplify(substitute_all(sys.rhs[i], subs)));
    }
    current = std::move(next);
  }
  return current;
}

Formula mu_weakly_negative(const Formula& phi, const std::string& x) {
  WnDecomposition dec = decompose_weakly_negative(phi, x);
  std::vector<Formula> nus = solve_greatest_system(dec);
  std::vector<std::pair<std::string, Formula>> subs;
  subs.reserve(nus.size());
  for (std::size_t i = 0; i < nus.size(); ++i) {
    subs.emplace_back(dec.ys[i], nus[i]);
  }
  return simplify(substitute_all(dec.psi0, subs));
}

// ---------------------------------------------------------------------------
// The four-step least fixed point and its greatest companion
// ---------------------------------------------------------------------------

Formula mu_disjunctive(const DisjunctiveTerm& term) {
  Formula antecedent = Formula::top();
  for (std::size_t i = 0; i < term.head.size(); ++i) {
    antecedent = i == 0 ? term.head[i] : Formula::conj(std::move(antecedent), term.head[i]);
  }
  Formula consequent = Formula::bot();
  for (std::size_t i = 0; i < term.side.size(); ++i) {
    consequent = i == 0 ? term.side[i] : Formula::disj(std::move(consequent), term.side[i]);
  }
  return simplify(Formula::imp(std::move(antecedent), std::move(consequent)));
}

namespace {

void require_positive_body(const Formula& phi, const std::string& x, const char* who) {
  if (!fixed_point_free(phi)) {
    throw std::invalid_argument(std::string(who) + ": the body must be fixed-point free");
  }
  Polarity p = analyze(phi, x).polarity;
  if (p == Polarity::Negative || p == Polarity::Mixed) {
    throw std::invalid_argument(std::string(who) + ": '" + x + "' must be positive in the body");
  }
}

}  // namespace

Formula mu_eliminate(const Formula& phi, const std::string& x) {
  require_positive_body(phi, x, "mu");
  // Step 1: send the occurrences under antecedents to a helper variable.
  RenamedPair rp = rename_weakly_negative(phi, x);
  // Step 2: conjunction of x-free and disjunctive parts.
  NormalForm nf = to_normal_form(rp.formula, x);
  // Step 3: the fixed point distributes over the conjunction, and each
  // disjunctive part has the closed form (/\ heads) -> (\/ sides); x-free
  // parts are their own fixed point.
  Formula folded = Formula::top();
  for (std::size_t i = 0; i < nf.conjuncts.size(); ++i) {
    const NormalForm::Conjunct& c = nf.conjuncts[i];
    Formula piece = c.constant() ? c.formula : mu_disjunctive(*c.disjunctive);
    folded = i == 0 ? std::move(piece) : Formula::conj(std::move(folded), std::move(piece));
  }
  // Step 4: the helper is weakly negative, so its fixed point is reached by
  // the greatest solution of the decomposition system.
  return mu_weakly_negative(simplify(folded), rp.y);
}

Formula nu_eliminate(const Formula& phi, const std::string& x) {
  require_positive_body(phi, x, "nu");
  return simplify(substitute(phi, x, Formula::top()));
}

// ---------------------------------------------------------------------------
// Whole-formula driver
// ---------------------------------------------------------------------------

namespace {

Formula eliminate_rec(const Formula& f, std::vector<EliminationStep>* steps) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::And: {
      Formula l = eliminate_rec(f.left(), steps);  // sequenced: trace reads left to right
      Formula r = eliminate_rec(f.right(), steps);
      return Formula::conj(std::move(l), std::move(r));
    }
    case Kind::Or: {
      Formula l = eliminate_rec(f.left(), steps);
      Formula r = eliminate_rec(f.right(), steps);
      return Formula::disj(std::move(l), std::move(r));
    }
    case Kind::Imp: {
      Formula l = eliminate_rec(f.left(), steps);
      Formula r = eliminate_rec(f.right(), steps);
      return Formula::imp(std::move(l), std::move(r));
    }
    case Kind::Mu:
    case Kind::Nu: {
      Formula body = eliminate_rec(f.body(), steps);
      Formula replacement = f.kind() == Kind::Mu ? mu_eliminate(body, f.name())
                                                 : nu_eliminate(body, f.name());
      if (steps) {
        steps->push_back(EliminationStep{f.kind(), f.name(), std::move(body), replacement});
      }
      return replacement;
    }
  }
  return f;  // unreachable
}

}  // namespace

Formula eliminate_all(const Formula& chi, std::vector<EliminationStep>* steps) {
  WellFormedness wf = well_formed(chi);
  if (!wf.ok) {
    throw std::invalid_argument("eliminate: " + wf.issues.front().message());
  }
  return eliminate_rec(chi, steps);
}

}  // namespace ipcmu
