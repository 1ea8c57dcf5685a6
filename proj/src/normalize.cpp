#include "ipcmu/normalize.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace ipcmu {

// ---------------------------------------------------------------------------
// Weakly negative renaming
// ---------------------------------------------------------------------------

namespace {

Formula rename_above_crossings(const Formula& f, const std::string& x,
                               const std::string& y, int crossings) {
  switch (f.kind()) {
    case Kind::Var:
      return (crossings > 0 && f.name() == x) ? Formula::var(y) : f;
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::And:
      return Formula::conj(rename_above_crossings(f.left(), x, y, crossings),
                           rename_above_crossings(f.right(), x, y, crossings));
    case Kind::Or:
      return Formula::disj(rename_above_crossings(f.left(), x, y, crossings),
                           rename_above_crossings(f.right(), x, y, crossings));
    case Kind::Imp:
      return Formula::imp(rename_above_crossings(f.left(), x, y, crossings + 1),
                          rename_above_crossings(f.right(), x, y, crossings));
    case Kind::Mu:
    case Kind::Nu:
      break;
  }
  throw std::invalid_argument("rename: the formula must be fixed-point free");
}

}  // namespace

RenamedPair rename_weakly_negative(const Formula& phi, const std::string& x) {
  if (!fixed_point_free(phi)) {
    throw std::invalid_argument("rename: the formula must be fixed-point free");
  }
  Polarity p = analyze(phi, x).polarity;
  if (p == Polarity::Negative || p == Polarity::Mixed) {
    throw std::invalid_argument("rename: '" + x + "' must be positive");
  }
  std::set<std::string> avoid = all_vars(phi);
  avoid.insert(x);
  std::string y = fresh_var(x, avoid);
  return RenamedPair{rename_above_crossings(phi, x, y, 0), x, y};
}

// ---------------------------------------------------------------------------
// Disjunctive formulas
// ---------------------------------------------------------------------------

NotDisjunctiveError::NotDisjunctiveError(std::string reason_, std::string position_)
    : std::runtime_error("not disjunctive at " + position_ + ": " + reason_),
      reason(std::move(reason_)),
      position(std::move(position_)) {}

namespace {

void push_unique(std::vector<Formula>& into, const Formula& f) {
  if (std::find(into.begin(), into.end(), f) == into.end()) into.push_back(f);
}

const char* kind_word(Kind k) {
  switch (k) {
    case Kind::Var: return "variable";
    case Kind::Top: return "T";
    case Kind::Bot: return "F";
    case Kind::And: return "conjunction";
    case Kind::Or: return "disjunction";
    case Kind::Imp: return "implication";
    case Kind::Mu: return "mu";
    case Kind::Nu: return "nu";
  }
  return "?";
}

struct DisjunctiveScan {
  DisjunctiveScan(const std::string& variable, const Formula& f)
      : x(variable), term{f, variable, {}, {}} {}

  const std::string& x;
  DisjunctiveTerm term;
  std::string reason;
  std::string where;
  Path path;
  bool failed = false;

  void fail(std::string why) {
    if (!failed) {
      failed = true;
      reason = std::move(why);
      where = to_string(path);
    }
  }

  // Invariant: x occurs free in g.
  void walk(const Formula& g) {
    if (failed) return;
    switch (g.kind()) {
      case Kind::Var:
        assert(g.name() == x);
        return;
      case Kind::Or: {
        bool in_left = is_free_in(g.left(), x);
        bool in_right = is_free_in(g.right(), x);
        if (in_left && in_right) {
          path.push_back(Step::Left);
          walk(g.left());
          path.back() = Step::Right;
          walk(g.right());
          path.pop_back();
        } else if (in_left) {
          push_unique(term.side, g.right());
          path.push_back(Step::Left);
          walk(g.left());
          path.pop_back();
        } else {
          push_unique(term.side, g.left());
          path.push_back(Step::Right);
          walk(g.right());
          path.pop_back();
        }
        return;
      }
      case Kind::Imp:
        if (is_free_in(g.left(), x)) {
          path.push_back(Step::Left);
          fail("'" + x + "' occurs in an antecedent");
          path.pop_back();
          return;
        }
        push_unique(term.head, g.left());
        path.push_back(Step::Right);
        walk(g.right());
        path.pop_back();
        return;
      default:
        fail(std::string("a ") + kind_word(g.kind()) + " may not contain '" + x + "' here");
        return;
    }
  }
};

}  // namespace

std::optional<DisjunctiveTerm> try_parse_disjunctive(const Formula& f, const std::string& x,
                                                     std::string* reason) {
  if (!is_free_in(f, x)) {
    if (reason) *reason = "'" + x + "' does not occur";
    return std::nullopt;
  }
  DisjunctiveScan scan(x, f);
  scan.walk(f);
  if (scan.failed) {
    if (reason) *reason = scan.reason + " (at " + scan.where + ")";
    return std::nullopt;
  }
  return std::move(scan.term);
}

DisjunctiveTerm parse_disjunctive(const Formula& f, const std::string& x) {
  if (!is_free_in(f, x)) {
    throw NotDisjunctiveError("'" + x + "' does not occur", "(root)");
  }
  DisjunctiveScan scan(x, f);
  scan.walk(f);
  if (scan.failed) {
    throw NotDisjunctiveError(scan.reason, scan.where);
  }
  return std::move(scan.term);
}

// ---------------------------------------------------------------------------
// Normal form
// ---------------------------------------------------------------------------

namespace {

// Splits into conjuncts, distributing innermost first:
//   a -> (p /\ q)   ~~>  (a -> p) /\ (a -> q)
//   (p /\ q) \/ r   ~~>  (p \/ r) /\ (q \/ r)     (and symmetrically)
std::vector<Formula> split_conjuncts(const Formula& f, const std::string& x) {
  if (!is_free_in(f, x)) return {f};
  switch (f.kind()) {
    case Kind::Var:
      return {f};  // f is x itself
    case Kind::And: {
      std::vector<Formula> out = split_conjuncts(f.left(), x);
      std::vector<Formula> right = split_conjuncts(f.right(), x);
      out.insert(out.end(), right.begin(), right.end());
      return out;
    }
    case Kind::Imp: {
      // The antecedent is x-free by the strong-positivity precondition.
      std::vector<Formula> out;
      for (const Formula& part : split_conjuncts(f.right(), x)) {
        out.push_back(Formula::imp(f.left(), part));
      }
      return out;
    }
    case Kind::Or: {
      std::vector<Formula> left = split_conjuncts(f.left(), x);
      std::vector<Formula> right = split_conjuncts(f.right(), x);
      std::vector<Formula> out;
      out.reserve(left.size() * right.size());
      for (const Formula& l : left) {
        for (const Formula& r : right) {
          out.push_back(Formula::disj(l, r));
        }
      }
      return out;
    }
    default:
      throw std::invalid_argument(
          "normal form: a binder over a subformula containing '" + x +
          "' cannot be distributed; eliminate inner fixed points first");
  }
}

}  // namespace

Formula NormalForm::conjunction() const {
  if (conjuncts.empty()) return Formula::top();
  Formula acc = conjuncts.front().formula;
  for (std::size_t i = 1; i < conjuncts.size(); ++i) {
    acc = Formula::conj(std::move(acc), conjuncts[i].formula);
  }
  return acc;
}

NormalForm to_normal_form(const Formula& psi, const std::string& x) {
  for (const Occurrence& occ : analyze(psi, x).occurrences) {
    if (occ.crossings != 0) {
      throw std::invalid_argument("normal form: '" + x +
                                  "' must be strongly positive (offending occurrence at " +
                                  to_string(occ.path) + ")");
    }
  }
  NormalForm nf;
  nf.var = x;
  for (Formula& part : split_conjuncts(psi, x)) {
    NormalForm::Conjunct conjunct{std::move(part), std::nullopt};
    if (is_free_in(conjunct.formula, x)) {
      conjunct.disjunctive = parse_disjunctive(conjunct.formula, x);
    }
    nf.conjuncts.push_back(std::move(conjunct));
  }
  return nf;
}

}  // namespace ipcmu
