#pragma once

#include "ipcmu/eliminate.hpp"
#include "ipcmu/formula.hpp"
#include "ipcmu/normalize.hpp"

#include <string>
#include <vector>

namespace ipcmu {

/// An upper bound on the number of iterations of a body from F needed to
/// reach its least fixed point, with the derivation recorded as a tree of
/// the rules that produced each factor.
struct ConvergenceBound {
  int value = 0;
  std::string rule;                      // e.g. "diagonal: 2 * 3 = 6"
  std::vector<ConvergenceBound> inputs;  // the bounds the rule combined

  /// Indented multi-line rendering of the derivation, deepest factors last.
  std::string render() const;
};

/// A composition g(f(-)) converges once the swapped composition f(g(-)) does:
/// n + 1.
int roll_bound(int n);
/// A meet f /\ g of two strong maps converging in n and m steps converges in
/// n + m - 1 steps (n, m >= 1).
int conj_bound(int n, int m);
/// Collapsing f(x, y) onto its diagonal: when the inner fixed point in y
/// converges within n steps for every x, and the induced one-variable map
/// x -> (least y with y = f(x, y)) within m, the diagonal converges in n * m.
int diag_bound(int n, int m);
/// A pair f(x, y), g(x, y) iterated simultaneously from (F, F) settles within
/// (n + 1) * (m + 1) - 1 steps, where m bounds g's fixed point in y for every
/// x and n bounds f composed with that solution.
int bekic_bound(int n, int m);

/// |heads| + 1: one pass per guard plus one to settle the sides.
ConvergenceBound bound_disjunctive(const DisjunctiveTerm& term);

/// n + 1 for a decomposition with n extracted antecedents.
ConvergenceBound bound_weakly_negative(const WnDecomposition& dec);

/// Upper bound for mu x. phi, composed along the same route the eliminator
/// takes: per-conjunct disjunctive bounds folded with conj_bound, then
/// combined with the helper-variable system bound through diag_bound.
/// Preconditions as mu_eliminate.
ConvergenceBound bound_mu(const Formula& phi, const std::string& x);

}  // namespace ipcmu
