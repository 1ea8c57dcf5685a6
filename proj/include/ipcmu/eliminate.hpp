#pragma once

#include "ipcmu/formula.hpp"
#include "ipcmu/normalize.hpp"

#include <string>
#include <vector>

namespace ipcmu {

/// One bottom-up pass of the unit laws
///   T /\ f = f   F /\ f = F   F \/ f = f   T \/ f = T
///   T -> f = f   f -> T = T   F -> f = T   f -> f = T
/// (and their mirror images). Preserves equivalence; idempotent.
Formula simplify(const Formula& f);

/// phi written as psi0(psi1(x), ..., psin(x)): each part is an outermost
/// antecedent containing x, replaced in the skeleton psi0 by the fresh
/// variable with the same index. x is negative in each part, absent from
/// psi0, and each y is negative in psi0; substituting the parts back for
/// the ys recovers phi.
struct WnDecomposition {
  std::string x;
  Formula psi0;
  std::vector<std::string> ys;
  std::vector<Formula> parts;

  std::size_t n() const { return parts.size(); }
};

/// Requires x positive in phi with no strongly positive occurrence (split
/// those off via the normal form first) and phi fixed-point free.
WnDecomposition decompose_weakly_negative(const Formula& phi, const std::string& x);

/// The system y_i = g_i(y_1, ..., y_n) with g_i = psi_i(psi0(ys)); every g_i
/// is positive in every y_j, so the system has a greatest solution.
struct EquationSystem {
  std::vector<std::string> variables;
  std::vector<Formula> rhs;
};

EquationSystem equation_system(const WnDecomposition& dec);

/// The greatest solution of the decomposition's equation system: the n-fold
/// iterate of ys -> (g_1(ys), ..., g_n(ys)) starting from (T, ..., T),
/// simplified each round. Each component is free of x and of every y.
std::vector<Formula> solve_greatest_system(const WnDecomposition& dec);

/// Least fixed point of a disjunctive term:
///   mu x. (side1 \/ ... \/ (head1 -> x) \/ ...)  =  (/\ heads) -> (\/ sides)
/// with the empty conjunction read as T and the empty disjunction as F.
Formula mu_disjunctive(const DisjunctiveTerm& term);

/// Least fixed point when every occurrence of x is weakly negative:
/// decompose, solve the equation system for its greatest solution, and plug
/// the solution into the skeleton. Preconditions as decompose_weakly_negative.
Formula mu_weakly_negative(const Formula& phi, const std::string& x);

/// Least fixed point of any fixed-point-free body positive in x: rename the
/// weakly negative occurrences to a helper variable, normalize, take the
/// per-conjunct disjunctive fixed points, then resolve the helper with
/// mu_weakly_negative. The result is fixed-point free and x-free.
Formula mu_eliminate(const Formula& phi, const std::string& x);

/// Greatest fixed point of any fixed-point-free body positive in x: one
/// substitution of T, since x -> f(x) is provable for f built from the
/// intuitionistic connectives (f is "strong"), making f(T) a fixed point.
Formula nu_eliminate(const Formula& phi, const std::string& x);

/// One eliminated binder: `body` is its fixed-point-free body (inner binders
/// already resolved) and `replacement` the fixed-point-free equivalent of
/// binder var. body.
struct EliminationStep {
  Kind binder;  // Kind::Mu or Kind::Nu
  std::string var;
  Formula body;
  Formula replacement;
};

/// Eliminates every fixed point, innermost first. Requires well_formed input;
/// the output contains no binder and no generated helper variable. When
/// `steps` is given, appends one record per eliminated binder, in the order
/// they were resolved.
Formula eliminate_all(const Formula& chi, std::vector<EliminationStep>* steps = nullptr);

}  // namespace ipcmu
