#pragma once

#include "ipcmu/formula.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipcmu {

/// Result of splitting a variable into its strongly positive part (kept as x)
/// and its weakly negative part (renamed to the fresh y). Substituting x back
/// for y recovers the original formula.
struct RenamedPair {
  Formula formula;
  std::string x;
  std::string y;
};

/// Renames every occurrence of x that sits under at least one antecedent to a
/// fresh variable. Requires a fixed-point-free formula with x positive.
RenamedPair rename_weakly_negative(const Formula& phi, const std::string& x);

struct NotDisjunctiveError : std::runtime_error {
  NotDisjunctiveError(std::string reason_, std::string position_);
  std::string reason;
  std::string position;  // path from the root, L/R/B steps
};

/// A formula built from x by the productions
///   phi ::= x | beta \/ phi | phi \/ beta | alpha -> phi | phi \/ phi
/// with alpha, beta free of x. `head` collects the alphas, `side` the betas;
/// both are deduplicated, in left-to-right harvest order.
struct DisjunctiveTerm {
  Formula formula;
  std::string var;
  std::vector<Formula> head;
  std::vector<Formula> side;
};

std::optional<DisjunctiveTerm> try_parse_disjunctive(const Formula& f, const std::string& x,
                                                     std::string* reason = nullptr);
/// Same, but throws NotDisjunctiveError with the offending position.
DisjunctiveTerm parse_disjunctive(const Formula& f, const std::string& x);

/// A conjunction of parts, each either free of x or disjunctive in x.
struct NormalForm {
  struct Conjunct {
    Formula formula;
    std::optional<DisjunctiveTerm> disjunctive;  // empty when x does not occur
    bool constant() const { return !disjunctive.has_value(); }
  };
  std::string var;
  std::vector<Conjunct> conjuncts;

  /// Folds the conjuncts back into one formula.
  Formula conjunction() const;
};

/// Distributes implications and disjunctions over conjunctions until every
/// conjunct is x-free or disjunctive in x. Requires every occurrence of x to
/// be strongly positive and no binder over a subformula containing x.
NormalForm to_normal_form(const Formula& psi, const std::string& x);

}  // namespace ipcmu
