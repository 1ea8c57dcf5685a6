#pragma once

#include "ipcmu/formula.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ipcmu {

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded() : std::runtime_error("proof search ran out of node budget") {}
};

/// antecedents |- succedent, over fixed-point-free formulas only.
/// Construction rejects binders: eliminate them before proving.
struct Sequent {
  std::vector<Formula> antecedents;
  Formula succedent;

  Sequent(std::vector<Formula> gamma, Formula goal);
};

struct ProverOptions {
  std::uint64_t node_budget = 1'000'000;
};

/// Decides intuitionistic provability with a contraction-free sequent
/// calculus: the left implication rule is split by the shape of the
/// antecedent's antecedent, which makes naive depth-first search terminate.
/// Every visited sequent costs one unit of budget; BudgetExceeded is thrown
/// when it runs out, so "false" always means "not provable".
bool provable(const Sequent& sequent, const ProverOptions& options = {});
bool provable(const Formula& goal, const ProverOptions& options = {});

/// Both f |- g and g |- f.
bool equivalent(const Formula& f, const Formula& g, const ProverOptions& options = {});

}  // namespace ipcmu
