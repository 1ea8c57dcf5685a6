#pragma once

#include "ipcmu/formula.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ipcmu {

/// Partial order on at most 16 points, stored as one down-set bitmask per
/// element. Construction validates reflexivity, antisymmetry, transitivity.
class FinitePoset {
 public:
  FinitePoset(int size, std::vector<std::uint32_t> below,
              std::vector<std::string> labels = {});

  /// Builds from a list of (a <= b) facts; reflexive-transitive closure is
  /// taken automatically, antisymmetry is still checked.
  static FinitePoset from_pairs(int size, const std::vector<std::pair<int, int>>& le,
                                std::vector<std::string> labels = {});

  int size() const { return size_; }
  bool leq(int a, int b) const { return (below_[b] >> a) & 1u; }
  std::uint32_t below(int a) const { return below_[a]; }
  const std::string& label(int a) const { return labels_[a]; }

  /// Strict order pairs as "p0<p1 p0<p2", or "discrete" when none.
  std::string describe() const;

 private:
  int size_;
  std::vector<std::uint32_t> below_;
  std::vector<std::string> labels_;
};

FinitePoset chain_poset(int n);
FinitePoset antichain_poset(int n);

/// Subsets of {1..n} ordered by inclusion (n <= 4); labels like "{1,3}".
FinitePoset powerset_poset(int n);

/// All posets on n points, one representative per isomorphism class.
/// Sizes 1..5 give 1, 2, 5, 16, 63 posets.
std::vector<FinitePoset> enumerate_posets(int n);

/// The Heyting algebra of down-sets of a poset. Meet/join/implication tables
/// are precomputed and exhaustively verified against the residuation law
/// c /\ a <= b  iff  c <= a -> b at construction time.
class DownsetAlgebra {
 public:
  explicit DownsetAlgebra(FinitePoset poset);

  const FinitePoset& poset() const { return poset_; }
  int size() const { return static_cast<int>(carrier_.size()); }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  bool leq(int a, int b) const { return (carrier_[a] & ~carrier_[b]) == 0; }
  int meet(int a, int b) const { return meet_[idx(a, b)]; }
  int join(int a, int b) const { return join_[idx(a, b)]; }
  int imp(int a, int b) const { return imp_[idx(a, b)]; }

  /// The down-set itself, as a bitmask of poset elements.
  std::uint32_t mask_of(int a) const { return carrier_[a]; }
  /// Renders an element, e.g. "{p0,p2}".
  std::string label(int a) const;

 private:
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * carrier_.size() + static_cast<std::size_t>(b);
  }
  void verify() const;

  FinitePoset poset_;
  std::vector<std::uint32_t> carrier_;  // ascending; index 0 is bottom
  int bottom_ = 0;
  int top_ = 0;
  std::vector<std::uint8_t> meet_, join_, imp_;
};

/// Every poset of size 1..max_size, wrapped in its down-set algebra.
std::vector<DownsetAlgebra> algebras_up_to(int max_size);

/// Variable assignment into an algebra's carrier (later entries shadow
/// earlier ones, which evaluation of binders relies on).
using Valuation = std::vector<std::pair<std::string, int>>;

/// Evaluates a formula; mu/nu are computed by fixed-point iteration from
/// bottom/top. Throws std::invalid_argument for unassigned variables.
int eval(const Formula& f, const DownsetAlgebra& algebra, const Valuation& valuation);

struct FixpointTrace {
  int value = 0;
  int steps = 0;                // least k with iterate(k) == iterate(k+1)
  std::vector<int> iterates;    // iterate(0) .. iterate(steps)
};

/// Iterates body[x := -] from bottom under the given assignment of the
/// remaining variables.
FixpointTrace lfp_trace(const Formula& body, const std::string& x,
                        const DownsetAlgebra& algebra, const Valuation& others);
/// Dual iteration from top.
FixpointTrace gfp_trace(const Formula& body, const std::string& x,
                        const DownsetAlgebra& algebra, const Valuation& others);

struct Countermodel {
  Valuation valuation;
  int lhs = 0;
  int rhs = 0;
};

/// Exhaustive equivalence check over all valuations of the free variables;
/// nullopt means the two formulas agree everywhere on this algebra.
std::optional<Countermodel> check_equiv(const Formula& f, const Formula& g,
                                        const DownsetAlgebra& algebra);

/// Searches for a valuation where the antecedents' meet is not below the
/// succedent; nullopt means the entailment holds on this algebra.
std::optional<Countermodel> refute_sequent(const std::vector<Formula>& antecedents,
                                           const Formula& succedent,
                                           const DownsetAlgebra& algebra);

/// Largest number of iteration steps body[x := -] needs from bottom, over
/// all assignments of its other free variables.
int measure_closure_ordinal(const Formula& body, const std::string& x,
                            const DownsetAlgebra& algebra);

/// Property check of the fixed-point toolkit on one algebra: rolling and
/// diagonal rules, simultaneous fixed points, strength of polynomial maps
/// (with the three equivalent formulations, also on arbitrary monotone maps),
/// implication/meet factoring, meets of least fixed points, the pre-fixed
/// point identity for inflating maps, and one-step stabilization at top.
struct LemmaReport {
  long long roll = 0;
  long long diagonal = 0;
  long long simultaneous = 0;
  long long strong_polynomial = 0;
  long long strong_equivalence = 0;
  long long factor_implication = 0;
  long long factor_meet = 0;
  long long meet_of_lfps = 0;
  long long prefix_composition = 0;
  long long top_stationary = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  long long total() const {
    return roll + diagonal + simultaneous + strong_polynomial + strong_equivalence +
           factor_implication + factor_meet + meet_of_lfps + prefix_composition +
           top_stationary;
  }
};

LemmaReport check_lemma_properties(const DownsetAlgebra& algebra, int samples,
                                   std::uint64_t seed);

}  // namespace ipcmu
