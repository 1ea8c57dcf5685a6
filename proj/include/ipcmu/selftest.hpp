#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ipcmu {

/// Knobs for the verification suites. The defaults match the checked-in
/// acceptance run; the CLI exposes every field.
struct SelftestConfig {
  std::uint64_t seed = 1;
  int corpus = 500;          // random formulas per corpus-driven suite
  int lemma_samples = 200;   // sampled polynomial maps per algebra
  int max_poset_size = 4;    // algebras come from all posets up to this size
  std::uint64_t prover_budget = 1'000'000;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  long long checks = 0;  // individual verifications performed
  std::string detail;    // summary, or the first failure
  double seconds = 0.0;
};

/// The guarded-disjunction family b \/ (a1 -> x) \/ ... \/ (an -> x):
/// elimination must give (a1 /\ ... /\ an) -> b by both prover and algebras,
/// and the measured closure ordinal on the matching power-set algebra must
/// be exactly n + 1.
SuiteResult run_family_suite(const SelftestConfig& config);

/// Random well-formed formulas: elimination output is fixed-point free,
/// helper-free, and equal to the input on every algebra under every
/// valuation.
SuiteResult run_roundtrip_suite(const SelftestConfig& config);

/// Random monotone bodies: f(T) is already the greatest fixed point, so
/// f(f(T)) = f(T) = the iterated limit everywhere.
SuiteResult run_one_step_nu_suite(const SelftestConfig& config);

/// The fixed-point toolkit (rolling, diagonal, simultaneous systems,
/// strength, factoring, pre-fixed-point identities, top stabilization) on
/// sampled polynomial maps over every algebra.
SuiteResult run_lemma_suite(const SelftestConfig& config);

/// Measured closure ordinals never exceed the computed bounds, and the
/// bound combinators hold for sampled maps with measured convergences.
SuiteResult run_bound_suite(const SelftestConfig& config);

/// One-sided prover/semantics agreement: nothing provable is refutable on
/// any algebra, and every refuted claim is reported unprovable.
SuiteResult run_agreement_suite(const SelftestConfig& config);

/// All six suites, in the order above.
std::vector<SuiteResult> run_all_suites(const SelftestConfig& config);

}  // namespace ipcmu
