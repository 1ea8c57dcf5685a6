#pragma once

#include "ipcmu/formula.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ipcmu {

struct GeneratorOptions {
  int max_depth = 5;
  int max_fixed_points = 2;  // maximum binder nesting depth
  std::vector<std::string> variables = {"a", "b", "c"};
};

/// Seeded source of random formulas. The same seed always yields the same
/// stream, so corpora referenced by tests are reproducible.
class FormulaGenerator {
 public:
  explicit FormulaGenerator(std::uint64_t seed, GeneratorOptions options = {});

  /// A well-formed formula: every binder variable occurs only positively
  /// (or not at all) in its body.
  Formula formula();

  /// A fixed-point-free formula in which `x` occurs and only positively.
  Formula positive_in(const std::string& x);

  /// A fixed-point-free formula in which both variables occur positively.
  Formula positive_in_pair(const std::string& x, const std::string& y);

  /// A fixed-point-free formula over the configured variable pool.
  Formula fixed_point_free_formula();

 private:
  Formula build(int depth, int fixed_points_left, const std::vector<std::string>& scope);
  Formula leaf(const std::vector<std::string>& scope);
  int roll(int n);  // uniform in [0, n)

  std::mt19937_64 rng_;
  GeneratorOptions options_;
};

}  // namespace ipcmu
