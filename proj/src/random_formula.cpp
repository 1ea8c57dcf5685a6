#include "ipcmu/random_formula.hpp"

#include <utility>

namespace ipcmu {

FormulaGenerator::FormulaGenerator(std::uint64_t seed, GeneratorOptions options)
    : rng_(seed), options_(std::move(options)) {}

int FormulaGenerator::roll(int n) {
  return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng_));
}

Formula FormulaGenerator::leaf(const std::vector<std::string>& scope) {
  // Mostly variables; the occasional constant keeps simplification honest.
  int pick = roll(static_cast<int>(scope.size()) * 4 + 2);
  if (pick == 0) return Formula::top();
  if (pick == 1) return Formula::bot();
  return Formula::var(scope[static_cast<std::size_t>((pick - 2) / 4)]);
}

Formula FormulaGenerator::build(int depth, int fixed_points_left,
                                const std::vector<std::string>& scope) {
  if (depth <= 0) return leaf(scope);
  int pick = roll(fixed_points_left > 0 ? 12 : 10);
  switch (pick) {
    case 0:
    case 1:
    case 2:
      return Formula::conj(build(depth - 1, fixed_points_left, scope),
                           build(depth - 1, fixed_points_left, scope));
    case 3:
    case 4:
    case 5:
      return Formula::disj(build(depth - 1, fixed_points_left, scope),
                           build(depth - 1, fixed_points_left, scope));
    case 6:
    case 7:
    case 8:
      return Formula::imp(build(depth - 1, fixed_points_left, scope),
                          build(depth - 1, fixed_points_left, scope));
    case 9:
      return leaf(scope);
    default: {
      // A binder; its variable must come out positive (or absent) in the
      // body, so draw bodies until one qualifies.
      std::string binder = roll(2) == 0 ? "u" : "v";
      std::vector<std::string> inner = scope;
      inner.push_back(binder);
      for (int attempt = 0; attempt < 64; ++attempt) {
        Formula body = build(depth - 1, fixed_points_left - 1, inner);
        Polarity p = analyze(body, binder).polarity;
        if (p == Polarity::Positive || p == Polarity::Absent) {
          return pick == 10 ? Formula::mu(binder, std::move(body))
                            : Formula::nu(binder, std::move(body));
        }
      }
      // Nothing acceptable turned up; fall back to a guaranteed-positive body.
      Formula body = Formula::disj(Formula::var(binder),
                                   build(depth - 2, 0, scope));
      return pick == 10 ? Formula::mu(binder, std::move(body))
                        : Formula::nu(binder, std::move(body));
    }
  }
}

Formula FormulaGenerator::formula() {
  return build(options_.max_depth, options_.max_fixed_points, options_.variables);
}

Formula FormulaGenerator::fixed_point_free_formula() {
  return build(options_.max_depth, 0, options_.variables);
}

Formula FormulaGenerator::positive_in(const std::string& x) {
  std::vector<std::string> scope = options_.variables;
  scope.push_back(x);
  for (int attempt = 0; attempt < 256; ++attempt) {
    Formula f = build(options_.max_depth, 0, scope);
    if (analyze(f, x).polarity == Polarity::Positive) return f;
  }
  return Formula::disj(Formula::var(x), build(options_.max_depth - 1, 0, options_.variables));
}

Formula FormulaGenerator::positive_in_pair(const std::string& x, const std::string& y) {
  std::vector<std::string> scope = options_.variables;
  scope.push_back(x);
  scope.push_back(y);
  for (int attempt = 0; attempt < 256; ++attempt) {
    Formula f = build(options_.max_depth, 0, scope);
    if (analyze(f, x).polarity == Polarity::Positive &&
        analyze(f, y).polarity == Polarity::Positive) {
      return f;
    }
  }
  Formula base = build(options_.max_depth - 1, 0, options_.variables);
  return Formula::disj(Formula::conj(Formula::var(x), Formula::var(y)), std::move(base));
}

}  // namespace ipcmu
