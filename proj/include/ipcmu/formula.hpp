#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ipcmu {

enum class Kind : std::uint8_t { Var, Top, Bot, And, Or, Imp, Mu, Nu };

/// Immutable propositional mu-calculus formula. Copies share structure;
/// all "modifying" operations build new formulas.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula top();
  static Formula bot();
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula imp(Formula antecedent, Formula consequent);
  /// ~f, stored as f -> F.
  static Formula neg(Formula f);
  static Formula mu(std::string binder, Formula body);
  static Formula nu(std::string binder, Formula body);

  Kind kind() const noexcept;

  /// Variable name (Var) or binder name (Mu/Nu).
  const std::string& name() const;
  /// Left conjunct/disjunct, or the antecedent of an implication.
  const Formula& left() const;
  /// Right conjunct/disjunct, or the consequent of an implication.
  const Formula& right() const;
  /// Body of a Mu/Nu binder.
  const Formula& body() const;

  /// Structural equality (binder names matter; no alpha-conversion).
  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  /// Stable identity of the shared node, for cheap same-object tests.
  const void* id() const noexcept { return node_.get(); }

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  explicit Formula(NodePtr node) : node_(std::move(node)) {}

  NodePtr node_;
};

struct Formula::Node {
  Kind kind;
  std::string name;              // Var / Mu / Nu
  std::optional<Formula> lhs;    // And/Or/Imp left; Mu/Nu body
  std::optional<Formula> rhs;    // And/Or/Imp right
};

inline Kind Formula::kind() const noexcept { return node_->kind; }

/// Raised by parse() with 1-based source coordinates.
struct ParseError : std::runtime_error {
  ParseError(std::string message, int line, int column);
  int line;
  int column;
};

/// Concrete syntax:  ->  (right assoc, loosest)  \/  /\  ~  atoms.
/// A binder body extends as far right as possible; `~f` is sugar for `f -> F`.
Formula parse(std::string_view text);

/// Minimal-parentheses rendering; parse(to_string(f)) == f.
std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

/// Capture-avoiding substitution of `replacement` for free occurrences of `x`.
Formula substitute(const Formula& f, const std::string& x, const Formula& replacement);

/// Simultaneous capture-avoiding substitution.
Formula substitute_all(const Formula& f,
                       const std::vector<std::pair<std::string, Formula>>& subs);

/// f^n, i.e. n-fold substitution of f into itself at x, seeded with `base`.
/// n = 0 yields `base`; n = 1 yields f[x := base].
Formula iterate_subst(const Formula& f, const std::string& x, int n, const Formula& base);

bool is_free_in(const Formula& f, const std::string& x);
std::set<std::string> free_vars(const Formula& f);
/// Free variables, bound variables and binder names together.
std::set<std::string> all_vars(const Formula& f);
bool fixed_point_free(const Formula& f);

/// A name based on `base` that is absent from `avoid`. Generated names carry
/// a prime (x', x'1, ...) so they can never collide with parser-accepted input.
std::string fresh_var(const std::string& base, const std::set<std::string>& avoid);

enum class Polarity { Positive, Negative, Mixed, Absent };
enum class OccurrenceClass { StronglyPositive, WeaklyNegative };

/// Step from a node to one of its children.
enum class Step : std::uint8_t { Left, Right, Body };
using Path = std::vector<Step>;
std::string to_string(const Path& path);

struct Occurrence {
  Path path;
  int crossings;  // antecedents crossed on the way down
  OccurrenceClass cls() const {
    return crossings == 0 ? OccurrenceClass::StronglyPositive : OccurrenceClass::WeaklyNegative;
  }
};

struct VariableReport {
  Polarity polarity = Polarity::Absent;
  std::vector<Occurrence> occurrences;  // free occurrences of the variable
};

/// Classifies the free occurrences of `x` in `f`: an occurrence is positive
/// iff it sits under an even number of antecedents, and strongly positive iff
/// under none.
VariableReport analyze(const Formula& f, const std::string& x);

struct WellFormednessIssue {
  std::string binder;   // variable of the offending Mu/Nu
  Path binder_path;     // where the binder sits in the whole formula
  Occurrence occurrence;  // a non-positive occurrence within its body
  std::string message() const;
};

struct WellFormedness {
  bool ok = true;
  std::vector<WellFormednessIssue> issues;
};

/// A formula is well formed when every binder's variable occurs only
/// positively in its body.
WellFormedness well_formed(const Formula& f);

}  // namespace ipcmu
