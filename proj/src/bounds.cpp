#include "ipcmu/bounds.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace ipcmu {

namespace {

void append_render(const ConvergenceBound& bound, int depth, std::ostringstream& out) {
  for (int i = 0; i < depth; ++i) out << "  ";
  out << bound.rule << "\n";
  for (const ConvergenceBound& input : bound.inputs) {
    append_render(input, depth + 1, out);
  }
}

void require_nonnegative(int n, const char* who) {
  if (n < 0) throw std::invalid_argument(std::string(who) + ": bound must be non-negative");
}

}  // namespace

std::string ConvergenceBound::render() const {
  std::ostringstream out;
  append_render(*this, 0, out);
  return out.str();
}

int roll_bound(int n) {
  require_nonnegative(n, "roll_bound");
  return n + 1;
}

int conj_bound(int n, int m) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("conj_bound: both bounds must be at least 1");
  }
  return n + m - 1;
}

int diag_bound(int n, int m) {
  require_nonnegative(n, "diag_bound");
  require_nonnegative(m, "diag_bound");
  return n * m;
}

int bekic_bound(int n, int m) {
  require_nonnegative(n, "bekic_bound");
  require_nonnegative(m, "bekic_bound");
  return (n + 1) * (m + 1) - 1;
}

ConvergenceBound bound_disjunctive(const DisjunctiveTerm& term) {
  int value = static_cast<int>(term.head.size()) + 1;
  std::ostringstream rule;
  rule << "disjunctive part: " << term.head.size() << " guard"
       << (term.head.size() == 1 ? "" : "s") << " + 1 = " << value;
  return ConvergenceBound{value, rule.str(), {}};
}

ConvergenceBound bound_weakly_negative(const WnDecomposition& dec) {
  int value = static_cast<int>(dec.n()) + 1;
  std::ostringstream rule;
  rule << "antecedent system: " << dec.n() << " equation" << (dec.n() == 1 ? "" : "s")
       << " + 1 = " << value;
  return ConvergenceBound{value, rule.str(), {}};
}

ConvergenceBound bound_mu(const Formula& phi, const std::string& x) {
  if (!fixed_point_free(phi)) {
    throw std::invalid_argument("bound: the body must be fixed-point free");
  }
  Polarity p = analyze(phi, x).polarity;
  if (p == Polarity::Negative || p == Polarity::Mixed) {
    throw std::invalid_argument("bound: '" + x + "' must be positive in the body");
  }

  // Mirror the eliminator: helper split, normal form, per-conjunct closed
  // forms, then the helper's equation system.
  RenamedPair rp = rename_weakly_negative(phi, x);
  NormalForm nf = to_normal_form(rp.formula, x);

  ConvergenceBound direct;
  Formula folded = Formula::top();
  for (std::size_t i = 0; i < nf.conjuncts.size(); ++i) {
    const NormalForm::Conjunct& c = nf.conjuncts[i];
    ConvergenceBound piece_bound =
        c.constant() ? ConvergenceBound{1, "fixed part: 1", {}}
                     : bound_disjunctive(*c.disjunctive);
    Formula piece = c.constant() ? c.formula : mu_disjunctive(*c.disjunctive);
    if (i == 0) {
      direct = std::move(piece_bound);
      folded = std::move(piece);
    } else {
      int combined = conj_bound(direct.value, piece_bound.value);
      std::ostringstream rule;
      rule << "conjunction: " << direct.value << " + " << piece_bound.value
           << " - 1 = " << combined;
      direct = ConvergenceBound{combined, rule.str(),
                                {std::move(direct), std::move(piece_bound)}};
      folded = Formula::conj(std::move(folded), std::move(piece));
    }
  }

  WnDecomposition dec = decompose_weakly_negative(simplify(folded), rp.y);
  ConvergenceBound helper = bound_weakly_negative(dec);

  int total = diag_bound(direct.value, helper.value);
  std::ostringstream rule;
  rule << "diagonal: " << direct.value << " * " << helper.value << " = " << total;
  return ConvergenceBound{total, rule.str(), {std::move(direct), std::move(helper)}};
}

}  // namespace ipcmu
