#include "ipcmu/prover.hpp"

#include <utility>

namespace ipcmu {

Sequent::Sequent(std::vector<Formula> gamma, Formula goal)
    : antecedents(std::move(gamma)), succedent(std::move(goal)) {
  for (const Formula& f : antecedents) {
    if (!fixed_point_free(f)) {
      throw std::invalid_argument("prover: antecedent contains a fixed point");
    }
  }
  if (!fixed_point_free(succedent)) {
    throw std::invalid_argument("prover: succedent contains a fixed point");
  }
}

namespace {

bool atom_in(const std::vector<Formula>& ctx, const std::string& name) {
  for (const Formula& f : ctx) {
    if (f.kind() == Kind::Var && f.name() == name) return true;
  }
  return false;
}

class Search {
 public:
  explicit Search(std::uint64_t budget) : budget_(budget) {}

  bool prove(std::vector<Formula> ctx, Formula goal) {
    if (budget_ == 0) throw BudgetExceeded();
    --budget_;

    // Saturate with the invertible non-branching left rules; each one
    // replaces a context formula by strictly smaller material.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < ctx.size() && !changed; ++i) {
        const Formula f = ctx[i];
        switch (f.kind()) {
          case Kind::Bot:
            return true;
          case Kind::Top:
            ctx.erase(ctx.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
            break;
          case Kind::And:
            ctx[i] = f.left();
            ctx.push_back(f.right());
            changed = true;
            break;
          case Kind::Imp: {
            const Formula& a = f.left();
            switch (a.kind()) {
              case Kind::Top:
                ctx[i] = f.right();
                changed = true;
                break;
              case Kind::Bot:
                ctx.erase(ctx.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
              case Kind::And:
                // (c /\ d) -> b  ~~>  c -> (d -> b)
                ctx[i] = Formula::imp(a.left(), Formula::imp(a.right(), f.right()));
                changed = true;
                break;
              case Kind::Or:
                // (c \/ d) -> b  ~~>  c -> b, d -> b
                ctx[i] = Formula::imp(a.left(), f.right());
                ctx.push_back(Formula::imp(a.right(), f.right()));
                changed = true;
                break;
              case Kind::Var:
                // p -> b fires once p itself is in the context.
                if (atom_in(ctx, a.name())) {
                  ctx[i] = f.right();
                  changed = true;
                }
                break;
              default:
                break;  // nested implication: a backtracking rule below
            }
            break;
          }
          default:
            break;  // atoms wait for the axiom; disjunctions split below
        }
      }
    }

    if (goal.kind() == Kind::Top) return true;
    if (goal.kind() == Kind::Var && atom_in(ctx, goal.name())) return true;

    // Invertible branching rules.
    if (goal.kind() == Kind::And) {
      return prove(ctx, goal.left()) && prove(std::move(ctx), goal.right());
    }
    if (goal.kind() == Kind::Imp) {
      ctx.push_back(goal.left());
      return prove(std::move(ctx), goal.right());
    }
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx[i].kind() == Kind::Or) {
        const Formula f = ctx[i];
        std::vector<Formula> with_left = ctx;
        with_left[i] = f.left();
        if (!prove(std::move(with_left), goal)) return false;
        ctx[i] = f.right();
        return prove(std::move(ctx), goal);
      }
    }

    // Backtracking points. The goal here is an atom, F, or a disjunction;
    // the context holds only atoms, stuck atomic implications, and nested
    // implications.
    if (goal.kind() == Kind::Or) {
      if (prove(ctx, goal.left())) return true;
      if (prove(ctx, goal.right())) return true;
    }
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ctx[i].kind() != Kind::Imp || ctx[i].left().kind() != Kind::Imp) continue;
      const Formula inner = ctx[i].left();   // c -> d
      const Formula outer = ctx[i].right();  // b
      std::vector<Formula> first = ctx;
      first[i] = Formula::imp(inner.right(), outer);  // d -> b
      if (prove(std::move(first), inner)) {
        std::vector<Formula> second = ctx;
        second[i] = outer;
        if (prove(std::move(second), goal)) return true;
      }
    }
    return false;
  }

 private:
  std::uint64_t budget_;
};

}  // namespace

bool provable(const Sequent& sequent, const ProverOptions& options) {
  Search search(options.node_budget);
  return search.prove(sequent.antecedents, sequent.succedent);
}

bool provable(const Formula& goal, const ProverOptions& options) {
  return provable(Sequent({}, goal), options);
}

bool equivalent(const Formula& f, const Formula& g, const ProverOptions& options) {
  return provable(Sequent({f}, g), options) && provable(Sequent({g}, f), options);
}

}  // namespace ipcmu
