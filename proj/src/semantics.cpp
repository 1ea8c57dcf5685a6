#include "ipcmu/semantics.hpp"

#include "ipcmu/random_formula.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ipcmu {

// ---------------------------------------------------------------------------
// Posets
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return labels;
}

}  // namespace

FinitePoset::FinitePoset(int size, std::vector<std::uint32_t> below,
                         std::vector<std::string> labels)
    : size_(size), below_(std::move(below)), labels_(std::move(labels)) {
  if (size_ < 1 || size_ > 16) {
    throw std::invalid_argument("poset size must be between 1 and 16");
  }
  if (below_.size() != static_cast<std::size_t>(size_)) {
    throw std::invalid_argument("poset needs one down-set mask per element");
  }
  std::uint32_t full = (1u << size_) - 1;
  for (int a = 0; a < size_; ++a) {
    if ((below_[a] & ~full) != 0) {
      throw std::invalid_argument("poset down-set mask mentions a missing element");
    }
    if (((below_[a] >> a) & 1u) == 0) {
      throw std::invalid_argument("poset order must be reflexive");
    }
  }
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) {
      if (a != b && leq(a, b) && leq(b, a)) {
        throw std::invalid_argument("poset order must be antisymmetric");
      }
      if (leq(a, b) && (below_[a] & ~below_[b]) != 0) {
        throw std::invalid_argument("poset order must be transitive");
      }
    }
  }
  if (labels_.empty()) {
    labels_ = default_labels(size_);
  } else if (labels_.size() != static_cast<std::size_t>(size_)) {
    throw std::invalid_argument("poset needs one label per element");
  }
}

FinitePoset FinitePoset::from_pairs(int size, const std::vector<std::pair<int, int>>& le,
                                    std::vector<std::string> labels) {
  if (size < 1 || size > 16) {
    throw std::invalid_argument("poset size must be between 1 and 16");
  }
  std::vector<std::uint32_t> below(static_cast<std::size_t>(size));
  for (int a = 0; a < size; ++a) below[static_cast<std::size_t>(a)] = 1u << a;
  for (auto [a, b] : le) {
    if (a < 0 || b < 0 || a >= size || b >= size) {
      throw std::invalid_argument("poset pair out of range");
    }
    below[static_cast<std::size_t>(b)] |= 1u << a;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int b = 0; b < size; ++b) {
      std::uint32_t acc = below[static_cast<std::size_t>(b)];
      for (int a = 0; a < size; ++a) {
        if ((acc >> a) & 1u) acc |= below[static_cast<std::size_t>(a)];
      }
      if (acc != below[static_cast<std::size_t>(b)]) {
        below[static_cast<std::size_t>(b)] = acc;
        changed = true;
      }
    }
  }
  return FinitePoset(size, std::move(below), std::move(labels));
}

std::string FinitePoset::describe() const {
  std::ostringstream os;
  os << size_ << "-point poset";
  bool any = false;
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) {
      if (a != b && leq(a, b)) {
        os << (any ? " " : ": ") << labels_[static_cast<std::size_t>(a)] << "<"
           << labels_[static_cast<std::size_t>(b)];
        any = true;
      }
    }
  }
  if (!any) os << ", discrete";
  return os.str();
}

FinitePoset chain_poset(int n) {
  std::vector<std::uint32_t> below(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) below[static_cast<std::size_t>(i)] = (1u << (i + 1)) - 1;
  return FinitePoset(n, std::move(below));
}

FinitePoset antichain_poset(int n) {
  std::vector<std::uint32_t> below(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) below[static_cast<std::size_t>(i)] = 1u << i;
  return FinitePoset(n, std::move(below));
}

FinitePoset powerset_poset(int n) {
  if (n < 0 || n > 4) {
    throw std::invalid_argument("powerset_poset: ground set must have at most 4 elements");
  }
  int size = 1 << n;
  std::vector<std::uint32_t> below(static_cast<std::size_t>(size));
  std::vector<std::string> labels(static_cast<std::size_t>(size));
  for (int s = 0; s < size; ++s) {
    // All subsets t of s, by the standard descending submask walk.
    std::uint32_t mask = 1u << s;  // t = s itself
    for (int t = (s - 1) & s;; t = (t - 1) & s) {
      mask |= 1u << t;
      if (t == 0) break;
    }
    below[static_cast<std::size_t>(s)] = mask;
    std::string label = "{";
    for (int i = 0; i < n; ++i) {
      if ((s >> i) & 1) {
        if (label.size() > 1) label += ",";
        label += std::to_string(i + 1);
      }
    }
    label += "}";
    labels[static_cast<std::size_t>(s)] = label;
  }
  return FinitePoset(size, std::move(below), std::move(labels));
}

std::vector<FinitePoset> enumerate_posets(int n) {
  if (n < 1 || n > 5) {
    throw std::invalid_argument("enumerate_posets: size must be between 1 and 5");
  }
  // Strict-order candidates live on pairs i < j: every poset admits a linear
  // extension, so each isomorphism class shows up among these.
  int pair_index[5][5];
  int npairs = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pair_index[i][j] = npairs++;
  }
  std::vector<FinitePoset> out;
  std::set<std::uint64_t> seen;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 0; mask < (1u << npairs); ++mask) {
    auto lt = [&](int i, int j) {
      return i < j && ((mask >> pair_index[i][j]) & 1u) != 0;
    };
    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i) {
      for (int j = i + 1; j < n && transitive; ++j) {
        if (!lt(i, j)) continue;
        for (int k = j + 1; k < n; ++k) {
          if (lt(j, k) && !lt(i, k)) {
            transitive = false;
            break;
          }
        }
      }
    }
    if (!transitive) continue;
    // Canonical form: smallest strict-order matrix over all relabelings.
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t canon = ~0ull;
    do {
      std::uint64_t bits = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (lt(i, j)) bits |= 1ull << (perm[static_cast<std::size_t>(i)] * n +
                                         perm[static_cast<std::size_t>(j)]);
        }
      }
      canon = std::min(canon, bits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!seen.insert(canon).second) continue;
    std::vector<std::uint32_t> below(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      std::uint32_t b = 1u << j;
      for (int i = 0; i < j; ++i) {
        if (lt(i, j)) b |= 1u << i;
      }
      below[static_cast<std::size_t>(j)] = b;
    }
    out.emplace_back(n, std::move(below));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Down-set algebras
// ---------------------------------------------------------------------------

DownsetAlgebra::DownsetAlgebra(FinitePoset poset) : poset_(std::move(poset)) {
  const int n = poset_.size();
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t s = 0;; ++s) {
    bool downset = true;
    for (int j = 0; j < n && downset; ++j) {
      if ((s >> j) & 1u) downset = (poset_.below(j) & ~s) == 0;
    }
    if (downset) carrier_.push_back(s);
    if (s == full) break;
  }
  if (carrier_.size() > 255) {
    throw std::invalid_argument("down-set lattice too large (over 255 elements)");
  }
  const int m = size();
  bottom_ = 0;
  top_ = m - 1;
  std::vector<int> index(static_cast<std::size_t>(full) + 1, -1);
  for (int i = 0; i < m; ++i) index[carrier_[static_cast<std::size_t>(i)]] = i;
  auto lookup = [&](std::uint32_t s) {
    int i = index[s];
    if (i < 0) throw std::logic_error("down-set operation left the lattice");
    return static_cast<std::uint8_t>(i);
  };
  meet_.resize(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
  join_.resize(meet_.size());
  imp_.resize(meet_.size());
  for (int a = 0; a < m; ++a) {
    const std::uint32_t sa = carrier_[static_cast<std::size_t>(a)];
    for (int b = 0; b < m; ++b) {
      const std::uint32_t sb = carrier_[static_cast<std::size_t>(b)];
      meet_[idx(a, b)] = lookup(sa & sb);
      join_[idx(a, b)] = lookup(sa | sb);
      // Largest down-set whose points w satisfy (down(w) & sa) <= sb; that
      // set is itself downward closed, so it is the relative implication.
      std::uint32_t si = 0;
      for (int w = 0; w < n; ++w) {
        if ((poset_.below(w) & sa & ~sb) == 0) si |= 1u << w;
      }
      imp_[idx(a, b)] = lookup(si);
    }
  }
  verify();
}

void DownsetAlgebra::verify() const {
  const int m = size();
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      // Heyting identities that pin the implication tables down.
      if (meet(a, imp(a, b)) != meet(a, b) ||
          meet(a, imp(b, a)) != a ||
          imp(a, a) != top()) {
        throw std::logic_error("down-set algebra failed a Heyting identity");
      }
      for (int c = 0; c < m; ++c) {
        // Residuation, and implication distributing over meets.
        if (leq(meet(c, a), b) != leq(c, imp(a, b)) ||
            imp(a, meet(b, c)) != meet(imp(a, b), imp(a, c))) {
          throw std::logic_error("down-set algebra failed residuation");
        }
      }
    }
  }
}

std::string DownsetAlgebra::label(int a) const {
  std::string out = "{";
  const std::uint32_t s = carrier_[static_cast<std::size_t>(a)];
  for (int i = 0; i < poset_.size(); ++i) {
    if ((s >> i) & 1u) {
      if (out.size() > 1) out += ",";
      out += poset_.label(i);
    }
  }
  return out + "}";
}

std::vector<DownsetAlgebra> algebras_up_to(int max_size) {
  if (max_size < 1 || max_size > 5) {
    throw std::invalid_argument("poset size cap must be between 1 and 5");
  }
  std::vector<DownsetAlgebra> out;
  for (int n = 1; n <= max_size; ++n) {
    for (FinitePoset& p : enumerate_posets(n)) out.emplace_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

int eval_rec(const Formula& f, const DownsetAlgebra& A, Valuation& env) {
  switch (f.kind()) {
    case Kind::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == f.name()) return it->second;
      }
      throw std::invalid_argument("eval: no value for variable '" + f.name() + "'");
    }
    case Kind::Top:
      return A.top();
    case Kind::Bot:
      return A.bottom();
    case Kind::And:
      return A.meet(eval_rec(f.left(), A, env), eval_rec(f.right(), A, env));
    case Kind::Or:
      return A.join(eval_rec(f.left(), A, env), eval_rec(f.right(), A, env));
    case Kind::Imp:
      return A.imp(eval_rec(f.left(), A, env), eval_rec(f.right(), A, env));
    case Kind::Mu:
    case Kind::Nu: {
      int h = f.kind() == Kind::Mu ? A.bottom() : A.top();
      env.emplace_back(f.name(), h);
      for (int guard = 0;; ++guard) {
        if (guard > A.size() + 1) {
          env.pop_back();
          throw std::logic_error("fixed-point iteration did not stabilize");
        }
        int next = eval_rec(f.body(), A, env);
        if (next == h) break;
        h = next;
        env.back().second = h;
      }
      env.pop_back();
      return h;
    }
  }
  throw std::logic_error("eval: unknown node kind");
}

}  // namespace

int eval(const Formula& f, const DownsetAlgebra& algebra, const Valuation& valuation) {
  Valuation env = valuation;
  return eval_rec(f, algebra, env);
}

namespace {

FixpointTrace iterate_trace(const Formula& body, const std::string& x,
                            const DownsetAlgebra& A, const Valuation& others,
                            bool from_bottom) {
  Valuation env = others;
  env.emplace_back(x, 0);
  FixpointTrace trace;
  int h = from_bottom ? A.bottom() : A.top();
  trace.iterates.push_back(h);
  for (int guard = 0;; ++guard) {
    if (guard > A.size() + 1) {
      throw std::logic_error("fixed-point iteration did not stabilize");
    }
    env.back().second = h;
    int next = eval_rec(body, A, env);
    if (next == h) {
      trace.value = h;
      trace.steps = guard;
      return trace;
    }
    h = next;
    trace.iterates.push_back(h);
  }
}

}  // namespace

FixpointTrace lfp_trace(const Formula& body, const std::string& x,
                        const DownsetAlgebra& algebra, const Valuation& others) {
  return iterate_trace(body, x, algebra, others, true);
}

FixpointTrace gfp_trace(const Formula& body, const std::string& x,
                        const DownsetAlgebra& algebra, const Valuation& others) {
  return iterate_trace(body, x, algebra, others, false);
}

// ---------------------------------------------------------------------------
// Exhaustive checks over valuations
// ---------------------------------------------------------------------------

namespace {

/// Runs `visit` with every assignment of `vars` into the carrier. `visit`
/// returns false to stop early; all_valuations then returns false as well.
template <typename Visit>
bool all_valuations(const std::vector<std::string>& vars, const DownsetAlgebra& A,
                    Visit&& visit) {
  Valuation env;
  env.reserve(vars.size());
  for (const auto& v : vars) env.emplace_back(v, 0);
  const int m = A.size();
  while (true) {
    if (!visit(env)) return false;
    std::size_t i = 0;
    for (; i < env.size(); ++i) {
      if (++env[i].second < m) break;
      env[i].second = 0;
    }
    if (i == env.size()) return true;
  }
}

std::vector<std::string> merged_free_vars(const Formula& f, const Formula& g) {
  std::set<std::string> vars = free_vars(f);
  auto more = free_vars(g);
  vars.insert(more.begin(), more.end());
  return {vars.begin(), vars.end()};
}

}  // namespace

std::optional<Countermodel> check_equiv(const Formula& f, const Formula& g,
                                        const DownsetAlgebra& algebra) {
  std::optional<Countermodel> found;
  all_valuations(merged_free_vars(f, g), algebra, [&](const Valuation& v) {
    Valuation scratch = v;
    int a = eval_rec(f, algebra, scratch);
    scratch = v;
    int b = eval_rec(g, algebra, scratch);
    if (a != b) {
      found = Countermodel{v, a, b};
      return false;
    }
    return true;
  });
  return found;
}

std::optional<Countermodel> refute_sequent(const std::vector<Formula>& antecedents,
                                           const Formula& succedent,
                                           const DownsetAlgebra& algebra) {
  std::set<std::string> vars = free_vars(succedent);
  for (const auto& a : antecedents) {
    auto more = free_vars(a);
    vars.insert(more.begin(), more.end());
  }
  std::vector<std::string> var_list(vars.begin(), vars.end());
  std::optional<Countermodel> found;
  all_valuations(var_list, algebra, [&](const Valuation& v) {
    Valuation scratch = v;
    int lhs = algebra.top();
    for (const auto& a : antecedents) {
      scratch = v;
      lhs = algebra.meet(lhs, eval_rec(a, algebra, scratch));
    }
    scratch = v;
    int rhs = eval_rec(succedent, algebra, scratch);
    if (!algebra.leq(lhs, rhs)) {
      found = Countermodel{v, lhs, rhs};
      return false;
    }
    return true;
  });
  return found;
}

int measure_closure_ordinal(const Formula& body, const std::string& x,
                            const DownsetAlgebra& algebra) {
  std::set<std::string> vars = free_vars(body);
  vars.erase(x);
  std::vector<std::string> var_list(vars.begin(), vars.end());
  int worst = 0;
  all_valuations(var_list, algebra, [&](const Valuation& v) {
    worst = std::max(worst, lfp_trace(body, x, algebra, v).steps);
    return true;
  });
  return worst;
}

// ---------------------------------------------------------------------------
// Fixed-point toolkit properties
// ---------------------------------------------------------------------------

namespace {

template <typename F>
int lfp_of(const DownsetAlgebra& A, F&& f) {
  int h = A.bottom();
  for (int guard = 0; guard <= A.size() + 1; ++guard) {
    int next = f(h);
    if (next == h) return h;
    h = next;
  }
  throw std::logic_error("fixed-point iteration did not stabilize");
}

/// A monotone self-map drawn uniformly-ish: walk the carrier in a linear
/// extension and give each element a random value above its constraints.
std::vector<int> random_monotone(const DownsetAlgebra& A, std::mt19937_64& rng) {
  const int m = A.size();
  std::vector<int> table(static_cast<std::size_t>(m));
  std::vector<int> candidates;
  for (int i = 0; i < m; ++i) {
    int lower = A.bottom();
    for (int j = 0; j < i; ++j) {
      if (A.leq(j, i)) lower = A.join(lower, table[static_cast<std::size_t>(j)]);
    }
    candidates.clear();
    for (int e = 0; e < m; ++e) {
      if (A.leq(lower, e)) candidates.push_back(e);
    }
    table[static_cast<std::size_t>(i)] =
        candidates[static_cast<std::size_t>(rng() % candidates.size())];
  }
  return table;
}

struct StrengthConditions {
  bool meet_slides;     // x /\ f(y) <= f(x /\ y)
  bool imp_slides;      // f(x -> y) <= x -> f(y)
  bool preserves_order; // (x -> y) <= f(x) -> f(y)
  bool all() const { return meet_slides && imp_slides && preserves_order; }
  bool agree() const {
    return meet_slides == imp_slides && imp_slides == preserves_order;
  }
};

StrengthConditions strength_of(const DownsetAlgebra& A, const std::vector<int>& f) {
  StrengthConditions c{true, true, true};
  const int m = A.size();
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      const std::size_t fy = static_cast<std::size_t>(f[static_cast<std::size_t>(y)]);
      c.meet_slides &= A.leq(A.meet(x, static_cast<int>(fy)),
                             f[static_cast<std::size_t>(A.meet(x, y))]);
      c.imp_slides &= A.leq(f[static_cast<std::size_t>(A.imp(x, y))],
                            A.imp(x, static_cast<int>(fy)));
      c.preserves_order &= A.leq(A.imp(x, y),
                                 A.imp(f[static_cast<std::size_t>(x)],
                                       f[static_cast<std::size_t>(y)]));
    }
  }
  return c;
}

}  // namespace

LemmaReport check_lemma_properties(const DownsetAlgebra& A, int samples,
                                   std::uint64_t seed) {
  LemmaReport rep;
  std::mt19937_64 rng(seed);
  GeneratorOptions opt;
  opt.max_depth = 4;
  opt.max_fixed_points = 0;
  opt.variables = {"a", "b"};
  FormulaGenerator gen(rng(), opt);
  const int m = A.size();
  auto fail = [&](std::string what) {
    if (rep.failures.size() < 16) {
      rep.failures.push_back(std::move(what) + " [" + A.poset().describe() + "]");
    }
  };

  for (int s = 0; s < samples; ++s) {
    Valuation params{{"a", static_cast<int>(rng() % m)}, {"b", static_cast<int>(rng() % m)}};
    const Formula fb = gen.positive_in("x");
    const Formula gb = gen.positive_in("x");
    auto F = [&](int h) {
      Valuation v = params;
      v.emplace_back("x", h);
      return eval(fb, A, v);
    };
    auto G = [&](int h) {
      Valuation v = params;
      v.emplace_back("x", h);
      return eval(gb, A, v);
    };
    std::vector<int> Ft(static_cast<std::size_t>(m)), Gt(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) {
      Ft[static_cast<std::size_t>(e)] = F(e);
      Gt[static_cast<std::size_t>(e)] = G(e);
    }
    std::string tag = " for f = " + to_string(fb) + ", g = " + to_string(gb);

    // Rolling: lfp(f.g) = f(lfp(g.f)).
    if (lfp_of(A, [&](int h) { return F(G(h)); }) !=
        F(lfp_of(A, [&](int h) { return G(F(h)); }))) {
      fail("rolling rule failed" + tag);
    }
    ++rep.roll;

    // Strong maps stop one step past top.
    {
      int ft = Ft[static_cast<std::size_t>(A.top())];
      if (Ft[static_cast<std::size_t>(ft)] != ft) fail("top iteration not stationary" + tag);
      ++rep.top_stationary;
    }

    // Antecedents and meets factor out of least fixed points.
    {
      int mu_f = lfp_of(A, F);
      bool ok_imp = true;
      bool ok_meet = true;
      for (int c = 0; c < m; ++c) {
        ok_imp &= lfp_of(A, [&](int h) { return A.imp(c, F(h)); }) == A.imp(c, mu_f);
        ok_meet &= lfp_of(A, [&](int h) { return A.meet(c, F(h)); }) == A.meet(c, mu_f);
      }
      if (!ok_imp) fail("implication did not factor out of the least fixed point" + tag);
      if (!ok_meet) fail("meet did not factor out of the least fixed point" + tag);
      ++rep.factor_implication;
      ++rep.factor_meet;

      // lfp of a meet is the meet of the lfps.
      int mu_g = lfp_of(A, G);
      if (lfp_of(A, [&](int h) { return A.meet(F(h), G(h)); }) != A.meet(mu_f, mu_g)) {
        fail("least fixed point of a meet diverged from the meet of both" + tag);
      }
      ++rep.meet_of_lfps;
    }

    // Polynomial maps satisfy all three strength conditions.
    if (!strength_of(A, Ft).all()) fail("polynomial map is not strong" + tag);
    ++rep.strong_polynomial;

    // The three conditions stand or fall together on any monotone map.
    if (!strength_of(A, random_monotone(A, rng)).agree()) {
      fail("strength conditions disagree on a monotone map");
    }
    ++rep.strong_equivalence;

    // Inflating maps: pre-fixed points of the join are those of the composite.
    {
      bool ok = true;
      for (int h = 0; h < m && ok; ++h) {
        int fi = A.join(h, Ft[static_cast<std::size_t>(h)]);
        int gi = A.join(h, Gt[static_cast<std::size_t>(h)]);
        int fgi = A.join(gi, Ft[static_cast<std::size_t>(gi)]);
        ok = A.leq(A.join(fi, gi), h) == A.leq(fgi, h);
      }
      if (!ok) fail("pre-fixed points of join and composition parted ways" + tag);
      ++rep.prefix_composition;
    }

    // Diagonal: nesting two binders equals the one-variable fixed point.
    const Formula db = gen.positive_in_pair("x", "y");
    auto B = [&](int hx, int hy) {
      Valuation v = params;
      v.emplace_back("x", hx);
      v.emplace_back("y", hy);
      return eval(db, A, v);
    };
    {
      int diag = lfp_of(A, [&](int h) { return B(h, h); });
      int nested = lfp_of(A, [&](int h) { return lfp_of(A, [&](int k) { return B(h, k); }); });
      if (diag != nested) fail("diagonal rule failed for f = " + to_string(db));
      ++rep.diagonal;
    }

    // Simultaneous least fixed points, component by component.
    {
      const Formula b1 = gen.positive_in_pair("x", "y");
      const Formula b2 = gen.positive_in_pair("x", "y");
      auto F1 = [&](int hx, int hy) {
        Valuation v = params;
        v.emplace_back("x", hx);
        v.emplace_back("y", hy);
        return eval(b1, A, v);
      };
      auto F2 = [&](int hx, int hy) {
        Valuation v = params;
        v.emplace_back("x", hx);
        v.emplace_back("y", hy);
        return eval(b2, A, v);
      };
      int p = A.bottom();
      int q = A.bottom();
      for (int guard = 0;; ++guard) {
        if (guard > 2 * A.size() + 2) throw std::logic_error("joint iteration did not stabilize");
        int np = F1(p, q);
        int nq = F2(p, q);
        if (np == p && nq == q) break;
        p = np;
        q = nq;
      }
      int mu1 = lfp_of(A, [&](int hx) {
        return F1(hx, lfp_of(A, [&](int hy) { return F2(hx, hy); }));
      });
      int mu2 = lfp_of(A, [&](int hy) { return F2(mu1, hy); });
      if (p != mu1 || q != mu2) {
        fail("simultaneous fixed point disagreed with the sequential solution for f = " +
             to_string(b1) + ", g = " + to_string(b2));
      }
      ++rep.simultaneous;
    }
  }
  return rep;
}

}  // namespace ipcmu
