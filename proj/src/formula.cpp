#include "ipcmu/formula.hpp"

#include <cassert>
#include <cctype>
#include <ostream>
#include <sstream>

namespace ipcmu {

Formula Formula::var(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, {}}));
}

Formula Formula::top() {
  static const Formula instance(std::make_shared<const Node>(Node{Kind::Top, {}, {}, {}}));
  return instance;
}

Formula Formula::bot() {
  static const Formula instance(std::make_shared<const Node>(Node{Kind::Bot, {}, {}, {}}));
  return instance;
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::And, {}, std::move(lhs), std::move(rhs)}));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Or, {}, std::move(lhs), std::move(rhs)}));
}

Formula Formula::imp(Formula antecedent, Formula consequent) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Imp, {}, std::move(antecedent), std::move(consequent)}));
}

Formula Formula::neg(Formula f) { return imp(std::move(f), bot()); }

Formula Formula::mu(std::string binder, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Mu, std::move(binder), std::move(body), {}}));
}

Formula Formula::nu(std::string binder, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Nu, std::move(binder), std::move(body), {}}));
}

const std::string& Formula::name() const {
  assert(kind() == Kind::Var || kind() == Kind::Mu || kind() == Kind::Nu);
  return node_->name;
}

const Formula& Formula::left() const {
  assert(kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Imp);
  return *node_->lhs;
}

const Formula& Formula::right() const {
  assert(kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Imp);
  return *node_->rhs;
}

const Formula& Formula::body() const {
  assert(kind() == Kind::Mu || kind() == Kind::Nu);
  return *node_->lhs;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Top:
    case Kind::Bot:
      return true;
    case Kind::Var:
      return name() == other.name();
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return left() == other.left() && right() == other.right();
    case Kind::Mu:
    case Kind::Nu:
      return name() == other.name() && body() == other.body();
  }
  return false;  // unreachable
}

// ---------------------------------------------------------------------------
// Lexing and parsing
// ---------------------------------------------------------------------------

ParseError::ParseError(std::string message, int line_, int column_)
    : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                         std::to_string(column_) + ": " + std::move(message)),
      line(line_),
      column(column_) {}

namespace {

enum class Tok : std::uint8_t {
  Ident, KwMu, KwNu, KwTop, KwBot,
  AndOp, OrOp, ImpOp, Tilde, LParen, RParen, Dot, End,
};

struct Token {
  Tok tok;
  std::string text;
  int line;
  int column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::KwMu: return "'mu'";
    case Tok::KwNu: return "'nu'";
    case Tok::KwTop: return "'T'";
    case Tok::KwBot: return "'F'";
    case Tok::AndOp: return "'/\\'";
    case Tok::OrOp: return "'\\/'";
    case Tok::ImpOp: return "'->'";
    case Tok::Tilde: return "'~'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Dot: return "'.'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    int tl = line, tc = col;
    auto push = [&](Tok t, std::size_t len) {
      out.push_back(Token{t, std::string(text.substr(i, len)), tl, tc});
      advance(len);
    };
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '\\') {
      push(Tok::AndOp, 2);
    } else if (c == '\\' && i + 1 < text.size() && text[i + 1] == '/') {
      push(Tok::OrOp, 2);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      push(Tok::ImpOp, 2);
    } else if (c == '~') {
      push(Tok::Tilde, 1);
    } else if (c == '(') {
      push(Tok::LParen, 1);
    } else if (c == ')') {
      push(Tok::RParen, 1);
    } else if (c == '.') {
      push(Tok::Dot, 1);
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      std::string word(text.substr(i, j - i));
      Tok t = Tok::Ident;
      if (word == "mu") t = Tok::KwMu;
      else if (word == "nu") t = Tok::KwNu;
      else if (word == "T") t = Tok::KwTop;
      else if (word == "F") t = Tok::KwBot;
      push(t, j - i);
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "'", line, col);
    }
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula run() {
    Formula f = formula();
    expect(Tok::End);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().line, peek().column);
  }

  void expect(Tok t) {
    if (peek().tok != t) {
      fail(std::string("expected ") + describe(t) + ", found " + describe(peek().tok));
    }
    ++pos_;
  }

  // formula := or_chain ('->' formula)?          right associative
  Formula formula() {
    Formula lhs = disjunction();
    if (peek().tok == Tok::ImpOp) {
      take();
      return Formula::imp(std::move(lhs), formula());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (peek().tok == Tok::OrOp) {
      take();
      lhs = Formula::disj(std::move(lhs), conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (peek().tok == Tok::AndOp) {
      take();
      lhs = Formula::conj(std::move(lhs), unary());
    }
    return lhs;
  }

  Formula unary() {
    if (peek().tok == Tok::Tilde) {
      take();
      return Formula::neg(unary());
    }
    return atom();
  }

  Formula atom() {
    switch (peek().tok) {
      case Tok::KwTop:
        take();
        return Formula::top();
      case Tok::KwBot:
        take();
        return Formula::bot();
      case Tok::Ident:
        return Formula::var(take().text);
      case Tok::LParen: {
        take();
        Formula f = formula();
        expect(Tok::RParen);
        return f;
      }
      case Tok::KwMu:
      case Tok::KwNu: {
        bool is_mu = take().tok == Tok::KwMu;
        if (peek().tok != Tok::Ident) {
          fail(std::string("expected a variable after ") + (is_mu ? "'mu'" : "'nu'"));
        }
        std::string binder = take().text;
        expect(Tok::Dot);
        // The body takes everything up to the closing delimiter.
        Formula body = formula();
        return is_mu ? Formula::mu(std::move(binder), std::move(body))
                     : Formula::nu(std::move(binder), std::move(body));
      }
      default:
        fail(std::string("expected a formula, found ") + describe(peek().tok));
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(lex(text)).run(); }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Precedence: -> 1 (right), \/ 2 (left), /\ 3 (left); atoms bind tightest.
// `right_edge` is true when nothing of the surrounding output follows this
// subformula, which is exactly when a binder may appear bare: its body
// swallows the longest suffix, so the reading matches iff it ends the text.
void render(std::ostream& os, const Formula& f, int min_prec, bool right_edge) {
  switch (f.kind()) {
    case Kind::Var:
      os << f.name();
      return;
    case Kind::Top:
      os << 'T';
      return;
    case Kind::Bot:
      os << 'F';
      return;
    case Kind::Mu:
    case Kind::Nu: {
      if (!right_edge) {
        os << '(';
        render(os, f, 0, true);
        os << ')';
        return;
      }
      os << (f.kind() == Kind::Mu ? "mu " : "nu ") << f.name() << ". ";
      render(os, f.body(), 0, true);
      return;
    }
    case Kind::And:
    case Kind::Or:
    case Kind::Imp: {
      int prec = f.kind() == Kind::Imp ? 1 : f.kind() == Kind::Or ? 2 : 3;
      bool paren = prec < min_prec;
      if (paren) os << '(';
      bool edge = paren ? true : right_edge;
      const char* op = f.kind() == Kind::Imp ? " -> " : f.kind() == Kind::Or ? " \\/ " : " /\\ ";
      // left child: equal precedence allowed only for the left-assoc ops
      render(os, f.left(), f.kind() == Kind::Imp ? prec + 1 : prec, false);
      os << op;
      render(os, f.right(), f.kind() == Kind::Imp ? prec : prec + 1, edge);
      if (paren) os << ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  render(os, f, 0, true);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  render(os, f, 0, true);
  return os;
}

// ---------------------------------------------------------------------------
// Variables and substitution
// ---------------------------------------------------------------------------

bool is_free_in(const Formula& f, const std::string& x) {
  switch (f.kind()) {
    case Kind::Var:
      return f.name() == x;
    case Kind::Top:
    case Kind::Bot:
      return false;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return is_free_in(f.left(), x) || is_free_in(f.right(), x);
    case Kind::Mu:
    case Kind::Nu:
      return f.name() != x && is_free_in(f.body(), x);
  }
  return false;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Var:
      for (const auto& b : bound) {
        if (b == f.name()) return;
      }
      out.insert(f.name());
      return;
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case Kind::Mu:
    case Kind::Nu:
      bound.push_back(f.name());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
  }
}

void collect_all(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Var:
      out.insert(f.name());
      return;
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      collect_all(f.left(), out);
      collect_all(f.right(), out);
      return;
    case Kind::Mu:
    case Kind::Nu:
      out.insert(f.name());
      collect_all(f.body(), out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  collect_all(f, out);
  return out;
}

bool fixed_point_free(const Formula& f) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      return true;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      return fixed_point_free(f.left()) && fixed_point_free(f.right());
    case Kind::Mu:
    case Kind::Nu:
      return false;
  }
  return true;
}

std::string fresh_var(const std::string& base, const std::set<std::string>& avoid) {
  std::string candidate = base + "'";
  for (int k = 1; avoid.count(candidate) != 0; ++k) {
    candidate = base + "'" + std::to_string(k);
  }
  return candidate;
}

Formula substitute(const Formula& f, const std::string& x, const Formula& replacement) {
  switch (f.kind()) {
    case Kind::Var:
      return f.name() == x ? replacement : f;
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp: {
      Formula l = substitute(f.left(), x, replacement);
      Formula r = substitute(f.right(), x, replacement);
      if (l.id() == f.left().id() && r.id() == f.right().id()) return f;
      switch (f.kind()) {
        case Kind::And: return Formula::conj(std::move(l), std::move(r));
        case Kind::Or: return Formula::disj(std::move(l), std::move(r));
        default: return Formula::imp(std::move(l), std::move(r));
      }
    }
    case Kind::Mu:
    case Kind::Nu: {
      if (f.name() == x || !is_free_in(f.body(), x)) return f;
      std::string binder = f.name();
      Formula body = f.body();
      if (is_free_in(replacement, binder)) {
        // Rename the binder away from anything in the body or the replacement
        // so no free variable of either gets captured.
        std::set<std::string> avoid = all_vars(body);
        auto more = all_vars(replacement);
        avoid.insert(more.begin(), more.end());
        avoid.insert(x);
        std::string renamed = fresh_var(binder, avoid);
        body = substitute(body, binder, Formula::var(renamed));
        binder = renamed;
      }
      Formula new_body = substitute(body, x, replacement);
      return f.kind() == Kind::Mu ? Formula::mu(std::move(binder), std::move(new_body))
                                  : Formula::nu(std::move(binder), std::move(new_body));
    }
  }
  return f;  // unreachable
}

Formula substitute_all(const Formula& f,
                       const std::vector<std::pair<std::string, Formula>>& subs) {
  if (subs.empty()) return f;
  // Route through temporaries so the substitution is simultaneous even when a
  // replacement mentions one of the substituted variables.
  std::set<std::string> avoid = all_vars(f);
  for (const auto& [var, value] : subs) {
    avoid.insert(var);
    auto vs = all_vars(value);
    avoid.insert(vs.begin(), vs.end());
  }
  Formula staged = f;
  std::vector<std::pair<std::string, Formula>> finals;
  finals.reserve(subs.size());
  for (const auto& [var, value] : subs) {
    std::string temp = fresh_var(var, avoid);
    avoid.insert(temp);
    staged = substitute(staged, var, Formula::var(temp));
    finals.emplace_back(temp, value);
  }
  for (const auto& [temp, value] : finals) {
    staged = substitute(staged, temp, value);
  }
  return staged;
}

Formula iterate_subst(const Formula& f, const std::string& x, int n, const Formula& base) {
  if (n < 0) throw std::invalid_argument("iterate_subst: negative iteration count");
  Formula acc = base;
  for (int k = 0; k < n; ++k) {
    acc = substitute(f, x, acc);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Occurrence analysis and well-formedness
// ---------------------------------------------------------------------------

std::string to_string(const Path& path) {
  std::string out;
  out.reserve(path.size());
  for (Step s : path) {
    out += s == Step::Left ? 'L' : s == Step::Right ? 'R' : 'B';
  }
  return out.empty() ? "(root)" : out;
}

namespace {

void scan_occurrences(const Formula& f, const std::string& x, Path& path, int crossings,
                      std::vector<Occurrence>& out) {
  switch (f.kind()) {
    case Kind::Var:
      if (f.name() == x) out.push_back(Occurrence{path, crossings});
      return;
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp: {
      int left_crossings = crossings + (f.kind() == Kind::Imp ? 1 : 0);
      path.push_back(Step::Left);
      scan_occurrences(f.left(), x, path, left_crossings, out);
      path.back() = Step::Right;
      scan_occurrences(f.right(), x, path, crossings, out);
      path.pop_back();
      return;
    }
    case Kind::Mu:
    case Kind::Nu:
      if (f.name() == x) return;  // shadowed below here
      path.push_back(Step::Body);
      scan_occurrences(f.body(), x, path, crossings, out);
      path.pop_back();
      return;
  }
}

}  // namespace

VariableReport analyze(const Formula& f, const std::string& x) {
  VariableReport report;
  Path path;
  scan_occurrences(f, x, path, 0, report.occurrences);
  if (report.occurrences.empty()) {
    report.polarity = Polarity::Absent;
    return report;
  }
  bool any_even = false;
  bool any_odd = false;
  for (const auto& occ : report.occurrences) {
    (occ.crossings % 2 == 0 ? any_even : any_odd) = true;
  }
  report.polarity = any_even && any_odd ? Polarity::Mixed
                    : any_even          ? Polarity::Positive
                                        : Polarity::Negative;
  return report;
}

std::string WellFormednessIssue::message() const {
  std::ostringstream os;
  os << "binder '" << binder << "' at " << to_string(binder_path) << ": variable occurs "
     << (occurrence.crossings % 2 == 1 ? "negatively" : "with mixed polarity")
     << " at " << to_string(occurrence.path) << " (" << occurrence.crossings
     << " antecedent crossing" << (occurrence.crossings == 1 ? "" : "s") << ")";
  return os.str();
}

namespace {

void scan_binders(const Formula& f, Path& path, WellFormedness& out) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
      path.push_back(Step::Left);
      scan_binders(f.left(), path, out);
      path.back() = Step::Right;
      scan_binders(f.right(), path, out);
      path.pop_back();
      return;
    case Kind::Mu:
    case Kind::Nu: {
      VariableReport report = analyze(f.body(), f.name());
      if (report.polarity == Polarity::Negative || report.polarity == Polarity::Mixed) {
        out.ok = false;
        for (const auto& occ : report.occurrences) {
          if (occ.crossings % 2 == 1) {
            out.issues.push_back(WellFormednessIssue{f.name(), path, occ});
            break;
          }
        }
      }
      path.push_back(Step::Body);
      scan_binders(f.body(), path, out);
      path.pop_back();
      return;
    }
  }
}

}  // namespace

WellFormedness well_formed(const Formula& f) {
  WellFormedness result;
  Path path;
  scan_binders(f, path, result);
  return result;
}

}  // namespace ipcmu
