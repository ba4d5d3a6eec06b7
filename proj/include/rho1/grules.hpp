#pragma once

// Symbolic Green-function algebra.
//
// A GExpr is a polynomial in atoms g(a, b) with coefficients in Q[T, 1/T]. The
// car rules of a crossing (s, i, j) rewrite first indices,
//   g(i, b) = d(i, b) + T^s g(i+, b) + (1 - T^s) g(j+, b),   g(j, b) = d(j, b) + g(j+, b),
// and the counter rules rewrite second indices,
//   g(a, i) = T^-s (g(a, i+) - d(a, i+)),   g(a, j) = g(a, j+) - (1 - T^s) g(a, i) - d(a, j+).
// Kronecker deltas are resolved only through declared equalities and distinctness.

#include "rho1/invariant.hpp"
#include "rho1/laurent.hpp"
#include "rho1/moves.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rho1::grules {

using Symbol = std::string;
using Atom = std::pair<Symbol, Symbol>;
using Monomial = std::vector<Atom>;  // sorted

struct UnresolvedDelta : std::logic_error {
  using std::logic_error::logic_error;
};

struct DegreeOverflow : std::domain_error {
  using std::domain_error::domain_error;
};

struct RuleError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Which index pairs are known equal or known distinct.
class Context {
 public:
  void declare_equal(const Symbol& a, const Symbol& b) {
    Symbol ra = root(a), rb = root(b);
    if (ra == rb) return;
    if (known_distinct(ra, rb))
      throw std::logic_error("cannot declare " + a + " = " + b + ": declared distinct");
    parent_[ra] = rb;
  }
  void declare_distinct(const Symbol& a, const Symbol& b) {
    if (root(a) == root(b)) throw std::logic_error("cannot declare " + a + " != " + b + ": declared equal");
    distinct_.insert({a, b});
    distinct_.insert({b, a});
  }
  void declare_all_distinct(const std::vector<Symbol>& v) {
    for (std::size_t x = 0; x < v.size(); ++x)
      for (std::size_t y = x + 1; y < v.size(); ++y) declare_distinct(v[x], v[y]);
  }

  /// Value of the Kronecker delta d(a, b).
  bool same(const Symbol& a, const Symbol& b) const {
    Symbol ra = root(a), rb = root(b);
    if (ra == rb) return true;
    if (known_distinct(ra, rb)) return false;
    throw UnresolvedDelta("delta(" + a + ", " + b + ") is not resolved by the context");
  }

 private:
  Symbol root(Symbol a) const {
    for (auto it = parent_.find(a); it != parent_.end(); it = parent_.find(a)) a = it->second;
    return a;
  }
  bool known_distinct(const Symbol& ra, const Symbol& rb) const {
    for (const auto& [x, y] : distinct_)
      if (root(x) == ra && root(y) == rb) return true;
    return false;
  }

  std::map<Symbol, Symbol> parent_;
  std::set<std::pair<Symbol, Symbol>> distinct_;
};

class GExpr {
 public:
  static constexpr int default_cap = 4;

  GExpr() = default;
  GExpr(const LaurentPoly& scalar) {  // NOLINT
    if (!scalar.is_zero()) terms_[{}] = scalar;
  }
  GExpr(int scalar) : GExpr(LaurentPoly(scalar)) {}  // NOLINT

  static GExpr g(const Symbol& a, const Symbol& b) {
    GExpr e;
    e.terms_[{{a, b}}] = LaurentPoly(1);
    return e;
  }

  const std::map<Monomial, LaurentPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
    return d;
  }
  std::set<Symbol> symbols() const {
    std::set<Symbol> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [a, b] : m) out.insert({a, b});
    return out;
  }

  GExpr& operator+=(const GExpr& b) {
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
  }
  GExpr& operator-=(const GExpr& b) {
    for (const auto& [m, c] : b.terms_) add_term(m, -c);
    return *this;
  }
  friend GExpr operator+(GExpr a, const GExpr& b) { return a += b; }
  friend GExpr operator-(GExpr a, const GExpr& b) { return a -= b; }
  GExpr operator-() const { return GExpr() - *this; }

  friend GExpr multiply(const GExpr& a, const GExpr& b, int cap = default_cap) {
    if (!a.is_zero() && !b.is_zero() && a.degree() + b.degree() > cap)
      throw DegreeOverflow("product degree " + std::to_string(a.degree() + b.degree()) +
                           " exceeds the cap " + std::to_string(cap));
    GExpr r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        std::sort(m.begin(), m.end());
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend GExpr operator*(const GExpr& a, const GExpr& b) { return multiply(a, b); }

  friend bool operator==(const GExpr& a, const GExpr& b) { return a.terms_ == b.terms_; }

  /// Replaces every atom by f(atom).
  template <class F>
  GExpr substitute(F&& f) const {
    GExpr out;
    for (const auto& [m, c] : terms_) {
      GExpr prod(c);
      for (const auto& atom : m) prod = multiply(prod, f(atom), static_cast<int>(m.size()));
      out += prod;
    }
    return out;
  }

  /// e.g. "-1/2+g(i,j)+(T^-1-1)*g(j+,j)*g(k,k)"; terms in canonical order.
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      std::string cs = c.str();
      std::string body;
      for (const auto& [a, b] : m) body += (body.empty() ? "" : "*") + ("g(" + a + "," + b + ")");
      std::string term;
      if (m.empty()) term = cs;
      else if (cs == "1") term = body;
      else if (cs == "-1") term = "-" + body;
      else if (c.term_count() == 1) term = cs + "*" + body;
      else term = "(" + cs + ")*" + body;
      if (!out.empty() && term[0] != '-') out += '+';
      out += term;
    }
    return out;
  }

 private:
  void add_term(const Monomial& m, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::map<Monomial, LaurentPoly> terms_;
};

enum class Side { first, second };

/// g(target, .) (or g(., target)) = sum delta[y] d(y, .) + sum ref[z] g(z, .).
struct LinearRule {
  Symbol target;
  std::map<Symbol, LaurentPoly> delta;
  std::map<Symbol, LaurentPoly> ref;
};

/// A crossing (s, i, j) together with the names of the edges after i and j.
struct SymCrossing {
  int s = 1;
  Symbol i, j, ip, jp;
};

namespace detail {

inline void accumulate(std::map<Symbol, LaurentPoly>& into, const Symbol& k, const LaurentPoly& c) {
  LaurentPoly& slot = into[k];
  slot += c;
  if (slot.is_zero()) into.erase(k);
}

inline LaurentPoly ts(int s) { return LaurentPoly::T(s); }

}  // namespace detail

inline std::vector<LinearRule> car_rules(const SymCrossing& c) {
  LinearRule over{c.i, {{c.i, 1}}, {}};
  detail::accumulate(over.ref, c.ip, detail::ts(c.s));
  detail::accumulate(over.ref, c.jp, LaurentPoly(1) - detail::ts(c.s));
  LinearRule under{c.j, {{c.j, 1}}, {{c.jp, 1}}};
  return {over, under};
}

inline std::vector<LinearRule> counter_rules(const SymCrossing& c) {
  LaurentPoly inv = detail::ts(-c.s);
  LinearRule over{c.i, {{c.ip, -inv}}, {{c.ip, inv}}};
  LinearRule under{c.j, {{c.jp, -1}}, {{c.jp, 1}}};
  detail::accumulate(under.ref, c.i, detail::ts(c.s) - LaurentPoly(1));
  return {over, under};
}

/// Nothing flows back from the last edge: g(last, b) = d(last, b).
inline LinearRule terminal_rule(const Symbol& last) { return {last, {{last, 1}}, {}}; }
/// Nothing reaches the first edge: g(a, first) = d(a, first).
inline LinearRule initial_rule(const Symbol& first) { return {first, {{first, 1}}, {}}; }

/// Rewrites, once, every atom whose index on `side` is the rule's target.
inline GExpr apply_rule(const GExpr& e, const LinearRule& r, Side side, const Context& ctx) {
  return e.substitute([&](const Atom& atom) -> GExpr {
    const Symbol& here = side == Side::first ? atom.first : atom.second;
    const Symbol& other = side == Side::first ? atom.second : atom.first;
    if (here != r.target) return GExpr::g(atom.first, atom.second);
    GExpr out;
    for (const auto& [y, c] : r.delta)
      if (side == Side::first ? ctx.same(y, other) : ctx.same(other, y)) out += GExpr(c);
    for (const auto& [z, c] : r.ref)
      out += multiply(GExpr(c), side == Side::first ? GExpr::g(z, other) : GExpr::g(other, z));
    return out;
  });
}

/// Rewrites atoms with first index i or j by the crossing's car rules.
inline GExpr apply_car_rule(const GExpr& e, const SymCrossing& c, const Context& ctx) {
  GExpr out = e;
  for (const auto& r : car_rules(c)) out = apply_rule(out, r, Side::first, ctx);
  return out;
}

/// Rewrites atoms with second index i or j by the crossing's counter rules.
inline GExpr apply_counter_rule(const GExpr& e, const SymCrossing& c, const Context& ctx) {
  GExpr out = e;
  for (const auto& r : counter_rules(c)) out = apply_rule(out, r, Side::second, ctx);
  return out;
}

namespace detail {

inline void substitute(LinearRule& r, const LinearRule& by) {
  auto it = r.ref.find(by.target);
  if (it == r.ref.end()) return;
  LaurentPoly c = it->second;
  r.ref.erase(it);
  for (const auto& [y, a] : by.delta) accumulate(r.delta, y, c * a);
  for (const auto& [z, a] : by.ref) accumulate(r.ref, z, c * a);
}

}  // namespace detail

/// Solves a rule system for the listed symbols, in order, so that no right-hand
/// side mentions any of them. Self-references (kinks) are solved by dividing by
/// 1 - c, which has to be a unit.
inline std::map<Symbol, LinearRule> solve_rules(const std::vector<LinearRule>& rules,
                                                const std::vector<Symbol>& eliminate) {
  std::map<Symbol, LinearRule> by_target;
  for (const auto& r : rules)
    if (!by_target.emplace(r.target, r).second) throw RuleError("two rules for " + r.target);
  std::map<Symbol, LinearRule> solved;
  for (const Symbol& x : eliminate) {
    auto it = by_target.find(x);
    if (it == by_target.end()) throw RuleError("no rule eliminates " + x);
    LinearRule r = it->second;
    for (const auto& [y, sy] : solved) detail::substitute(r, sy);
    if (auto self = r.ref.find(x); self != r.ref.end()) {
      LaurentPoly factor = LaurentPoly(1) - self->second;
      r.ref.erase(self);
      if (factor.term_count() != 1)
        throw RuleError("rule for " + x + " is not solvable over Laurent polynomials (1 - c = " +
                        factor.str() + ")");
      for (auto* part : {&r.delta, &r.ref})
        for (auto& [k, c] : *part) c = divide_exact(c, factor);
    }
    for (auto& [y, sy] : solved) detail::substitute(sy, r);
    solved.emplace(x, r);
  }
  return solved;
}

/// Rewrites all atoms whose index on `side` has a solved rule.
inline GExpr rewrite(const GExpr& e, const std::map<Symbol, LinearRule>& solved, Side side,
                     const Context& ctx) {
  GExpr out = e;
  for (const auto& [x, r] : solved) out = apply_rule(out, r, side, ctx);
  return out;
}

/// The local data of one side of a move.
struct LocalConfig {
  std::vector<SymCrossing> crossings;
  std::map<Symbol, int> rotation;

  std::vector<Symbol> entering() const {
    std::vector<Symbol> out;
    for (const auto& c : crossings) {
      out.push_back(c.i);
      out.push_back(c.j);
    }
    return out;
  }
};

/// R_1 of a symbolic crossing.
inline GExpr r1_expr(const SymCrossing& c) {
  using E = GExpr;
  E v = E::g(c.j, c.i) * (E::g(c.jp, c.j) + E::g(c.j, c.jp) - E::g(c.i, c.j)) -
        E::g(c.i, c.i) * (E::g(c.j, c.jp) - E(1)) - E(LaurentPoly(Rational(1, 2)));
  return c.s > 0 ? v : -v;
}

/// Crossing terms minus rotation terms phi_k (g(k, k) - 1/2).
inline GExpr contribution(const LocalConfig& cfg) {
  GExpr out;
  for (const auto& c : cfg.crossings) out += r1_expr(c);
  for (const auto& [k, phi] : cfg.rotation)
    if (phi != 0) out -= GExpr(LaurentPoly(phi)) * (GExpr::g(k, k) - GExpr(LaurentPoly(Rational(1, 2))));
  return out;
}

/// Pushes every index entering a crossing of `cfg` forward to the edges that leave
/// the configuration, first indices by car rules and second indices by counter rules.
inline GExpr reduce(const GExpr& e, const LocalConfig& cfg, const Context& ctx,
                    std::optional<std::vector<Symbol>> order = std::nullopt) {
  std::vector<Symbol> elim = order ? *order : cfg.entering();
  std::vector<LinearRule> car, counter;
  for (const auto& c : cfg.crossings) {
    for (auto& r : car_rules(c)) car.push_back(r);
    for (auto& r : counter_rules(c)) counter.push_back(r);
  }
  GExpr out = rewrite(e, solve_rules(car, elim), Side::first, ctx);
  return rewrite(out, solve_rules(counter, elim), Side::second, ctx);
}

struct MoveIdentity {
  std::string name;
  LocalConfig lhs, rhs;
  std::vector<Symbol> symbols;  // all pairwise distinct
};

struct IdentityReport {
  std::string move;
  bool holds = false;
  GExpr lhs, rhs, difference;
};

/// The local configurations of both sides of each move, in the edge naming of the
/// left side; edges after the move area are named with a second "+".
inline std::vector<MoveIdentity> move_identities(MoveKind kind) {
  const std::vector<Symbol> one{"i", "i+", "i++"};
  const std::vector<Symbol> two{"i", "i+", "i++", "j", "j+", "j++"};
  const std::vector<Symbol> three{"i", "i+", "i++", "j", "j+", "j++", "k", "k+", "k++"};
  switch (kind) {
    case MoveKind::R3:
      return {{"R3",
               {{{1, "j", "k", "j+", "k+"}, {1, "i", "k+", "i+", "k++"}, {1, "i+", "j+", "i++", "j++"}}, {}},
               {{{1, "i", "j", "i+", "j+"}, {1, "i+", "k", "i++", "k+"}, {1, "j+", "k+", "j++", "k++"}}, {}},
               three}};
    case MoveKind::R2c:
      return {{"R2c",
               {{{-1, "i", "j+", "i+", "j++"}, {1, "i+", "j", "i++", "j+"}}, {{"j+", 1}}},
               {{}, {{"j++", 1}}},
               two}};
    case MoveKind::R1l:
      return {{"R1l", {{{1, "i+", "i", "i++", "i+"}}, {{"i+", 1}}}, {}, one}};
    case MoveKind::R1r:
      return {{"R1r", {{{1, "i", "i+", "i+", "i++"}}, {{"i+", -1}}}, {}, one}};
    case MoveKind::R2b: {
      std::vector<MoveIdentity> out;
      for (int s : {1, -1})
        out.push_back({s > 0 ? "R2b(s=+1)" : "R2b(s=-1)",
                       {{{s, "i", "j", "i+", "j+"}, {-s, "i+", "j+", "i++", "j++"}}, {}},
                       {},
                       two});
      return out;
    }
    case MoveKind::SwPlus:
    case MoveKind::SwMinus: {
      int s = kind == MoveKind::SwPlus ? 1 : -1;
      SymCrossing c{s, "i", "j", "i+", "j+"};
      return {{to_string(kind),
               {{c}, {}},
               {{c}, {{"i", 1}, {"j", 1}, {"i+", -1}, {"j+", -1}}},
               {"i", "i+", "j", "j+"}}};
    }
  }
  return {};
}

inline IdentityReport check_identity(const MoveIdentity& m) {
  Context ctx;
  ctx.declare_all_distinct(m.symbols);
  IdentityReport rep;
  rep.move = m.name;
  rep.lhs = reduce(contribution(m.lhs), m.lhs, ctx);
  rep.rhs = reduce(contribution(m.rhs), m.rhs, ctx);
  rep.difference = rep.lhs - rep.rhs;
  rep.holds = rep.difference.is_zero();
  return rep;
}

/// Checks that the local rho_1 contributions of both sides agree once the move's
/// internal indices are eliminated. Moves with several sign variants must hold
/// for each; the report carries the first failing variant, if any.
inline IdentityReport check_move_identity(MoveKind kind) {
  IdentityReport out;
  out.move = to_string(kind);
  out.holds = true;
  for (const auto& m : move_identities(kind)) {
    IdentityReport r = check_identity(m);
    if (!r.holds && out.holds) {
      out = r;
      out.move = to_string(kind);
    } else if (out.holds) {
      out.lhs = r.lhs;
      out.rhs = r.rhs;
    }
  }
  return out;
}

/// The six moves whose identities establish invariance.
inline const std::vector<MoveKind>& proof_moves() {
  static const std::vector<MoveKind> v{MoveKind::R3,  MoveKind::R2c, MoveKind::R1l,
                                       MoveKind::R1r, MoveKind::R2b, MoveKind::SwPlus};
  return v;
}

/// d^power * e evaluated on a concrete diagram, with symbols bound to edge labels
/// and atoms replaced by the exact Green function (numerators over d).
inline LaurentPoly scaled_value(const GExpr& e, const std::map<Symbol, Label>& binding,
                                const UprightDiagram& d, const GreenMatrix<Integer>& g, int power) {
  LaurentPoly out;
  LaurentPoly det = g.denominator.cast<Rational>();
  for (const auto& [m, c] : e.terms()) {
    if (static_cast<int>(m.size()) > power)
      throw DegreeOverflow("term of degree " + std::to_string(m.size()) + " needs a higher power");
    LaurentPoly t = c;
    for (const auto& [a, b] : m)
      t *= g.numerators(d.index_of(binding.at(a)), d.index_of(binding.at(b))).cast<Rational>();
    for (std::size_t k = m.size(); k < static_cast<std::size_t>(power); ++k) t *= det;
    out += t;
  }
  return out;
}

}  // namespace rho1::grules
