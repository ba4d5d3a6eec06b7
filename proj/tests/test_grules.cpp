#include "rho1/convert.hpp"
#include "rho1/grules.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rho1;
using namespace rho1::grules;

namespace {

GExpr g(const Symbol& a, const Symbol& b) { return GExpr::g(a, b); }
GExpr c(const LaurentPoly& p) { return GExpr(p); }
const LaurentPoly T = LaurentPoly::T();

Context distinct(const std::vector<Symbol>& v) {
  Context ctx;
  ctx.declare_all_distinct(v);
  return ctx;
}

}  // namespace

TEST(GExpr, Arithmetic) {
  EXPECT_TRUE((g("i", "j") - g("i", "j")).is_zero());
  GExpr p = g("j", "i") * g("j+", "j");
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p, g("j+", "j") * g("j", "i"));
  EXPECT_EQ((c(T) * g("a", "b") + g("a", "b")).str(), "(1+T)*g(a,b)");
  EXPECT_EQ(GExpr(0).str(), "0");
}

TEST(GExpr, DegreeCap) {
  GExpr q = g("a", "b") * g("b", "c");
  EXPECT_NO_THROW(q * q);
  EXPECT_THROW(q * q * g("a", "a"), DegreeOverflow);
  EXPECT_THROW(multiply(q, q, 3), DegreeOverflow);
}

TEST(GExpr, BuildsR1Term) {
  GExpr r = r1_expr({1, "i", "j", "i+", "j+"});
  GExpr want = g("j", "i") * (g("j+", "j") + g("j", "j+") - g("i", "j")) -
               g("i", "i") * (g("j", "j+") - GExpr(1)) - c(LaurentPoly(Rational(1, 2)));
  EXPECT_EQ(r, want);
  EXPECT_EQ(r1_expr({-1, "i", "j", "i+", "j+"}), -want);
}

TEST(Rules, CarRuleExamples) {
  SymCrossing x{1, "i", "j", "i+", "j+"};
  Context ctx = distinct({"i", "j", "i+", "j+", "b"});
  EXPECT_EQ(apply_car_rule(g("j", "b"), x, ctx), g("j+", "b"));
  EXPECT_EQ(apply_car_rule(g("j", "j"), x, ctx), GExpr(1) + g("j+", "j"));
  EXPECT_EQ(apply_car_rule(g("i", "b"), x, ctx), c(T) * g("i+", "b") + c(1 - T) * g("j+", "b"));

  Context eq = distinct({"i", "j", "i+", "j+"});
  eq.declare_equal("b", "j");
  EXPECT_EQ(apply_car_rule(g("j", "b"), x, eq), GExpr(1) + g("j+", "b"));

  Context end = distinct({"last", "b"});
  EXPECT_TRUE(apply_rule(g("last", "b"), terminal_rule("last"), Side::first, end).is_zero());
}

TEST(Rules, CounterRuleExamples) {
  SymCrossing x{1, "i", "j", "i+", "j+"};
  Context ctx = distinct({"1", "a", "i", "j", "i+", "j+"});
  EXPECT_TRUE(apply_rule(g("a", "1"), initial_rule("1"), Side::second, ctx).is_zero());
  EXPECT_EQ(apply_rule(g("1", "1"), initial_rule("1"), Side::second, ctx), GExpr(1));
  EXPECT_EQ(apply_counter_rule(g("a", "i"), x, ctx), c(LaurentPoly::T(-1)) * g("a", "i+"));
  // one pass: the g(a, i) introduced by the rule for j stays
  GExpr once = apply_counter_rule(g("a", "j"), x, ctx);
  EXPECT_EQ(once, g("a", "j+") + c(T - 1) * g("a", "i"));
  EXPECT_EQ(apply_counter_rule(once, x, ctx),
            g("a", "j+") + c((T - 1) * LaurentPoly::T(-1)) * g("a", "i+"));
}

TEST(Rules, UnresolvedDeltaIsAnError) {
  SymCrossing x{1, "i", "j", "i+", "j+"};
  Context partial = distinct({"i", "j", "i+", "j+"});
  EXPECT_THROW(apply_car_rule(g("j", "b"), x, partial), UnresolvedDelta);
  Context ctx;
  ctx.declare_distinct("a", "b");
  EXPECT_THROW(ctx.declare_equal("a", "b"), std::logic_error);
}

TEST(Rules, EliminationMatchesHandComputation) {
  // left side of the third move: traffic from i, j, k expressed on the outgoing edges
  auto ids = move_identities(MoveKind::R3);
  std::vector<LinearRule> car;
  for (const auto& x : ids[0].lhs.crossings)
    for (auto& r : car_rules(x)) car.push_back(r);
  auto solved = solve_rules(car, ids[0].lhs.entering());
  const auto& ri = solved.at("i");
  EXPECT_EQ(ri.ref.at("i++"), T * T);
  EXPECT_EQ(ri.ref.at("j++"), T * (1 - T));
  EXPECT_EQ(ri.ref.at("k++"), 1 - T);
  // deltas on internal edges vanish once b is outside the move
  EXPECT_EQ(ri.delta.at("i"), LaurentPoly(1));
  EXPECT_EQ(ri.delta.at("i+"), T);
  EXPECT_EQ(ri.delta.size(), 2u);
  EXPECT_EQ(solved.at("j").delta.at("k+"), 1 - T);
  EXPECT_EQ(solved.at("j").ref.at("j++"), T);
  EXPECT_EQ(solved.at("k").ref.size(), 1u);
}

TEST(Rules, KinkRuleSolvesToAUnitMultiple) {
  auto solved = solve_rules(car_rules({1, "i+", "i", "i++", "i+"}), {"i+", "i"});
  const auto& r = solved.at("i+");
  EXPECT_EQ(r.delta.at("i+"), LaurentPoly::T(-1));
  EXPECT_EQ(r.ref.at("i++"), LaurentPoly(1));
  EXPECT_EQ(r.ref.size(), 1u);
}

TEST(MoveIdentities, AllSixHold) {
  for (MoveKind k : proof_moves()) {
    auto rep = check_move_identity(k);
    EXPECT_TRUE(rep.holds) << rep.move << ": " << rep.difference.str();
    EXPECT_TRUE(rep.difference.is_zero());
  }
  EXPECT_TRUE(check_move_identity(MoveKind::SwMinus).holds);
}

TEST(MoveIdentities, ReducedSidesLiveOnOutgoingEdges) {
  auto r2c = check_move_identity(MoveKind::R2c);
  EXPECT_EQ(r2c.lhs, c(LaurentPoly(Rational(1, 2))) - g("j++", "j++"));
  EXPECT_TRUE(check_move_identity(MoveKind::R1l).lhs.is_zero());
  for (const auto& s : check_move_identity(MoveKind::R3).lhs.symbols())
    EXPECT_TRUE(s == "i++" || s == "j++" || s == "k++") << s;
}

TEST(MoveIdentities, DetectWrongConfigurations) {
  auto r1r = move_identities(MoveKind::R1r)[0];
  r1r.lhs.rotation["i+"] = 1;
  EXPECT_FALSE(check_identity(r1r).holds);

  auto r2c = move_identities(MoveKind::R2c)[0];
  r2c.rhs.rotation.clear();
  EXPECT_FALSE(check_identity(r2c).holds);

  auto r3 = move_identities(MoveKind::R3)[0];
  r3.rhs.crossings[1].s = -1;
  EXPECT_FALSE(check_identity(r3).holds);

  auto sw = move_identities(MoveKind::SwPlus)[0];
  sw.rhs.rotation["j+"] = 0;
  EXPECT_FALSE(check_identity(sw).holds);
}

TEST(MoveIdentities, RewritingIsConfluent) {
  std::mt19937 rng(11);
  for (MoveKind k : proof_moves())
    for (const auto& m : move_identities(k)) {
      Context ctx = distinct(m.symbols);
      for (const LocalConfig* side : {&m.lhs, &m.rhs}) {
        GExpr e = contribution(*side);
        GExpr reference = reduce(e, *side, ctx);
        for (int trial = 0; trial < 12; ++trial) {
          auto order = side->entering();
          std::shuffle(order.begin(), order.end(), rng);
          EXPECT_EQ(reduce(e, *side, ctx, order), reference) << m.name;
        }
      }
    }
}

TEST(MoveIdentities, RawRulesInRandomOrderReachTheSameForm) {
  // the configurations without kinks can be rewritten by the crossing rules directly
  std::mt19937 rng(5);
  for (MoveKind k : {MoveKind::R3, MoveKind::R2c, MoveKind::R2b, MoveKind::SwPlus})
    for (const auto& m : move_identities(k)) {
      Context ctx = distinct(m.symbols);
      const LocalConfig& side = m.lhs;
      GExpr reference = reduce(contribution(side), side, ctx);
      auto internal = side.entering();
      auto done = [&](const GExpr& e) {
        for (const auto& s : e.symbols())
          if (std::find(internal.begin(), internal.end(), s) != internal.end()) return false;
        return true;
      };
      for (int trial = 0; trial < 8; ++trial) {
        GExpr e = contribution(side);
        for (int guard = 0; !done(e); ++guard) {
          ASSERT_LT(guard, 200);
          const auto& x = side.crossings[rng() % side.crossings.size()];
          e = rng() % 2 ? apply_car_rule(e, x, ctx) : apply_counter_rule(e, x, ctx);
        }
        EXPECT_EQ(e, reference) << m.name;
      }
    }
}

namespace {

struct Instance {
  MoveIdentity identity;
  std::map<Symbol, Label> binding;
};

std::map<Symbol, Label> strand(const UprightDiagram& d, const std::string& name, Label e) {
  std::map<Symbol, Label> out{{name, e}};
  if (auto n = rho1::detail::next_of(d, e)) {
    out[name + "+"] = *n;
    if (auto nn = rho1::detail::next_of(d, *n)) out[name + "++"] = *nn;
  }
  return out;
}

std::optional<Instance> bind(const UprightDiagram& d, const MoveSpec& m) {
  if (m.direction != Direction::forward) return std::nullopt;
  auto ids = move_identities(m.kind);
  Instance inst{ids[0], {}};
  if (m.kind == MoveKind::R2b) inst.identity = ids[m.variant > 0 ? 0 : 1];
  const char* names[] = {"i", "j", "k"};
  for (std::size_t x = 0; x < m.site.size(); ++x)
    for (auto& kv : strand(d, names[x], m.site[x])) inst.binding.insert(kv);
  for (const auto& s : inst.identity.symbols)
    if (!inst.binding.count(s)) return std::nullopt;
  return inst;
}

}  // namespace

TEST(MoveIdentities, InstantiationMatchesConcreteTerms) {
  std::vector<UprightDiagram> base{pd_to_upright(braid_closure_pd(3, {1, 2, 1, 2, 1, 2, 1, 2})),
                                   pd_to_upright(parse_dt("4 8 10 2 6")),
                                   pd_to_upright(parse_dt("4 8 10 2 12 6"))};
  std::mt19937 rng(3);
  int checked = 0;
  for (const auto& d0 : base)
    for (MoveKind k : proof_moves()) {
      // put a left-hand pattern into the diagram first where needed
      UprightDiagram d = d0;
      auto sites = enumerate_move_sites(d, k);
      if (k != MoveKind::R3 && k != MoveKind::SwPlus) {
        std::vector<MoveSpec> back;
        for (const auto& m : sites)
          if (m.direction == Direction::backward) back.push_back(m);
        ASSERT_FALSE(back.empty()) << to_string(k);
        d = apply_move(d, back[rng() % back.size()]);
        sites = enumerate_move_sites(d, k);
      }
      auto green_d = green(d);
      for (const auto& m : sites) {
        auto inst = bind(d, m);
        if (!inst) continue;
        const LocalConfig& lhs = inst->identity.lhs;
        // the symbolic crossings are exactly the diagram's crossings at the site
        IntLaurent concrete;
        for (const auto& x : lhs.crossings) {
          Crossing cc{x.s, inst->binding.at(x.i), inst->binding.at(x.j)};
          ASSERT_TRUE(rho1::detail::find_crossing(d, cc.s, cc.i, cc.j).has_value()) << to_string(m);
          ASSERT_EQ(d.successor(cc.i), inst->binding.at(x.ip));
          ASSERT_EQ(d.successor(cc.j), inst->binding.at(x.jp));
          concrete += rho1::detail::r1_scaled(cc, green_d, d);
        }
        for (const auto& [s, phi] : lhs.rotation) {
          ASSERT_EQ(d.rotation(inst->binding.at(s)), phi) << to_string(m);
          concrete -= rho1::detail::rotation_scaled(inst->binding.at(s), phi, green_d, d);
        }
        LaurentPoly want = concrete.cast<Rational>() * Rational(1, 2);
        GExpr e = contribution(lhs);
        EXPECT_EQ(scaled_value(e, inst->binding, d, green_d, 2), want) << to_string(m);
        Context ctx = distinct(inst->identity.symbols);
        EXPECT_EQ(scaled_value(reduce(e, lhs, ctx), inst->binding, d, green_d, 2), want) << to_string(m);
        ++checked;
      }
    }
  EXPECT_GE(checked, 20);
}
