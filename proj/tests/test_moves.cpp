#include "rho1/convert.hpp"
#include "rho1/moves.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rho1;

namespace {

void expect_same_pair(const UprightDiagram& a, const UprightDiagram& b, const std::string& what) {
  auto p = invariant_pair(a), q = invariant_pair(b);
  EXPECT_EQ(p.delta, q.delta) << what;
  EXPECT_EQ(p.rho1, q.rho1) << what;
}

UprightDiagram braid_knot(int strands, std::vector<int> word) {
  return pd_to_upright(braid_closure_pd(strands, word));
}

}  // namespace

TEST(Moves, KinkDiagramReducesToTrivial) {
  auto d = apply_move(fixtures::d2(), {MoveKind::R1l, {1}, Direction::forward});
  EXPECT_EQ(d, UprightDiagram());
}

TEST(Moves, KinkInsertionSitesOnePerEdge) {
  auto sites = enumerate_move_sites(fixtures::d1(), MoveKind::R1l);
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(sites[0].direction, Direction::backward);
  auto d = apply_move(fixtures::d1(), sites[0]);
  EXPECT_EQ(d, fixtures::d2());
  auto d3 = fixtures::d3();
  std::size_t back = 0;
  for (const auto& m : enumerate_move_sites(d3, MoveKind::R1r)) back += m.direction == Direction::backward;
  EXPECT_EQ(back, d3.edge_count());
}

TEST(Moves, KinksAreUnknots) {
  for (auto kind : {MoveKind::R1l, MoveKind::R1r}) {
    auto d = apply_move(fixtures::d1(), {kind, {1}, Direction::backward});
    EXPECT_EQ(d.crossing_count(), 1u);
    auto p = invariant_pair(d);
    EXPECT_EQ(p.delta, LaurentPoly(1));
    EXPECT_EQ(p.rho1, LaurentPoly());
  }
}

TEST(Moves, SwirlsAtEveryCrossing) {
  auto d = fixtures::d3();
  EXPECT_EQ(enumerate_move_sites(d, MoveKind::SwPlus).size(), 6u);
  EXPECT_TRUE(enumerate_move_sites(d, MoveKind::SwMinus).empty());
  for (const auto& m : enumerate_move_sites(d, MoveKind::SwPlus)) {
    auto e = apply_move(d, m);
    expect_same_pair(d, e, to_string(m));
    EXPECT_EQ(apply_move(e, *inverse_move(m, 1)), d);
  }
}

TEST(Moves, R3RoundTrip) {
  // positive braids supply triangles
  auto d = braid_knot(3, {1, 2, 1, 2, 1, 2, 1, 2});
  auto sites = enumerate_move_sites(d, MoveKind::R3);
  ASSERT_FALSE(sites.empty());
  for (const auto& m : sites) {
    auto e = apply_move(d, m);
    expect_same_pair(d, e, to_string(m));
    EXPECT_EQ(apply_move(e, *inverse_move(m, 1)), d) << to_string(m);
  }
}

TEST(Moves, BigonsInsertAndRemove) {
  auto d = fixtures::d3();
  for (auto kind : {MoveKind::R2b, MoveKind::R2c}) {
    auto sites = enumerate_move_sites(d, kind);
    std::size_t inserted = 0;
    for (const auto& m : sites) {
      if (m.direction != Direction::backward) continue;
      ++inserted;
      Label relabel = 1;
      auto e = apply_move(d, m, &relabel);
      EXPECT_EQ(e.crossing_count(), d.crossing_count() + 2);
      expect_same_pair(d, e, to_string(m));
      auto back = apply_move(e, *inverse_move(m, relabel));
      expect_same_pair(d, back, to_string(m));
      EXPECT_EQ(back.crossing_count(), d.crossing_count());
    }
    EXPECT_GT(inserted, 0u) << to_string(kind);
  }
}

TEST(Moves, InapplicableSitesAreRejected) {
  EXPECT_THROW(apply_move(fixtures::d3(), {MoveKind::R1l, {1}, Direction::forward}), InapplicableMove);
  EXPECT_THROW(apply_move(fixtures::d3(), {MoveKind::R3, {1, 2, 3}, Direction::forward}),
               InapplicableMove);
  EXPECT_THROW(apply_move(fixtures::d3(), {MoveKind::SwMinus, {1, 4}, Direction::forward}),
               InapplicableMove);
}

TEST(Moves, RandomWalkPreservesInvariants) {
  std::mt19937_64 rng(99);
  auto d = pd_to_upright(parse_dt("4 8 10 2 12 6"));
  const auto start = invariant_pair(d);
  std::map<MoveKind, int> used;
  for (int step = 0; step < 40; ++step) {
    const auto& kinds = all_move_kinds();
    MoveKind kind = kinds[rng() % kinds.size()];
    auto sites = enumerate_move_sites(d, kind);
    if (sites.empty()) continue;
    // keep the walk small
    std::vector<MoveSpec> pool;
    for (const auto& m : sites)
      if (d.crossing_count() < 10 || m.direction == Direction::forward || kind >= MoveKind::R3)
        pool.push_back(m);
    if (pool.empty()) continue;
    const MoveSpec m = pool[rng() % pool.size()];
    d = apply_move(d, m);
    ++used[kind];
    auto p = invariant_pair(d);
    ASSERT_EQ(p.delta, start.delta) << to_string(m) << "\n" << to_json(d).dump();
    ASSERT_EQ(p.rho1, start.rho1) << to_string(m) << "\n" << to_json(d).dump();
  }
  EXPECT_GE(used.size(), 4u);
}
