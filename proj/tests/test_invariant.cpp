#include "rho1/invariant.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace rho1;

namespace {

const IntLaurent T = IntLaurent::T();

PolyMatrix<Integer> from_rows(const std::vector<std::vector<IntLaurent>>& rows) {
  PolyMatrix<Integer> m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
  return m;
}

}  // namespace

TEST(Invariant, MatrixOfEmptyDiagram) {
  EXPECT_EQ(build_A(fixtures::d1()), PolyMatrix<Integer>::identity(1));
  EXPECT_EQ(alexander(fixtures::d1()), LaurentPoly(1));
  EXPECT_EQ(rho1::rho1(fixtures::d1()), LaurentPoly());
}

TEST(Invariant, KinkDiagram) {
  auto d = fixtures::d2();
  EXPECT_EQ(build_A(d), from_rows({{1, -1, 0}, {0, T, -T}, {0, 0, 1}}));
  auto g = green(d);
  EXPECT_EQ(g.denominator, T);
  // G = ((1, T^-1, 1), (0, T^-1, 1), (0, 0, 1)) times det = T
  EXPECT_EQ(g.numerators, from_rows({{T, 1, T}, {0, 1, T}, {0, 0, T}}));
  EXPECT_EQ(alexander(d), LaurentPoly(1));
  EXPECT_EQ(rho1::rho1(d), LaurentPoly());
  // R_1 = T^-1 - 1/2, balancing the rotation term phi_2 (g_22 - 1/2)
  Fraction r = r1_term(d.crossings()[0], g, d);
  EXPECT_EQ(r.denominator, T * T * 2);
  EXPECT_EQ(r.numerator, T * 2 - T * T);
}

TEST(Invariant, TrefoilDiagram) {
  auto d = fixtures::d3();
  EXPECT_EQ(d.writhe(), 3);
  EXPECT_EQ(d.total_rotation(), -1);
  IntLaurent tm = T - 1;
  EXPECT_EQ(build_A(d), from_rows({{1, -T, 0, 0, tm, 0, 0},
                                   {0, 1, -1, 0, 0, 0, 0},
                                   {0, 0, 1, -T, 0, 0, tm},
                                   {0, 0, 0, 1, -1, 0, 0},
                                   {0, 0, tm, 0, 1, -T, 0},
                                   {0, 0, 0, 0, 0, 1, -1},
                                   {0, 0, 0, 0, 0, 0, 1}}));
  auto g = green(d);
  IntLaurent det = T * T - T + 1;
  EXPECT_EQ(g.denominator, det);
  IntLaurent t3 = T * T * T - T * T + T;
  EXPECT_EQ(g.numerators, from_rows({{det, t3, det, t3, det, t3, det},
                                     {0, det, 1, T, T, T * T, det},
                                     {0, 0, 1, T, T, T * T, det},
                                     {0, 0, 1 - T, 1, 1, T, det},
                                     {0, 0, 1 - T, T - T * T, 1, T, det},
                                     {0, 0, 0, 0, 0, det, det},
                                     {0, 0, 0, 0, 0, 0, det}}));
  EXPECT_EQ(alexander(d), parse_laurent("T^-1-1+T"));
  EXPECT_EQ(rho1::rho1(d), parse_laurent("-T^-2+2*T^-1-2+2*T-T^2"));
  auto pair = invariant_pair(d);
  EXPECT_TRUE(pair.warnings.empty());
  EXPECT_EQ(pair.crossing_count, 3u);
}

TEST(Invariant, MirrorRule) {
  for (auto d : {fixtures::d1(), fixtures::d2(), fixtures::d3()}) {
    auto p = invariant_pair(d), q = invariant_pair(mirror(d));
    EXPECT_EQ(q.delta, p.delta.invert_variable());
    EXPECT_EQ(q.rho1, -p.rho1);
  }
}

TEST(Invariant, SignIsAPrefactorOfR1) {
  auto d = fixtures::d3();
  auto g = green(d);
  Crossing c = d.crossings()[1];
  Crossing flipped = c;
  flipped.s = -c.s;
  EXPECT_EQ(r1_term(flipped, g, d).numerator, -r1_term(c, g, d).numerator);
}

TEST(Invariant, OddParityIsRejected) {
  auto d = UprightDiagram::with_consecutive_labels({{1, 2, 1}});
  EXPECT_THROW(alexander(d), InvariantError);
}

TEST(Invariant, NonConsecutiveLabelsGiveSameAnswer) {
  auto d = fixtures::d3();
  std::vector<Label> edges;
  for (Label e : d.edges()) edges.push_back(4 * e + 1);
  std::vector<Crossing> cs;
  for (auto c : d.crossings()) cs.push_back({c.s, 4 * c.i + 1, 4 * c.j + 1});
  UprightDiagram spaced(edges, cs, {{17, -1}});
  validate(spaced);
  EXPECT_EQ(invariant_pair(spaced).rho1, invariant_pair(d).rho1);
}
