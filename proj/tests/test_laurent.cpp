#include "rho1/laurent.hpp"

#include <gtest/gtest.h>

#include <random>

using rho1::Integer;
using rho1::IntLaurent;
using rho1::LaurentPoly;
using rho1::Rational;

namespace {

LaurentPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> low(-4, 4), len(0, 5), c(-5, 5);
  std::map<int, Rational> terms;
  int lo = low(rng), n = len(rng);
  for (int k = 0; k < n; ++k) terms[lo + k] = Rational(c(rng), 1 + (k % 3));
  return LaurentPoly::from_terms(terms);
}

const LaurentPoly T = LaurentPoly::T();

}  // namespace

TEST(Laurent, CanonicalString) {
  LaurentPoly rho = -T.shift(1) + 2 * T - 2 + 2 * T.shift(-2) - T.shift(-3);
  EXPECT_EQ(rho.str(), "-T^-2+2*T^-1-2+2*T-T^2");
  EXPECT_EQ(LaurentPoly().str(), "0");
  EXPECT_EQ((Rational(1, 2) * T).str(), "1/2*T");
  EXPECT_EQ(rho1::parse_laurent(rho.str()), rho);
  EXPECT_EQ(rho1::parse_laurent("T^-1-1/2"), T.shift(-2) - Rational(1, 2));
}

TEST(Laurent, ZeroIsTrimmed) {
  LaurentPoly p = T - T;
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p, LaurentPoly());
  LaurentPoly q = (T + 1) - T;
  EXPECT_EQ(q.low_degree(), 0);
  EXPECT_EQ(q.span(), 0);
}

TEST(Laurent, RingAxiomsRandom) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, LaurentPoly());
    EXPECT_EQ(a * LaurentPoly(1), a);
  }
}

TEST(Laurent, EvaluationIsHomomorphism) {
  std::mt19937 rng(11);
  const Rational t(9, 10);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_poly(rng), b = random_poly(rng);
    EXPECT_EQ((a * b).eval(t), a.eval(t) * b.eval(t));
    EXPECT_EQ((a + b).eval(t), a.eval(t) + b.eval(t));
  }
  // 1 - T + T^2 at 9/10, computed by hand
  EXPECT_EQ((LaurentPoly(1) - T + T * T).eval(t), Rational(91, 100));
  EXPECT_DOUBLE_EQ((T.shift(-2) + 1).eval(0.5), 3.0);
  EXPECT_THROW(T.shift(-2).eval(Rational(0)), std::domain_error);
}

TEST(Laurent, ExactDivision) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_poly(rng), b = random_poly(rng);
    if (b.is_zero()) continue;
    EXPECT_EQ(divide_exact(a * b, b), a);
  }
  IntLaurent x = IntLaurent::T() - 1;
  IntLaurent sq = x * x * (IntLaurent::T() + 1);
  EXPECT_TRUE(divides(x * x, sq));
  EXPECT_FALSE(divides(x * x * x, sq));
  EXPECT_THROW(divide_exact(IntLaurent::T() + 1, IntLaurent(2)), rho1::InexactDivision);
}

TEST(Laurent, VariableInversionAndPalindromes) {
  LaurentPoly delta = T - 1 + T.shift(-2);
  EXPECT_TRUE(delta.is_palindromic());
  EXPECT_FALSE((T - 1).is_palindromic());
  EXPECT_EQ(T.invert_variable(), T.shift(-2));
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_poly(rng), b = random_poly(rng);
    EXPECT_EQ((a * b).invert_variable(), a.invert_variable() * b.invert_variable());
  }
}

TEST(Laurent, CastBetweenRings) {
  IntLaurent p = IntLaurent::T(2) * Integer(3) - 4;
  LaurentPoly q = p.cast<Rational>();
  EXPECT_TRUE(q.has_integral_coefficients());
  EXPECT_EQ(q.cast<Integer>(), p);
  EXPECT_FALSE((q * Rational(1, 2)).has_integral_coefficients());
}
