#pragma once

// The matrix A, the Alexander polynomial, the Green function and rho_1.
//
// All heavy lifting happens over the integers: with d = det A and H the scaled
// inverse (A H = d I), every g entry is H / d, and
//   2 rho_1 = T^-(phi+w) * [ sum_c s (2 H_ji (H_j+j + H_jj+ - H_ij) - 2 H_ii (H_jj+ - d) - d^2)
//                           - sum_k phi_k (2 d H_kk - d^2) ],
// so no rational functions are ever formed.

#include "rho1/planar.hpp"
#include "rho1/polymat.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace rho1 {

/// An internal consistency check failed (a bug or an invalid diagram slipped through).
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

struct InvariantPair {
  LaurentPoly delta;
  LaurentPoly rho1;
  int writhe = 0;
  int total_rotation = 0;
  std::size_t crossing_count = 0;
  std::vector<std::string> warnings;  // empirical properties that failed to hold
};

/// numerator / denominator, both over the integers.
struct Fraction {
  IntLaurent numerator;
  IntLaurent denominator;
};

inline PolyMatrix<Integer> build_A(const UprightDiagram& d) {
  auto a = PolyMatrix<Integer>::identity(d.edge_count());
  for (const auto& c : d.crossings()) {
    std::size_t i = d.index_of(c.i), j = d.index_of(c.j);
    std::size_t ip = d.index_of(d.successor(c.i)), jp = d.index_of(d.successor(c.j));
    IntLaurent ts = IntLaurent::T(c.s);
    a(i, ip) -= ts;
    a(i, jp) += ts - IntLaurent(1);
    a(j, jp) -= IntLaurent(1);
  }
  return a;
}

/// Exponent (-phi - w) / 2, asserting the parity condition.
inline int normalization_exponent(const UprightDiagram& d) {
  int sum = d.total_rotation() + d.writhe();
  if (sum % 2 != 0)
    throw InvariantError("phi + w = " + std::to_string(sum) +
                         " is odd; Alexander normalization needs half-integer powers");
  return -sum / 2;
}

inline LaurentPoly alexander(const UprightDiagram& d) {
  int shift = normalization_exponent(d);
  return det_fraction_free(build_A(d)).shift(shift).cast<Rational>();
}

/// Scaled inverse of A with denominator det A.
inline GreenMatrix<Integer> green(const UprightDiagram& d) {
  try {
    return scaled_inverse(build_A(d), "A");
  } catch (const SingularMatrix& e) {
    throw InvariantError(std::string("Green function undefined: ") + e.what());
  }
}

namespace detail {

/// 2 d^2 R_1(c), with d = G.denominator.
inline IntLaurent r1_scaled(const Crossing& c, const GreenMatrix<Integer>& g,
                            const UprightDiagram& d) {
  const auto& H = g.numerators;
  const IntLaurent& det = g.denominator;
  std::size_t i = d.index_of(c.i), j = d.index_of(c.j);
  std::size_t jp = d.index_of(d.successor(c.j));
  IntLaurent inner = H(jp, j) + H(j, jp) - H(i, j);
  IntLaurent v = H(j, i) * inner * 2 - H(i, i) * (H(j, jp) - det) * 2 - det * det;
  return c.s > 0 ? v : -v;
}

/// 2 d^2 phi_k (g_kk - 1/2).
inline IntLaurent rotation_scaled(Label k, int phi, const GreenMatrix<Integer>& g,
                                  const UprightDiagram& d) {
  std::size_t x = d.index_of(k);
  const IntLaurent& det = g.denominator;
  return (det * g.numerators(x, x) * 2 - det * det) * Integer(phi);
}

}  // namespace detail

/// R_1(c) as a fraction with denominator 2 d^2.
inline Fraction r1_term(const Crossing& c, const GreenMatrix<Integer>& g, const UprightDiagram& d) {
  return {detail::r1_scaled(c, g, d), g.denominator * g.denominator * 2};
}

namespace detail {

inline IntLaurent rho1_from_green(const UprightDiagram& d, const GreenMatrix<Integer>& g) {
  IntLaurent total;
  for (const auto& c : d.crossings()) total += r1_scaled(c, g, d);
  for (auto [k, phi] : d.rotations()) total -= rotation_scaled(k, phi, g, d);
  int shift = 2 * normalization_exponent(d);
  IntLaurent twice = total.shift(shift);
  try {
    return divide_exact(twice, IntLaurent(2));
  } catch (const InexactDivision&) {
    throw InvariantError("rho_1 has non-integer coefficients: 2*rho_1 = " + twice.str());
  }
}

}  // namespace detail

inline LaurentPoly rho1(const UprightDiagram& d) {
  return detail::rho1_from_green(d, green(d)).cast<Rational>();
}

/// Computes (Delta, rho_1) from one elimination and checks the normalization.
inline InvariantPair invariant_pair(const UprightDiagram& d) {
  InvariantPair out;
  out.writhe = d.writhe();
  out.total_rotation = d.total_rotation();
  out.crossing_count = d.crossing_count();
  int shift = normalization_exponent(d);
  GreenMatrix<Integer> g = green(d);
  IntLaurent delta = g.denominator.shift(shift);
  if (delta.eval(Integer(1)) != 1)
    throw InvariantError("Delta(1) = " + delta.eval(Integer(1)).str() + ", expected 1");
  if (!delta.is_palindromic()) throw InvariantError("Delta is not palindromic: " + delta.str());
  IntLaurent r = detail::rho1_from_green(d, g);
  if (!r.is_palindromic()) out.warnings.push_back("rho1 is not palindromic");
  IntLaurent t1 = IntLaurent::T() - 1;
  if (!divides(t1 * t1, r)) out.warnings.push_back("rho1 is not divisible by (T-1)^2");
  out.delta = delta.cast<Rational>();
  out.rho1 = r.cast<Rational>();
  return out;
}

}  // namespace rho1
