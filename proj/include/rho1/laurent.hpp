#pragma once

// Exact Laurent polynomials in one variable T.
//
// Storage is an exponent offset plus a coefficient run, trimmed so that the
// lowest and highest stored coefficients are nonzero.  The zero polynomial is
// the empty run.  Two values compare equal iff their nonzero terms agree.

#include "rho1/coeff.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rho1 {

template <class C>
class Laurent {
 public:
  using coefficient_type = C;

  Laurent() = default;
  Laurent(int constant) { // NOLINT: implicit from small integers reads naturally in formulas
    if (constant != 0) coeffs_.emplace_back(constant);
  }
  Laurent(const C& constant) { // NOLINT
    if (!coeff::is_zero(constant)) coeffs_.push_back(constant);
  }

  static Laurent monomial(const C& c, int exponent) {
    Laurent p;
    if (!coeff::is_zero(c)) {
      p.low_ = exponent;
      p.coeffs_.push_back(c);
    }
    return p;
  }
  /// T^e
  static Laurent T(int exponent = 1) { return monomial(C(1), exponent); }

  static Laurent from_terms(const std::map<int, C>& terms) {
    Laurent p;
    if (terms.empty()) return p;
    p.low_ = terms.begin()->first;
    p.coeffs_.assign(static_cast<std::size_t>(terms.rbegin()->first - p.low_ + 1), C(0));
    for (const auto& [e, c] : terms) p.coeffs_[static_cast<std::size_t>(e - p.low_)] += c;
    p.trim();
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int low_degree() const { return low_; }
  int high_degree() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  /// high - low, or -1 for zero.
  int span() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::size_t term_count() const {
    return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(),
                                                  [](const C& c) { return !coeff::is_zero(c); }));
  }
  bool is_monomial() const { return coeffs_.size() == 1; }

  C coeff(int exponent) const {
    if (is_zero() || exponent < low_ || exponent > high_degree()) return C(0);
    return coeffs_[static_cast<std::size_t>(exponent - low_)];
  }

  /// Sparse view: calls f(exponent, coefficient) on nonzero terms, ascending.
  template <class F>
  void for_each_term(F&& f) const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (!coeff::is_zero(coeffs_[k])) f(low_ + static_cast<int>(k), coeffs_[k]);
  }
  std::map<int, C> terms() const {
    std::map<int, C> out;
    for_each_term([&](int e, const C& c) { out.emplace(e, c); });
    return out;
  }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Laurent& operator+=(const Laurent& b) { return accumulate(b, false); }
  Laurent& operator-=(const Laurent& b) { return accumulate(b, true); }
  Laurent& operator*=(const Laurent& b) { return *this = *this * b; }
  Laurent& operator*=(const C& s) {
    if (coeff::is_zero(s)) {
      coeffs_.clear();
      low_ = 0;
    } else {
      for (auto& c : coeffs_) c *= s;
    }
    return *this;
  }

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(Laurent a, const C& s) { return a *= s; }
  friend Laurent operator*(const C& s, Laurent a) { return a *= s; }
  friend Laurent operator*(Laurent a, int s) { return a *= C(s); }
  friend Laurent operator*(int s, Laurent a) { return a *= C(s); }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    if (a.is_zero() || b.is_zero()) return r;
    r.low_ = a.low_ + b.low_;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, C(0));
    for (std::size_t x = 0; x < a.coeffs_.size(); ++x) {
      const C& ax = a.coeffs_[x];
      if (coeff::is_zero(ax)) continue;
      for (std::size_t y = 0; y < b.coeffs_.size(); ++y)
        if (!coeff::is_zero(b.coeffs_[y])) r.coeffs_[x + y] += ax * b.coeffs_[y];
    }
    r.trim();
    return r;
  }

  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  /// Multiplication by T^k.
  Laurent shift(int k) const {
    Laurent r = *this;
    if (!r.is_zero()) r.low_ += k;
    return r;
  }

  /// Substitution T -> T^{-1}.
  Laurent invert_variable() const {
    Laurent r;
    if (is_zero()) return r;
    r.low_ = -high_degree();
    r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    return r;
  }

  /// Evaluation at a nonzero point of any field-like type V constructible from C.
  template <class V>
  V eval(const V& t) const {
    if (t == V(0)) throw std::domain_error("Laurent polynomial evaluated at zero");
    V acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + convert<V>(*it);
    return acc * power(t, low_);
  }

  /// Exact quotient a / b in the Laurent ring; throws InexactDivision otherwise.
  friend Laurent divide_exact(const Laurent& a, const Laurent& b) {
    if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
    Laurent q;
    if (a.is_zero()) return q;
    if (a.coeffs_.size() < b.coeffs_.size())
      throw InexactDivision("Laurent division leaves a remainder");
    if (b.coeffs_.size() == 1) {
      q.low_ = a.low_ - b.low_;
      q.coeffs_.reserve(a.coeffs_.size());
      for (const auto& c : a.coeffs_) q.coeffs_.push_back(coeff::exact_quotient(c, b.coeffs_[0]));
      return q;
    }
    std::vector<C> rem = a.coeffs_;
    const std::size_t nb = b.coeffs_.size();
    const std::size_t nq = rem.size() - nb + 1;
    q.low_ = a.low_ - b.low_;
    q.coeffs_.assign(nq, C(0));
    const C& lead = b.coeffs_.back();
    for (std::size_t k = nq; k-- > 0;) {
      C& top = rem[k + nb - 1];
      if (coeff::is_zero(top)) continue;
      C qk = coeff::exact_quotient(top, lead);
      for (std::size_t y = 0; y < nb; ++y)
        if (!coeff::is_zero(b.coeffs_[y])) rem[k + y] -= qk * b.coeffs_[y];
      q.coeffs_[k] = std::move(qk);
    }
    for (std::size_t k = 0; k + 1 < nb; ++k)
      if (!coeff::is_zero(rem[k])) throw InexactDivision("Laurent division leaves a remainder");
    q.trim();
    return q;
  }

  friend bool divides(const Laurent& b, const Laurent& a) {
    try {
      (void)divide_exact(a, b);
      return true;
    } catch (const InexactDivision&) {
      return false;
    }
  }

  /// Coefficient-ring change, e.g. Integer -> Rational.
  template <class D>
  Laurent<D> cast() const {
    std::map<int, D> t;
    for_each_term([&](int e, const C& c) { t.emplace(e, D(c)); });
    return Laurent<D>::from_terms(t);
  }

  bool has_integral_coefficients() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const C& c) { return coeff::is_integral(c); });
  }
  bool is_palindromic() const { return *this == invert_variable(); }

  /// Canonical text form, ascending exponents: -T^-2+2*T^-1-2+2*T-T^2
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for_each_term([&](int e, const C& c) {
      std::string cs = coeff::to_string(c);
      bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs.erase(0, 1);
      if (neg) out += '-';
      else if (!out.empty()) out += '+';
      if (e == 0) {
        out += cs;
        return;
      }
      if (cs != "1") out += cs + "*";
      out += "T";
      if (e != 1) out += "^" + std::to_string(e);
    });
    return out;
  }

 private:
  int low_ = 0;
  std::vector<C> coeffs_;

  template <class V>
  static V convert(const C& c) {
    if constexpr (std::is_same_v<V, double>) return static_cast<double>(c);
    else return V(c);
  }

  template <class V>
  static V power(const V& t, int e) {
    V base = e < 0 ? V(1) / t : t;
    unsigned n = static_cast<unsigned>(e < 0 ? -e : e);
    V r(1);
    while (n) {
      if (n & 1U) r = r * base;
      base = base * base;
      n >>= 1U;
    }
    return r;
  }

  Laurent& accumulate(const Laurent& b, bool subtract) {
    if (b.is_zero()) return *this;
    if (is_zero()) {
      *this = subtract ? -b : b;
      return *this;
    }
    const int lo = std::min(low_, b.low_);
    const int hi = std::max(high_degree(), b.high_degree());
    if (lo < low_) {
      coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), C(0));
      low_ = lo;
    }
    coeffs_.resize(static_cast<std::size_t>(hi - low_ + 1), C(0));
    const std::size_t off = static_cast<std::size_t>(b.low_ - low_);
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) {
      if (subtract) coeffs_[off + k] -= b.coeffs_[k];
      else coeffs_[off + k] += b.coeffs_[k];
    }
    trim();
    return *this;
  }

  void trim() {
    std::size_t first = 0;
    while (first < coeffs_.size() && coeff::is_zero(coeffs_[first])) ++first;
    if (first == coeffs_.size()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    std::size_t last = coeffs_.size();
    while (coeff::is_zero(coeffs_[last - 1])) --last;
    coeffs_.erase(coeffs_.begin() + static_cast<std::ptrdiff_t>(last), coeffs_.end());
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
    low_ += static_cast<int>(first);
  }
};

using LaurentPoly = Laurent<Rational>;
using IntLaurent = Laurent<Integer>;

/// Parses the canonical text form (and close variants with spaces, "T^1",
/// explicit "1*T").  Throws std::invalid_argument on malformed input.
inline LaurentPoly parse_laurent(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty polynomial text");
  std::map<int, Rational> terms;
  std::size_t pos = 0;
  auto fail = [&](const char* why) {
    throw std::invalid_argument(std::string("malformed polynomial at offset ") +
                                std::to_string(pos) + ": " + why);
  };
  auto read_int = [&](std::string& digits) {
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    digits = s.substr(start, pos - start);
    return pos > start && std::isdigit(static_cast<unsigned char>(digits.back()));
  };
  while (pos < s.size()) {
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') {
      neg = s[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      fail("expected '+' or '-'");
    }
    Rational c(1);
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::string num;
      read_int(num);
      std::string lit = num;
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        std::string den;
        if (!read_int(den)) fail("bad denominator");
        lit += "/" + den;
      }
      c = coeff::parse_rational(lit);
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    int e = 0;
    if (pos < s.size() && s[pos] == 'T') {
      ++pos;
      e = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::string ex;
        if (!read_int(ex)) fail("bad exponent");
        e = std::stoi(ex);
      }
    } else if (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
      fail("unexpected character");
    }
    terms[e] += neg ? -c : c;
  }
  std::map<int, Rational> nz;
  for (auto& [e, c] : terms)
    if (!c.is_zero()) nz.emplace(e, c);
  return LaurentPoly::from_terms(nz);
}

}  // namespace rho1
