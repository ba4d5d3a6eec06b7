#pragma once

// Square matrices over Laurent polynomials, with fraction-free (Bareiss)
// determinant and scaled inverse.

#include "rho1/laurent.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rho1 {

template <class C>
class PolyMatrix {
 public:
  using entry_type = Laurent<C>;

  PolyMatrix() = default;
  explicit PolyMatrix(std::size_t size) : size_(size), entries_(size * size) {}

  static PolyMatrix identity(std::size_t size) {
    PolyMatrix m(size);
    for (std::size_t k = 0; k < size; ++k) m(k, k) = entry_type(1);
    return m;
  }

  std::size_t size() const { return size_; }
  entry_type& operator()(std::size_t r, std::size_t c) { return entries_[r * size_ + c]; }
  const entry_type& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * size_ + c];
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.size_ != b.size_) throw std::invalid_argument("matrix size mismatch");
    PolyMatrix r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i)
      for (std::size_t k = 0; k < a.size_; ++k) {
        const auto& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < a.size_; ++j)
          if (!b(k, j).is_zero()) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend PolyMatrix operator*(const entry_type& s, PolyMatrix m) {
    for (auto& e : m.entries_) e = s * e;
    return m;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.size_ == b.size_ && a.entries_ == b.entries_;
  }

  template <class D>
  PolyMatrix<D> cast() const {
    PolyMatrix<D> r(size_);
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j) r(i, j) = (*this)(i, j).template cast<D>();
    return r;
  }

 private:
  std::size_t size_ = 0;
  std::vector<entry_type> entries_;
};

/// Exact inverse as numerators over one common denominator: M * H = d * I = H * M.
template <class C>
struct GreenMatrix {
  PolyMatrix<C> numerators;
  Laurent<C> denominator;
};

struct SingularMatrix : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

/// (p*x - a*b) / prev, exactly.
template <class C>
Laurent<C> bareiss_update(const Laurent<C>& p, const Laurent<C>& x, const Laurent<C>& a,
                          const Laurent<C>& b, const Laurent<C>& prev) {
  Laurent<C> num = a.is_zero() || b.is_zero() ? p * x : p * x - a * b;
  if (prev.is_monomial() && prev.coeff(prev.low_degree()) == C(1))
    return num.shift(-prev.low_degree());
  return divide_exact(num, prev);
}

/// Row in [k, rows) with a nonzero entry in column k, preferring the smallest span.
template <class C>
std::size_t choose_pivot(const std::vector<std::vector<Laurent<C>>>& rows, std::size_t k) {
  std::size_t best = rows.size();
  for (std::size_t r = k; r < rows.size(); ++r) {
    const auto& e = rows[r][k];
    if (e.is_zero()) continue;
    if (best == rows.size() || e.span() < rows[best][k].span()) best = r;
  }
  return best;
}

}  // namespace detail

/// Exact determinant by fraction-free elimination.
template <class C>
Laurent<C> det_fraction_free(const PolyMatrix<C>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Laurent<C>(1);
  std::vector<std::vector<Laurent<C>>> a(n, std::vector<Laurent<C>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  Laurent<C> prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = detail::choose_pivot(a, k);
    if (p == n) return Laurent<C>();
    if (p != k) {
      std::swap(a[p], a[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a[i][j].is_zero() && a[i][k].is_zero()) continue;
        a[i][j] = detail::bareiss_update(a[k][k], a[i][j], a[i][k], a[k][j], prev);
      }
      a[i][k] = Laurent<C>();
    }
    prev = a[k][k];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

/// Exact scaled inverse via one fraction-free Gauss-Jordan pass over [M | I].
/// The returned denominator equals det_fraction_free(m).
template <class C>
GreenMatrix<C> scaled_inverse(const PolyMatrix<C>& m, const std::string& name = "matrix") {
  const std::size_t n = m.size();
  if (n == 0) return {PolyMatrix<C>(0), Laurent<C>(1)};
  const std::size_t w = 2 * n;
  std::vector<std::vector<Laurent<C>>> a(n, std::vector<Laurent<C>>(w));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = Laurent<C>(1);
  }
  Laurent<C> prev(1);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = detail::choose_pivot(a, k);
    if (p == n) throw SingularMatrix(name + " is singular (zero determinant)");
    if (p != k) {
      std::swap(a[p], a[k]);
      negate = !negate;
    }
    const auto& pivot_row = a[k];
    const Laurent<C> pivot = pivot_row[k];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      auto& row = a[i];
      const Laurent<C> factor = row[k];
      for (std::size_t j = 0; j < w; ++j) {
        if (j == k) continue;
        if (row[j].is_zero() && (factor.is_zero() || pivot_row[j].is_zero())) continue;
        row[j] = detail::bareiss_update(pivot, row[j], factor, pivot_row[j], prev);
      }
      row[k] = Laurent<C>();
    }
    prev = pivot;
  }
  // Now every diagonal entry is D = det of the row-permuted matrix and the right
  // block is D * M^{-1}.
  GreenMatrix<C> g{PolyMatrix<C>(n), negate ? -prev : prev};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      g.numerators(i, j) = negate ? -a[i][n + j] : std::move(a[i][n + j]);
  return g;
}

}  // namespace rho1
