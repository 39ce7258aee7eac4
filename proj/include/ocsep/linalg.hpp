#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ocsep/common.hpp"
#include "ocsep/matrix.hpp"

namespace ocsep {

namespace detail {

// Fraction-free Bareiss elimination on an integer matrix. Exact divisions
// stay exact across row swaps because each 2x2 determinant identity is
// unaffected by the swap sign, which is tracked separately.
inline mpz_class bareiss_det(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(a[r][k]) == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : mpz_class(-a[n - 1][n - 1]);
}

}  // namespace detail

// Determinant. Rational matrices are scaled row-wise to integers and run
// through Bareiss (no intermediate fraction blow-up); GF(p) matrices use
// plain elimination on the vector kernels.
template <typename F>
typename F::Elem det(const Matrix<F>& m) {
  if (!m.is_square()) throw DimensionError("det of non-square matrix");
  const F& field = m.field();
  const std::size_t n = m.rows();
  if (n == 0) return field.one();

  if constexpr (F::is_rational) {
    std::vector<std::vector<mpz_class>> z(n, std::vector<mpz_class>(n));
    mpz_class scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
      mpz_class l = 1;
      for (std::size_t j = 0; j < n; ++j)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
                m.at(i, j).get_den().get_mpz_t());
      for (std::size_t j = 0; j < n; ++j) {
        mpq_class s = m.at(i, j) * mpq_class(l);
        z[i][j] = s.get_num();
      }
      scale *= l;
    }
    return make_rational(detail::bareiss_det(std::move(z)), scale);
  } else {
    Matrix<F> a = m;
    typename F::Elem d = field.one();
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t r = k;
      while (r < n && field.is_zero(a.at(r, k))) ++r;
      if (r == n) return field.zero();
      if (r != k) {
        for (std::size_t j = 0; j < n; ++j)
          std::swap(a.at(k, j), a.at(r, j));
        negate = !negate;
      }
      const auto pivot = a.at(k, k);
      d = field.mul(d, pivot);
      const auto pinv = field.inv(pivot);
      for (std::size_t i = k + 1; i < n; ++i) {
        auto f = field.neg(field.mul(a.at(i, k), pinv));
        if (field.is_zero(f)) continue;
        row_axpy(field, a.row(i) + k, a.row(k) + k, n - k, f);
      }
    }
    return negate ? field.neg(d) : d;
  }
}

// Characteristic polynomial det(tI - M) by the Berkowitz algorithm:
// division-free, so it is valid over every field including small
// characteristic. Returns c[0..n] with c[0] = 1 and
// det(tI - M) = sum_j c[j] t^(n-j).
template <typename F>
std::vector<typename F::Elem> charpoly(const Matrix<F>& m) {
  if (!m.is_square()) throw DimensionError("charpoly of non-square matrix");
  const F& field = m.field();
  const std::size_t n = m.rows();
  std::vector<typename F::Elem> c{field.one()};
  if (n == 0) return c;
  c.push_back(field.neg(m.at(0, 0)));
  for (std::size_t i = 1; i < n; ++i) {
    // Leading (i+1)x(i+1) block, partitioned around its last row/column.
    std::vector<typename F::Elem> q(i + 2, field.zero());
    q[0] = field.one();
    q[1] = field.neg(m.at(i, i));
    std::vector<typename F::Elem> rm(i);  // running row R * M^(j-2)
    for (std::size_t j = 0; j < i; ++j) rm[j] = m.at(i, j);
    for (std::size_t j = 2; j <= i + 1; ++j) {
      typename F::Elem dot = field.zero();
      for (std::size_t t = 0; t < i; ++t)
        dot = field.add(dot, field.mul(rm[t], m.at(t, i)));
      q[j] = field.neg(dot);
      if (j == i + 1) break;
      std::vector<typename F::Elem> next(i, field.zero());
      for (std::size_t t = 0; t < i; ++t) {
        if (field.is_zero(rm[t])) continue;
        for (std::size_t u = 0; u < i; ++u)
          next[u] = field.add(next[u], field.mul(rm[t], m.at(t, u)));
      }
      rm = std::move(next);
    }
    std::vector<typename F::Elem> nc(i + 2, field.zero());
    for (std::size_t k = 0; k <= i + 1; ++k)
      for (std::size_t j = 0; j <= k && j <= i; ++j)
        nc[k] = field.add(nc[k], field.mul(q[k - j], c[j]));
    c = std::move(nc);
  }
  return c;
}

// Coefficient sequence sigma_0..sigma_n of det(Id + tM); sigma_0 is always
// 1, sigma_1 the trace and sigma_n the determinant. Equivalently
// det(tI - M) = sum_j (-1)^j sigma_j t^(n-j).
template <typename F>
std::vector<typename F::Elem> charpoly_sigma(const Matrix<F>& m) {
  const F& field = m.field();
  auto c = charpoly(m);
  std::vector<typename F::Elem> s;
  s.reserve(c.size());
  s.push_back(field.one());
  for (std::size_t j = 1; j < c.size(); ++j)
    s.push_back(j % 2 == 1 ? field.neg(c[j]) : c[j]);
  return s;
}

// Adjugate, division-free: explicit cofactors for tiny sizes, otherwise the
// Cayley-Hamilton tail Adj(M) = (-1)^(n-1) (M^(n-1) + c1 M^(n-2) + ... +
// c_(n-1) I). Defined for singular M too, which the witness lifting relies
// on.
template <typename F>
Matrix<F> adjugate(const Matrix<F>& m) {
  if (!m.is_square()) throw DimensionError("adjugate of non-square matrix");
  const F& field = m.field();
  const std::size_t n = m.rows();
  if (n == 0) return m;
  if (n == 1) return Matrix<F>::identity(field, 1);
  if (n == 2) {
    Matrix<F> a(field, 2, 2);
    a.at(0, 0) = m.at(1, 1);
    a.at(0, 1) = field.neg(m.at(0, 1));
    a.at(1, 0) = field.neg(m.at(1, 0));
    a.at(1, 1) = m.at(0, 0);
    return a;
  }
  auto c = charpoly(m);
  Matrix<F> b = Matrix<F>::identity(field, n);
  for (std::size_t i = 1; i < n; ++i) {
    b = mul(m, b);
    for (std::size_t j = 0; j < n; ++j)
      b.at(j, j) = field.add(b.at(j, j), c[i]);
  }
  if (n % 2 == 0) b = scalar_mul(field.neg(field.one()), b);
  return b;
}

template <typename F>
Matrix<F> inverse(const Matrix<F>& m) {
  if (!m.is_square()) throw DimensionError("inverse of non-square matrix");
  const F& field = m.field();
  const std::size_t n = m.rows();
  Matrix<F> a = m;
  Matrix<F> inv = Matrix<F>::identity(field, n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && field.is_zero(a.at(r, k))) ++r;
    if (r == n) throw SingularMatrixError("matrix is singular");
    if (r != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a.at(k, j), a.at(r, j));
        std::swap(inv.at(k, j), inv.at(r, j));
      }
    }
    const auto pinv = field.inv(a.at(k, k));
    row_scale(field, a.row(k), n, pinv);
    row_scale(field, inv.row(k), n, pinv);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      auto f = a.at(i, k);
      if (field.is_zero(f)) continue;
      f = field.neg(f);
      row_axpy(field, a.row(i), a.row(k), n, f);
      row_axpy(field, inv.row(i), inv.row(k), n, f);
    }
  }
  return inv;
}

template <typename F>
bool is_invertible(const Matrix<F>& m) {
  return !m.field().is_zero(det(m));
}

// Incremental reduced row echelon state over fixed-length coordinate
// vectors. Pivots are the first nonzero coordinate of each stored row, so
// insertion order does not change the subspace or the reduction of later
// vectors.
template <typename F>
class Echelon {
 public:
  using Vec = std::vector<typename F::Elem>;

  Echelon(F field, std::size_t width)
      : field_(std::move(field)), width_(width) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t width() const { return width_; }

  // Remainder of v modulo the current row space.
  Vec reduce(Vec v) const {
    internal_check(v.size() == width_, "echelon vector width mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& c = v[pivots_[r]];
      if (field_.is_zero(c)) continue;
      row_axpy(field_, v.data(), rows_[r].data(), width_, field_.neg(c));
    }
    return v;
  }

  bool contains(Vec v) const {
    v = reduce(std::move(v));
    for (const auto& e : v)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  // Returns true (and grows the basis) when v is independent of the rows
  // already present.
  bool insert(Vec v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < width_ && field_.is_zero(v[p])) ++p;
    if (p == width_) return false;
    row_scale(field_, v.data(), width_, field_.inv(v[p]));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& c = rows_[r][p];
      if (field_.is_zero(c)) continue;
      row_axpy(field_, rows_[r].data(), v.data(), width_, field_.neg(c));
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, p);
    return true;
  }

 private:
  F field_;
  std::size_t width_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace ocsep
