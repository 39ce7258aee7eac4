#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ocsep/common.hpp"
#include "ocsep/field.hpp"

namespace ocsep {

// Dense row-major matrix over an exact field. The field object travels with
// the matrix so GF(p) values always know their modulus.
template <typename F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)),
        rows_(rows),
        cols_(cols),
        data_(rows * cols, field_.zero()) {}

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.field().one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Elem* row(std::size_t i) { return data_.data() + i * cols_; }
  const Elem* row(std::size_t i) const { return data_.data() + i * cols_; }

  bool is_zero() const {
    for (const Elem& e : data_)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  bool is_square() const { return rows_ == cols_; }

  Elem trace() const {
    internal_check(is_square(), "trace of non-square matrix");
    Elem t = field_.zero();
    for (std::size_t i = 0; i < rows_; ++i) t = field_.add(t, at(i, i));
    return t;
  }

  Matrix transpose() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Matrix block(std::size_t i0, std::size_t j0, std::size_t r,
               std::size_t c) const {
    internal_check(i0 + r <= rows_ && j0 + c <= cols_, "block out of range");
    Matrix b(field_, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) b.at(i, j) = at(i0 + i, j0 + j);
    return b;
  }

  void set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
    internal_check(i0 + b.rows() <= rows_ && j0 + b.cols() <= cols_,
                   "set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        at(i0 + i, j0 + j) = b.at(i, j);
  }

  // Entries in row-major order; the layout other modules rely on when a
  // matrix family is reinterpreted as a vector.
  std::vector<Elem> flatten() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  F field_;
  std::size_t rows_, cols_;
  std::vector<Elem> data_;
};

// y += c * x over one row. GF(p) rows dispatch to the runtime-selected
// kernel backend; rational rows stay scalar.
template <typename F>
void row_axpy(const F& field, typename F::Elem* y, const typename F::Elem* x,
              std::size_t n, const typename F::Elem& c) {
  if constexpr (F::is_rational) {
    if (field.is_zero(c)) return;
    for (std::size_t i = 0; i < n; ++i)
      y[i] = field.add(y[i], field.mul(c, x[i]));
  } else {
    fpk::active_kernels().axpy(y, x, n, c, field.modulus());
  }
}

template <typename F>
void row_scale(const F& field, typename F::Elem* y, std::size_t n,
               const typename F::Elem& c) {
  if constexpr (F::is_rational) {
    for (std::size_t i = 0; i < n; ++i) y[i] = field.mul(y[i], c);
  } else {
    fpk::active_kernels().scale(y, n, c, field.modulus());
  }
}

template <typename F>
Matrix<F> add(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix add: shape mismatch");
  Matrix<F> r = a;
  const F& field = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r.at(i, j) = field.add(a.at(i, j), b.at(i, j));
  return r;
}

template <typename F>
Matrix<F> sub(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix sub: shape mismatch");
  Matrix<F> r = a;
  const F& field = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r.at(i, j) = field.sub(a.at(i, j), b.at(i, j));
  return r;
}

template <typename F>
Matrix<F> scalar_mul(const typename F::Elem& c, const Matrix<F>& a) {
  Matrix<F> r = a;
  for (std::size_t i = 0; i < r.rows(); ++i)
    row_scale(r.field(), r.row(i), r.cols(), c);
  return r;
}

template <typename F>
Matrix<F> mul(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix mul: shape mismatch");
  const F& field = a.field();
  Matrix<F> c(field, a.rows(), b.cols());
  // Accumulate one scaled row of b at a time: contiguous, and the GF(p)
  // case runs through the vector kernels.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& f = a.at(i, k);
      if (field.is_zero(f)) continue;
      row_axpy(field, c.row(i), b.row(k), b.cols(), f);
    }
  }
  return c;
}

template <typename F>
Matrix<F> kron(const Matrix<F>& a, const Matrix<F>& b) {
  const F& field = a.field();
  Matrix<F> r(field, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& f = a.at(i, j);
      if (field.is_zero(f)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r.at(i * b.rows() + k, j * b.cols() + l) = field.mul(f, b.at(k, l));
    }
  return r;
}

template <typename F>
Matrix<F> direct_sum(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

// An m-tuple of n x n matrices over a common field: the objects whose orbit
// closures the rest of the library separates.
template <typename F>
struct MatTuple {
  F field;
  std::size_t n = 0;
  std::vector<Matrix<F>> mats;

  MatTuple(F f, std::size_t n_, std::vector<Matrix<F>> ms)
      : field(std::move(f)), n(n_), mats(std::move(ms)) {
    for (const auto& m : mats) {
      if (m.rows() != n || m.cols() != n)
        throw DimensionError("tuple entries must all be n x n");
      if (!(m.field() == field))
        throw InputError("tuple entries must share one field");
    }
  }

  std::size_t size() const { return mats.size(); }
  const Matrix<F>& operator[](std::size_t i) const { return mats[i]; }
};

}  // namespace ocsep
