#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "ocsep/common.hpp"
#include "ocsep/linalg.hpp"
#include "ocsep/matrix.hpp"
#include "ocsep/words.hpp"

namespace ocsep {

// --- invariant evaluators ---------------------------------------------

// T_w: trace of the word product.
template <typename F>
typename F::Elem eval_T(const Word& w, const MatTuple<F>& x) {
  return eval_word(x, w).trace();
}

// sigma_{j,w}: j-th characteristic coefficient of the word product,
// normalized so sigma_1 is the trace and sigma_n the determinant.
template <typename F>
typename F::Elem eval_sigma(std::size_t j, const Word& w,
                            const MatTuple<F>& x) {
  if (j < 1 || j > x.n)
    throw InputError("sigma index " + std::to_string(j) +
                     " outside 1.." + std::to_string(x.n));
  return charpoly_sigma(eval_word(x, w))[j];
}

// f_T = det(T_1 (x) X_1 + ... + T_m (x) X_m), the linear determinant
// semi-invariant attached to a d x d coefficient tuple T.
template <typename F>
typename F::Elem eval_fT(const MatTuple<F>& t, const MatTuple<F>& x) {
  if (t.size() != x.size())
    throw DimensionError("f_T: coefficient tuple arity " +
                         std::to_string(t.size()) + " vs input arity " +
                         std::to_string(x.size()));
  const F& field = x.field;
  const std::size_t dn = t.n * x.n;
  Matrix<F> l(field, dn, dn);
  for (std::size_t k = 0; k < t.size(); ++k)
    l = add(l, kron(t[k], x[k]));
  return det(l);
}

// --- tuple constructions ----------------------------------------------

// X^[d]: the m*d^2 matrices X_i (x) E_{j,k} of size nd, ordered
// lexicographically in (i, j, k). Linear semi-invariants of the blow-up
// encode degree-dn semi-invariants of X.
template <typename F>
MatTuple<F> blow_up(const MatTuple<F>& x, std::size_t d) {
  if (d < 1) throw InputError("blow-up size must be >= 1");
  const F& field = x.field;
  std::vector<Matrix<F>> out;
  out.reserve(x.size() * d * d);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        Matrix<F> e(field, d, d);
        e.at(j, k) = field.one();
        out.push_back(kron(x[i], e));
      }
    }
  }
  return MatTuple<F>(field, x.n * d, std::move(out));
}

// P * X: the GL_m change of generators, (P * X)_i = sum_j p_{i,j} X_j.
template <typename F>
MatTuple<F> star_action(const Matrix<F>& p, const MatTuple<F>& x) {
  if (p.rows() != x.size() || p.cols() != x.size())
    throw DimensionError("star action needs an m x m matrix");
  if (!is_invertible(p)) throw InputError("star action matrix is singular");
  const F& field = x.field;
  std::vector<Matrix<F>> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Matrix<F> acc(field, x.n, x.n);
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (field.is_zero(p.at(i, j))) continue;
      acc = add(acc, scalar_mul(p.at(i, j), x[j]));
    }
    out.push_back(std::move(acc));
  }
  return MatTuple<F>(field, x.n, std::move(out));
}

// Prepend the identity: the embedding along which conjugation-equivalence
// of X matches left-right equivalence of (Id, X).
template <typename F>
MatTuple<F> phi(const MatTuple<F>& x) {
  std::vector<Matrix<F>> out;
  out.reserve(x.size() + 1);
  out.push_back(Matrix<F>::identity(x.field, x.n));
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i]);
  return MatTuple<F>(x.field, x.n, std::move(out));
}

// Invertible matrix whose first row is v: rows 2.. are the standard basis
// vectors other than the first coordinate where v is nonzero, so the
// determinant is that coordinate up to sign.
template <typename F>
Matrix<F> complete_to_invertible(const F& field,
                                 const std::vector<typename F::Elem>& v) {
  const std::size_t m = v.size();
  std::size_t j0 = 0;
  while (j0 < m && field.is_zero(v[j0])) ++j0;
  if (j0 == m) throw InputError("cannot complete the zero vector");
  Matrix<F> p(field, m, m);
  for (std::size_t j = 0; j < m; ++j) p.at(0, j) = v[j];
  std::size_t r = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == j0) continue;
    p.at(r++, i) = field.one();
  }
  return p;
}

// --- witnesses ----------------------------------------------------------

struct TraceWitness {
  Word w;
};

struct SigmaWitness {
  std::size_t j = 1;
  Word w;
};

// A conjugation invariant usable inside a composed left-right witness.
using InnerWitness = std::variant<TraceWitness, SigmaWitness>;

inline std::uint64_t inner_degree(const InnerWitness& f) {
  if (const auto* t = std::get_if<TraceWitness>(&f)) return t->w.size();
  const auto& s = std::get<SigmaWitness>(f);
  return static_cast<std::uint64_t>(s.j) * s.w.size();
}

template <typename F>
struct LinDetWitness {
  MatTuple<F> t;  // d x d coefficient tuple; t.n is the d in f_T's degree dn
};

// The step-3 trace-back witness: evaluate the inner conjugation invariant
// on (Adj(W_1) W_2, ..., Adj(W_1) W_s) where W = P * X^[d]. Using the
// adjugate rather than the inverse keeps it a genuine polynomial, at the
// cost of a common factor det(W_1)^deg on both sides of any comparison.
template <typename F>
struct ComposedLRWitness {
  Matrix<F> p;  // invertible, size m d^2
  std::size_t d = 1;
  InnerWitness inner;
};

template <typename F>
struct Witness {
  std::variant<TraceWitness, SigmaWitness, LinDetWitness<F>,
               ComposedLRWitness<F>>
      v;
  std::uint64_t degree = 0;  // total degree in the original n x n entries
};

template <typename F>
Witness<F> make_trace_witness(Word w) {
  std::uint64_t deg = w.size();
  return Witness<F>{TraceWitness{std::move(w)}, deg};
}

template <typename F>
Witness<F> make_sigma_witness(std::size_t j, Word w) {
  std::uint64_t deg = static_cast<std::uint64_t>(j) * w.size();
  return Witness<F>{SigmaWitness{j, std::move(w)}, deg};
}

template <typename F>
Witness<F> make_lindet_witness(MatTuple<F> t, std::size_t n) {
  std::uint64_t deg = static_cast<std::uint64_t>(t.n) * n;
  return Witness<F>{LinDetWitness<F>{std::move(t)}, deg};
}

template <typename F>
Witness<F> make_composed_witness(Matrix<F> p, std::size_t d, InnerWitness f,
                                 std::size_t n) {
  std::uint64_t deg = inner_degree(f) * n * d;
  return Witness<F>{ComposedLRWitness<F>{std::move(p), d, std::move(f)}, deg};
}

// Pre-image construction: a conjugation invariant f over m letters becomes
// the left-right invariant f(Adj(Y_1) Y_2, ..., Adj(Y_1) Y_{m+1}) over m+1
// letters, with f_lift(Id, X) = f(X).
template <typename F>
Witness<F> tilde_lift(const F& field, const InnerWitness& f, std::size_t m,
                      std::size_t n) {
  return make_composed_witness<F>(Matrix<F>::identity(field, m + 1), 1, f, n);
}

template <typename F>
typename F::Elem eval_inner(const F&, const InnerWitness& f,
                            const MatTuple<F>& x) {
  if (const auto* t = std::get_if<TraceWitness>(&f)) return eval_T(t->w, x);
  const auto& s = std::get<SigmaWitness>(f);
  return eval_sigma(s.j, s.w, x);
}

template <typename F>
typename F::Elem eval_witness(const Witness<F>& w, const MatTuple<F>& x) {
  const F& field = x.field;
  if (const auto* t = std::get_if<TraceWitness>(&w.v)) return eval_T(t->w, x);
  if (const auto* s = std::get_if<SigmaWitness>(&w.v))
    return eval_sigma(s->j, s->w, x);
  if (const auto* l = std::get_if<LinDetWitness<F>>(&w.v))
    return eval_fT(l->t, x);
  const auto& c = std::get<ComposedLRWitness<F>>(w.v);
  MatTuple<F> y = blow_up(x, c.d);
  if (c.p.rows() != y.size())
    throw DimensionError("composed witness size " + std::to_string(c.p.rows()) +
                         " does not match blow-up arity " +
                         std::to_string(y.size()));
  MatTuple<F> wt = star_action(c.p, y);
  Matrix<F> a1 = adjugate(wt[0]);
  std::vector<Matrix<F>> args;
  args.reserve(wt.size() - 1);
  for (std::size_t i = 1; i < wt.size(); ++i) args.push_back(mul(a1, wt[i]));
  MatTuple<F> arg_tuple(field, wt[0].rows(), std::move(args));
  return eval_inner(field, c.inner, arg_tuple);
}

}  // namespace ocsep
