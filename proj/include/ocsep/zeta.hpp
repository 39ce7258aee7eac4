#pragma once

#include <cstdint>
#include <vector>

#include "ocsep/invariants.hpp"
#include "ocsep/linalg.hpp"
#include "ocsep/matrix.hpp"
#include "ocsep/rng.hpp"

namespace ocsep {

// L_T(X) = sum_k T_k (x) X_k, the linear pencil whose determinant is f_T.
template <typename F>
Matrix<F> op_L(const MatTuple<F>& t, const MatTuple<F>& x) {
  if (t.size() != x.size())
    throw DimensionError("pencil: coefficient arity vs input arity mismatch");
  Matrix<F> l(x.field, t.n * x.n, t.n * x.n);
  for (std::size_t k = 0; k < t.size(); ++k)
    l = add(l, kron(t[k], x[k]));
  return l;
}

// M_T(X) = Adj(L_T(X)): a d x d grid of n x n blocks M_{i,j}, each entry a
// polynomial of degree dn-1 in the entries of X.
template <typename F>
Matrix<F> op_M(const MatTuple<F>& t, const MatTuple<F>& x) {
  return adjugate(op_L(t, x));
}

// zeta(X): the m d^2 matrices X_k M_{i,j}(X), ordered lexicographically in
// (i, j, k). Conjugation invariants of zeta(X) become left-right
// invariants of X.
template <typename F>
MatTuple<F> zeta_map(const MatTuple<F>& t, const MatTuple<F>& x) {
  const std::size_t d = t.n, n = x.n, m = x.size();
  Matrix<F> big = op_M(t, x);
  std::vector<Matrix<F>> out;
  out.reserve(m * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < m; ++k)
        out.push_back(mul(x[k], big.block(i * n, j * n, n, n)));
  return MatTuple<F>(x.field, n, std::move(out));
}

// N(X) = (sum_l U_l (x) X_l) (Id_k (x) M_T(X)) together with the
// coefficient tensor lambda writing each n x n block of N as a linear
// combination of the zeta components, so that
// det(assemble(lambda, zeta(X))) = det(N(X)) = f_U(X) det(M_T(X))^k.
template <typename F>
struct NFactorization {
  Matrix<F> n_mat;       // N(X), size d*k*n
  std::size_t d = 1;     // coefficient size of T
  std::size_t k = 1;     // U's size is d*k
  std::size_t m = 0;     // tuple arity
  std::size_t base = 0;  // n, the size of the X_l
  // lambda[p][q][(i*d+j)*m + l]: coefficient of zeta component (i,j,l) in
  // block (p,q) of N.
  std::vector<std::vector<std::vector<typename F::Elem>>> lambda;
};

template <typename F>
NFactorization<F> build_N(const MatTuple<F>& u, const MatTuple<F>& t,
                          const MatTuple<F>& x) {
  if (u.size() != t.size() || t.size() != x.size())
    throw DimensionError("N factorization: tuple arities differ");
  const std::size_t d = t.n, n = x.n, m = x.size();
  if (d == 0 || u.n % d != 0)
    throw DimensionError("N factorization: U size must be a multiple of d");
  const std::size_t k = u.n / d;
  const F& field = x.field;

  Matrix<F> l = op_L(u, x);  // size dkn
  Matrix<F> mt = op_M(t, x);
  Matrix<F> r(field, d * k * n, d * k * n);
  for (std::size_t b = 0; b < k; ++b)
    r.set_block(b * d * n, b * d * n, mt);

  NFactorization<F> nf{mul(l, r), d, k, m, n, {}};
  nf.lambda.assign(
      d * k, std::vector<std::vector<typename F::Elem>>(
                 d * k, std::vector<typename F::Elem>(d * d * m, field.zero())));
  // Block (p,q) of N is sum over the d rows i of q's diagonal copy of M_T:
  // (U_l)_{p, floor(q/d)*d + i} X_l M_{i, q mod d}.
  for (std::size_t p = 0; p < d * k; ++p)
    for (std::size_t q = 0; q < d * k; ++q)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t lt = 0; lt < m; ++lt) {
          auto& coeff = nf.lambda[p][q][(i * d + q % d) * m + lt];
          coeff = field.add(coeff, u[lt].at(p, (q / d) * d + i));
        }
  return nf;
}

// The block matrix sum_idx lambda[p][q][idx] Y_idx; its determinant is the
// conjugation invariant g with g(zeta(X)) = det(N(X)).
template <typename F>
Matrix<F> assemble_from_lambda(const NFactorization<F>& nf,
                               const MatTuple<F>& y) {
  if (y.size() != nf.d * nf.d * nf.m || y.n != nf.base)
    throw DimensionError("lambda assembly: tuple shape mismatch");
  const F& field = y.field;
  const std::size_t n = nf.base, dk = nf.d * nf.k;
  Matrix<F> out(field, dk * n, dk * n);
  for (std::size_t p = 0; p < dk; ++p)
    for (std::size_t q = 0; q < dk; ++q) {
      Matrix<F> blk(field, n, n);
      for (std::size_t idx = 0; idx < y.size(); ++idx) {
        const auto& c = nf.lambda[p][q][idx];
        if (field.is_zero(c)) continue;
        blk = add(blk, scalar_mul(c, y[idx]));
      }
      out.set_block(p * n, q * n, blk);
    }
  return out;
}

// Determinant-one matrix built from `steps` random transvections
// Id + c E_{r,s}; exact by construction.
template <typename F>
Matrix<F> random_sl(const F& field, std::size_t n, std::size_t steps,
                    SplitMix64& rng) {
  Matrix<F> p = Matrix<F>::identity(field, n);
  if (n < 2) return p;
  for (std::size_t s = 0; s < steps; ++s) {
    std::size_t r = rng.below(n);
    std::size_t c = rng.below(n - 1);
    if (c >= r) ++c;
    auto coeff = field.from_int(static_cast<std::int64_t>(rng.below(5)) - 2);
    // row r += coeff * row c
    row_axpy(field, p.row(r), p.row(c), n, coeff);
  }
  return p;
}

template <typename F>
MatTuple<F> random_tuple(const F& field, std::size_t n, std::size_t m,
                         SplitMix64& rng, std::int64_t lo = -3,
                         std::int64_t hi = 3) {
  std::vector<Matrix<F>> mats;
  mats.reserve(m);
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  for (std::size_t i = 0; i < m; ++i) {
    Matrix<F> a(field, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        a.at(r, c) =
            field.from_int(lo + static_cast<std::int64_t>(rng.below(span)));
    mats.push_back(std::move(a));
  }
  return MatTuple<F>(field, n, std::move(mats));
}

// Property run shared by the CLI command and the acceptance suite: exact
// equivariance and factorization identities on random samples.
struct ZetaCheckReport {
  std::size_t samples = 0;
  std::size_t equivariance_failures = 0;  // zeta(PXQ) = P zeta(X) P^{-1}
  std::size_t block_equivariance_failures = 0;  // M blocks under (P,Q)
  std::size_t det_factor_failures = 0;    // det(N) = f_U det(M_T)^k
  std::size_t lambda_failures = 0;        // g(zeta(X)) = det(N(X))
  bool ok() const {
    return equivariance_failures == 0 && block_equivariance_failures == 0 &&
           det_factor_failures == 0 && lambda_failures == 0;
  }
};

template <typename F>
ZetaCheckReport zeta_check(const F& field, std::size_t n, std::size_t d,
                           std::size_t k, std::size_t m, std::size_t samples,
                           std::uint64_t seed) {
  ZetaCheckReport rep;
  rep.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    SplitMix64 rng(derive_seed(seed, s));
    MatTuple<F> x = random_tuple(field, n, m, rng);
    MatTuple<F> t = random_tuple(field, d, m, rng);
    MatTuple<F> u = random_tuple(field, d * k, m, rng);

    // sigma = (P, Q) acting by X_l -> P X_l Q, both determinant one.
    Matrix<F> p = random_sl(field, n, 4 * n, rng);
    Matrix<F> q = random_sl(field, n, 4 * n, rng);
    std::vector<Matrix<F>> moved;
    for (std::size_t l = 0; l < m; ++l) moved.push_back(mul(mul(p, x[l]), q));
    MatTuple<F> sx(field, n, std::move(moved));

    MatTuple<F> zx = zeta_map(t, x);
    MatTuple<F> zsx = zeta_map(t, sx);
    Matrix<F> pinv = inverse(p);
    for (std::size_t i = 0; i < zx.size(); ++i) {
      if (!(zsx[i] == mul(mul(p, zx[i]), pinv))) {
        ++rep.equivariance_failures;
        break;
      }
    }

    Matrix<F> mtx = op_M(t, x);
    Matrix<F> mtsx = op_M(t, sx);
    Matrix<F> qinv = inverse(q);
    bool blocks_ok = true;
    for (std::size_t i = 0; i < d && blocks_ok; ++i)
      for (std::size_t j = 0; j < d && blocks_ok; ++j) {
        Matrix<F> lhs = mtsx.block(i * n, j * n, n, n);
        Matrix<F> rhs =
            mul(mul(qinv, mtx.block(i * n, j * n, n, n)), pinv);
        blocks_ok = lhs == rhs;
      }
    if (!blocks_ok) ++rep.block_equivariance_failures;

    NFactorization<F> nf = build_N(u, t, x);
    auto det_n = det(nf.n_mat);
    auto f_u = eval_fT(u, x);
    auto det_m = det(mtx);
    auto rhs = f_u;
    for (std::size_t i = 0; i < k; ++i) rhs = field.mul(rhs, det_m);
    if (!(det_n == rhs)) ++rep.det_factor_failures;

    if (!(det(assemble_from_lambda(nf, zx)) == det_n)) ++rep.lambda_failures;
  }
  return rep;
}

}  // namespace ocsep
