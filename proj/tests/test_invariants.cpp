#include <doctest.h>

#include <random>

#include "ocsep/invariants.hpp"
#include "ocsep/zeta.hpp"
#include "oracle.hpp"

using namespace ocsep;

namespace {

template <typename F>
Matrix<F> unit(const F& field, std::size_t n, std::size_t i, std::size_t j) {
  Matrix<F> e(field, n, n);
  e.at(i, j) = field.one();
  return e;
}

}  // namespace

TEST_CASE("trace words") {
  RationalField q;
  std::mt19937_64 rng(21);
  auto x = oracle::random_tuple(q, 3, 2, rng);
  CHECK(eval_T(Word{}, x) == 3);

  MatTuple<RationalField> e(q, 2, {unit(q, 2, 0, 1), unit(q, 2, 1, 0)});
  CHECK(eval_T(Word{0, 1}, e) == 1);  // Tr(E11)

  auto [g, gi] = oracle::random_sl_pair(q, 3, 9, rng);
  std::vector<Matrix<RationalField>> conj;
  for (std::size_t i = 0; i < 2; ++i) conj.push_back(mul(mul(g, x[i]), gi));
  MatTuple<RationalField> gx(q, 3, std::move(conj));
  for (const Word& w : {Word{0}, Word{1, 0}, Word{0, 0, 1}})
    CHECK(eval_T(w, x) == eval_T(w, gx));
}

TEST_CASE("sigma words") {
  RationalField q;
  Matrix<RationalField> d12(q, 2, 2);
  d12.at(0, 0) = 1;
  d12.at(1, 1) = 2;
  MatTuple<RationalField> x(q, 2, {d12});
  CHECK(eval_sigma(1, Word{0}, x) == 3);
  CHECK(eval_sigma(2, Word{0}, x) == 2);
  CHECK(eval_sigma(2, Word{}, x) == 1);  // det(Id)
  CHECK_THROWS_AS(eval_sigma(0, Word{0}, x), InputError);
  CHECK_THROWS_AS(eval_sigma(3, Word{0}, x), InputError);

  std::mt19937_64 rng(22);
  auto y = oracle::random_tuple(q, 3, 1, rng);
  auto y2 = mul(y[0], y[0]);
  CHECK(eval_sigma(2, Word{0, 0}, y) == oracle::sigma_minors(2, y2));
}

TEST_CASE("linear determinant invariants") {
  RationalField q;
  std::mt19937_64 rng(23);
  auto m = oracle::random_matrix(q, 3, 3, rng);
  MatTuple<RationalField> x(q, 3, {m});
  MatTuple<RationalField> t1(q, 1, {Matrix<RationalField>::identity(q, 1)});
  CHECK(eval_fT(t1, x) == det(m));

  // X_1 = Id and the rest zero: f_T = det(T_1 (x) Id) = det(T_1)^n.
  MatTuple<RationalField> xid(
      q, 3,
      {Matrix<RationalField>::identity(q, 3), Matrix<RationalField>(q, 3, 3)});
  auto t = oracle::random_matrix(q, 2, 2, rng);
  MatTuple<RationalField> ts(q, 2, {t, oracle::random_matrix(q, 2, 2, rng)});
  mpq_class dt = det(t);
  CHECK(eval_fT(ts, xid) == dt * dt * dt);

  // Left-right invariance under a determinant-one pair.
  auto y = oracle::random_tuple(q, 2, 2, rng);
  auto [p, pi] = oracle::random_sl_pair(q, 2, 8, rng);
  auto [qq, qqi] = oracle::random_sl_pair(q, 2, 8, rng);
  std::vector<Matrix<RationalField>> moved;
  for (std::size_t i = 0; i < 2; ++i) moved.push_back(mul(mul(p, y[i]), qq));
  MatTuple<RationalField> py(q, 2, std::move(moved));
  auto t2 = oracle::random_tuple(q, 2, 2, rng);
  CHECK(eval_fT(t2, y) == eval_fT(t2, py));
}

TEST_CASE("the skew triple vanishes on every size-1 coefficient tuple") {
  RationalField q;
  auto s = oracle::skew_triple(q);
  std::mt19937_64 rng(24);
  for (int i = 0; i < 50; ++i) {
    auto t = oracle::random_tuple(q, 1, 3, rng, -10, 10);
    CHECK(eval_fT(t, s) == 0);
  }
}

TEST_CASE("blow-up") {
  RationalField q;
  std::mt19937_64 rng(25);
  auto x = oracle::random_tuple(q, 2, 2, rng);
  auto b1 = blow_up(x, 1);
  REQUIRE(b1.size() == 2);
  CHECK(b1[0] == x[0]);
  CHECK(b1[1] == x[1]);

  auto b2 = blow_up(x, 2);
  CHECK(b2.size() == 2 * 2 * 2);
  CHECK(b2.n == 4);
  // (i,j,k) lexicographic with k fastest, i slowest.
  CHECK(b2[0] == kron(x[0], unit(q, 2, 0, 0)));
  CHECK(b2[1] == kron(x[0], unit(q, 2, 0, 1)));
  CHECK(b2[2] == kron(x[0], unit(q, 2, 1, 0)));
  CHECK(b2[4] == kron(x[1], unit(q, 2, 0, 0)));

  // Power identity f_S(X^[d]) = f_T(X)^d with S_(i,j,k) = delta_jk T_i.
  for (std::size_t d : {1u, 2u}) {
    auto t = oracle::random_tuple(q, d, 2, rng);
    std::vector<Matrix<RationalField>> s;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          s.push_back(j == k ? t[i] : Matrix<RationalField>(q, d, d));
    MatTuple<RationalField> st(q, d, std::move(s));
    mpq_class ft = eval_fT(t, x);
    mpq_class want = 1;
    for (std::size_t i = 0; i < d; ++i) want *= ft;
    CHECK(eval_fT(st, blow_up(x, d)) == want);
  }
}

TEST_CASE("star action and phi") {
  RationalField q;
  std::mt19937_64 rng(26);
  auto x = oracle::random_tuple(q, 2, 3, rng);
  CHECK(star_action(Matrix<RationalField>::identity(q, 3), x)[1] == x[1]);

  Matrix<RationalField> perm(q, 3, 3);  // cyclic shift
  perm.at(0, 1) = 1;
  perm.at(1, 2) = 1;
  perm.at(2, 0) = 1;
  auto shifted = star_action(perm, x);
  CHECK(shifted[0] == x[1]);
  CHECK(shifted[1] == x[2]);
  CHECK(shifted[2] == x[0]);

  CHECK_THROWS_AS(star_action(Matrix<RationalField>(q, 3, 3), x), InputError);

  MatTuple<RationalField> empty(q, 2, {});
  auto lifted = phi(empty);
  REQUIRE(lifted.size() == 1);
  CHECK(lifted[0] == Matrix<RationalField>::identity(q, 2));
  auto px = phi(x);
  REQUIRE(px.size() == 4);
  CHECK(px[0] == Matrix<RationalField>::identity(q, 2));
  CHECK(px[1] == x[0]);
}

TEST_CASE("tilde lift is a preimage along phi and left-right invariant") {
  RationalField q;
  std::mt19937_64 rng(27);

  // m = 1, f = T_(1): the lift evaluates Tr(Adj(Y1) Y2); on (Id, M) that is
  // Tr(M).
  auto m = oracle::random_matrix(q, 3, 3, rng);
  auto lift_t = tilde_lift(q, TraceWitness{Word{0}}, 1, 3);
  MatTuple<RationalField> idm(q, 3,
                              {Matrix<RationalField>::identity(q, 3), m});
  CHECK(eval_witness(lift_t, idm) == m.trace());

  // f = sigma_{2,"12"} over two letters.
  auto x = oracle::random_tuple(q, 2, 2, rng);
  InnerWitness f = SigmaWitness{2, Word{0, 1}};
  auto lifted = tilde_lift(q, f, 2, 2);
  CHECK(eval_witness(lifted, phi(x)) == eval_inner(q, f, x));

  // Invariance under Y_i -> P Y_i Q with det P = det Q = 1.
  auto y = oracle::random_tuple(q, 2, 3, rng);
  auto [p, pi] = oracle::random_sl_pair(q, 2, 8, rng);
  auto [qq, qqi] = oracle::random_sl_pair(q, 2, 8, rng);
  std::vector<Matrix<RationalField>> moved;
  for (std::size_t i = 0; i < 3; ++i) moved.push_back(mul(mul(p, y[i]), qq));
  MatTuple<RationalField> py(q, 2, std::move(moved));
  CHECK(eval_witness(lifted, y) == eval_witness(lifted, py));
}

TEST_CASE("witness dispatch and recorded degrees") {
  RationalField q;
  std::mt19937_64 rng(28);
  auto x = oracle::random_tuple(q, 2, 2, rng);

  auto tw = make_trace_witness<RationalField>(Word{});
  CHECK(eval_witness(tw, x) == 2);
  CHECK(tw.degree == 0);

  auto t = oracle::random_tuple(q, 2, 2, rng);
  auto lw = make_lindet_witness(t, x.n);
  CHECK(eval_witness(lw, x) == eval_fT(t, x));
  CHECK(lw.degree == 4);  // dn

  CHECK(make_sigma_witness<RationalField>(2, Word{0, 1}).degree == 4);

  // Homogeneity: eval on lambda*X is lambda^degree times eval on X.
  mpq_class lambda = make_rational(3, 2);
  auto scale_tuple = [&](const MatTuple<RationalField>& in) {
    std::vector<Matrix<RationalField>> s;
    for (std::size_t i = 0; i < in.size(); ++i)
      s.push_back(scalar_mul(lambda, in[i]));
    return MatTuple<RationalField>(q, in.n, std::move(s));
  };
  auto pow_l = [&](std::uint64_t e) {
    mpq_class r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r *= lambda;
    return r;
  };

  SplitMix64 sm(5);
  auto x3 = phi(x);  // arity 3 for the lifted witness
  std::vector<std::pair<Witness<RationalField>, const MatTuple<RationalField>*>>
      ws;
  ws.emplace_back(make_trace_witness<RationalField>(Word{0, 1, 0}), &x);
  ws.emplace_back(make_sigma_witness<RationalField>(2, Word{1, 0}), &x);
  ws.emplace_back(lw, &x);
  ws.emplace_back(tilde_lift(q, SigmaWitness{1, Word{0}}, 2, 2), &x3);
  ws.emplace_back(make_composed_witness(random_sl(q, 2, 6, sm), 1,
                                        TraceWitness{Word{0}}, 2),
                  &x);
  for (const auto& [w, pt] : ws) {
    CAPTURE(w.degree);
    CHECK(eval_witness(w, scale_tuple(*pt)) ==
          pow_l(w.degree) * eval_witness(w, *pt));
  }
}

TEST_CASE("complete_to_invertible") {
  RationalField q;
  std::vector<mpq_class> e1{1, 0, 0};
  auto p1 = complete_to_invertible(q, e1);
  CHECK(p1.at(0, 0) == 1);
  CHECK_FALSE(q.is_zero(det(p1)));

  std::vector<mpq_class> last{0, 0, 1};
  auto p2 = complete_to_invertible(q, last);
  CHECK(p2.at(0, 2) == 1);
  CHECK_FALSE(q.is_zero(det(p2)));

  CHECK_THROWS_AS(complete_to_invertible(q, std::vector<mpq_class>{0, 0, 0}),
                  InputError);

  PrimeField f(101);
  std::mt19937_64 rng(29);
  for (int s = 0; s < 100; ++s) {
    std::size_t m = 1 + rng() % 6;
    std::vector<std::uint64_t> v(m);
    bool nonzero = false;
    for (auto& e : v) {
      e = rng() % 101;
      nonzero = nonzero || e != 0;
    }
    if (!nonzero) v[rng() % m] = 1;
    auto p = complete_to_invertible(f, v);
    for (std::size_t j = 0; j < m; ++j) CHECK(p.at(0, j) == v[j]);
    CHECK_FALSE(f.is_zero(det(p)));
  }
}
