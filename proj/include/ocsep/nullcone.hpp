#pragma once

#include <cstdint>
#include <future>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "ocsep/invariants.hpp"
#include "ocsep/matrix.hpp"
#include "ocsep/rng.hpp"

namespace ocsep {

// Monte Carlo replacement for a deterministic null-cone oracle. Outside
// verdicts ship a self-verifying linear-determinant certificate and are
// unconditionally correct; inside verdicts are "probably": every trial
// failing has probability at most failure_bound when the input is in fact
// outside.
template <typename F>
struct NullConeReport {
  bool outside = false;
  std::optional<Witness<F>> certificate;  // LinDet, present iff outside
  std::size_t d_used = 0;
  std::size_t trials = 0;
  std::optional<std::size_t> success_trial;
  mpq_class failure_bound = 0;  // one-sided, for inside verdicts
  std::uint64_t rng_seed = 0;
};

struct NullConeOptions {
  std::size_t trials = 40;
  std::uint64_t seed = 0;
  // Certify via single entries / the entry sum before sampling.
  bool quick_path = true;
  std::size_t threads = 1;
  // Minimum GF(p) size to accept; 0 means the default 2dn that makes each
  // trial succeed with probability >= 1/2.
  std::uint64_t field_floor = 0;
};

namespace detail {

// T with entries drawn uniformly from [0, range); the coefficient tuple of
// one sampling trial.
template <typename F>
MatTuple<F> sample_coeffs(const F& field, std::size_t d, std::size_t m,
                          std::uint64_t range, SplitMix64& rng) {
  std::vector<Matrix<F>> mats;
  mats.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Matrix<F> t(field, d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        t.at(r, c) = field.from_int(static_cast<std::int64_t>(rng.below(range)));
    mats.push_back(std::move(t));
  }
  return MatTuple<F>(field, d, std::move(mats));
}

}  // namespace detail

// Decide (one-sidedly) whether X lies in the null cone of the left-right
// action, i.e. whether every f_T vanishes on X. d is the coefficient size
// to sample at; any d >= n-1 is guaranteed to admit a certificate when X
// is outside.
template <typename F>
NullConeReport<F> nullcone_test(const MatTuple<F>& x, std::size_t d,
                                const NullConeOptions& opts = {}) {
  const F& field = x.field;
  const std::size_t n = x.n;
  const std::size_t m = x.size();
  if (d < 1 || (n >= 1 && d + 1 < n))
    throw InputError("coefficient size d must be at least n-1 (and >= 1)");

  const std::uint64_t dn = static_cast<std::uint64_t>(d) * n;
  std::uint64_t range = 2 * dn;  // Schwartz-Zippel: degree dn, error <= 1/2
  std::uint64_t floor = opts.field_floor ? opts.field_floor : 2 * dn;
  if constexpr (!F::is_rational) {
    if (field.modulus() < floor)
      throw FieldError("field too small for randomized certification: need p >= " +
                       std::to_string(floor));
    range = field.modulus();
  }

  NullConeReport<F> rep;
  rep.d_used = d;
  rep.trials = opts.trials;
  rep.rng_seed = opts.seed;

  auto certify = [&](MatTuple<F> t, std::size_t d_used,
                     std::optional<std::size_t> trial) {
    Witness<F> w = make_lindet_witness(std::move(t), n);
    auto value = eval_witness(w, x);
    internal_check(!field.is_zero(value), "null-cone certificate vanished");
    rep.outside = true;
    rep.certificate = std::move(w);
    rep.d_used = d_used;
    rep.success_trial = trial;
    rep.failure_bound = 0;
    return rep;
  };

  if (opts.quick_path && m > 0) {
    // Scalar coefficient tuples: a single invertible entry, then the sum.
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_invertible(x[i])) continue;
      std::vector<Matrix<F>> t(m, Matrix<F>(field, 1, 1));
      t[i].at(0, 0) = field.one();
      return certify(MatTuple<F>(field, 1, std::move(t)), 1, std::nullopt);
    }
    Matrix<F> sum(field, n, n);
    for (std::size_t i = 0; i < m; ++i) sum = add(sum, x[i]);
    if (is_invertible(sum)) {
      std::vector<Matrix<F>> t;
      for (std::size_t i = 0; i < m; ++i) {
        Matrix<F> one(field, 1, 1);
        one.at(0, 0) = field.one();
        t.push_back(std::move(one));
      }
      return certify(MatTuple<F>(field, 1, std::move(t)), 1, std::nullopt);
    }
  }

  auto run_trial = [&](std::size_t trial) -> std::optional<MatTuple<F>> {
    SplitMix64 rng(derive_seed(opts.seed, trial));
    MatTuple<F> t = detail::sample_coeffs(field, d, m, range, rng);
    if (field.is_zero(eval_fT(t, x))) return std::nullopt;
    return t;
  };

  if (opts.threads > 1) {
    std::vector<std::future<std::optional<MatTuple<F>>>> futs;
    futs.reserve(opts.trials);
    for (std::size_t trial = 0; trial < opts.trials; ++trial)
      futs.push_back(std::async(std::launch::async, run_trial, trial));
    std::optional<std::size_t> hit;
    std::optional<MatTuple<F>> hit_t;
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
      auto t = futs[trial].get();
      if (t && !hit) {
        hit = trial;
        hit_t = std::move(t);
      }
    }
    if (hit) return certify(std::move(*hit_t), d, hit);
  } else {
    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
      if (auto t = run_trial(trial)) return certify(std::move(*t), d, trial);
    }
  }

  // All trials vanished. If X were outside, each independent trial would
  // have had failure probability <= dn / range.
  mpq_class per_trial = make_rational(dn, range);
  if (per_trial > 1) per_trial = 1;
  mpq_class bound = 1;
  for (std::size_t i = 0; i < opts.trials; ++i) bound *= per_trial;
  rep.failure_bound = bound;
  return rep;
}

}  // namespace ocsep
