#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "ocsep/invariants.hpp"
#include "ocsep/matrix.hpp"
#include "ocsep/pivot.hpp"

namespace ocsep {

enum class Verdict { Equivalent, Separated };

template <typename F>
struct SeparationResult {
  Verdict verdict = Verdict::Equivalent;
  std::optional<Witness<F>> witness;
  std::optional<std::pair<typename F::Elem, typename F::Elem>> values;
  std::size_t pivot_count = 0;
  std::size_t max_pivot_length = 0;
};

struct ConjOptions {
  // Compare full characteristic polynomials even when traces suffice
  // (char 0 or p > n); for cross-validation.
  bool force_charpoly = false;
};

namespace detail {

template <typename F>
void check_same_shape(const MatTuple<F>& a, const MatTuple<F>& b) {
  if (!(a.field == b.field))
    throw InputError("inputs live over different fields");
  if (a.n != b.n || a.size() != b.size())
    throw InputError("inputs have different shape: " + std::to_string(a.n) +
                     "^" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.n) + "^" + std::to_string(b.size()));
}

}  // namespace detail

// Decide whether the conjugation orbit closures of A and B intersect.
// Separated verdicts carry a witness that is re-evaluated on the original
// inputs before returning, so they are correct unconditionally; Equivalent
// rests on the pivot-basis criterion.
//
// Method: the diagonal tuple C_i = diag(A_i, B_i) generates an algebra
// whose pivot words w index the comparisons to make. Over char 0 or p > n
// matching traces of A_w and B_w for every pivot word already decide the
// question; otherwise all characteristic coefficients are compared.
template <typename F>
SeparationResult<F> separate_conj(const MatTuple<F>& a, const MatTuple<F>& b,
                                  const ConjOptions& opts = {}) {
  detail::check_same_shape(a, b);
  const F& field = a.field;
  const std::size_t n = a.n;

  std::vector<Matrix<F>> gens;
  gens.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    gens.push_back(direct_sum(a[i], b[i]));
  MatTuple<F> c(field, 2 * n, std::move(gens));
  PivotBasis<F> basis = pivot_basis(c);

  SeparationResult<F> res;
  res.pivot_count = basis.dim();
  res.max_pivot_length = basis.max_word_length();

  const bool trace_only =
      !opts.force_charpoly && (field.spec().characteristic() == 0 ||
                               field.spec().characteristic() > n);

  std::optional<Witness<F>> found;
  for (const auto& [w, z] : basis.pivots) {
    Matrix<F> aw = z.block(0, 0, n, n);
    Matrix<F> bw = z.block(n, n, n, n);
    if (trace_only) {
      if (!(aw.trace() == bw.trace())) {
        found = make_trace_witness<F>(w);
        break;
      }
    } else {
      auto sa = charpoly_sigma(aw);
      auto sb = charpoly_sigma(bw);
      std::size_t j = 1;  // sigma_0 is identically 1
      while (j <= n && sa[j] == sb[j]) ++j;
      if (j <= n) {
        found = make_sigma_witness<F>(j, w);
        break;
      }
    }
  }

  if (!found) return res;  // every pivot agreed

  // Unconditional soundness guard: evaluate the witness on the original
  // tuples through the public evaluator.
  auto va = eval_witness(*found, a);
  auto vb = eval_witness(*found, b);
  internal_check(!(va == vb), "separating witness failed re-verification");
  res.verdict = Verdict::Separated;
  res.witness = std::move(found);
  res.values = std::make_pair(std::move(va), std::move(vb));
  return res;
}

}  // namespace ocsep
