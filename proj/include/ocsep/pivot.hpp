#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ocsep/bounds.hpp"
#include "ocsep/common.hpp"
#include "ocsep/linalg.hpp"
#include "ocsep/matrix.hpp"
#include "ocsep/words.hpp"

namespace ocsep {

// Basis of the unital algebra generated by a tuple, indexed by the
// graded-lex-least words whose products are linearly independent.
template <typename F>
struct PivotBasis {
  std::vector<std::pair<Word, Matrix<F>>> pivots;

  std::size_t dim() const { return pivots.size(); }

  std::size_t max_word_length() const {
    std::size_t len = 0;
    for (const auto& [w, mat] : pivots)
      if (w.size() > len) len = w.size();
    return len;
  }
};

// Breadth-first pivot search. Level l candidates are the one-letter right
// extensions of the level l-1 pivots, scanned in graded-lex order against a
// shared echelon state; prefix closure of pivots makes right extension
// exhaustive. The run stops at the first level that adds nothing, which the
// length bound guarantees happens within ceil(2k log2 k) + 4k - 4 letters.
template <typename F>
PivotBasis<F> pivot_basis(const MatTuple<F>& c) {
  const std::size_t k = c.n;
  const std::size_t m = c.size();
  internal_check(k >= 1, "pivot basis needs positive matrix size");
  const std::size_t cutoff = pivot_length_bound(k).get_ui();

  PivotBasis<F> basis;
  Echelon<F> ech(c.field, k * k);
  Matrix<F> id = Matrix<F>::identity(c.field, k);
  internal_check(ech.insert(id.flatten()), "identity reduced to zero");
  basis.pivots.emplace_back(Word{}, id);

  std::size_t level_begin = 0;  // pivots whose extensions are pending
  while (level_begin < basis.pivots.size() && basis.dim() < k * k) {
    const std::size_t level_end = basis.pivots.size();
    for (std::size_t p = level_begin; p < level_end; ++p) {
      for (std::uint32_t letter = 0; letter < m; ++letter) {
        Word w = basis.pivots[p].first;
        w.push_back(letter);
        Matrix<F> val = mul(basis.pivots[p].second, c[letter]);
        if (!ech.insert(val.flatten())) continue;
        if (w.size() > cutoff)
          throw InternalError("pivot word exceeds the length bound");
        basis.pivots.emplace_back(std::move(w), std::move(val));
      }
    }
    level_begin = level_end;
  }
  internal_check(basis.dim() <= k * k, "pivot count exceeds k^2");
  return basis;
}

}  // namespace ocsep
