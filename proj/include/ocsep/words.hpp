#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ocsep/common.hpp"
#include "ocsep/matrix.hpp"

namespace ocsep {

// A word over the alphabet of tuple positions, 0-based internally.
// Serialization (1-based arrays) lives at the IO boundary.
using Word = std::vector<std::uint32_t>;

// Graded lexicographic: length first, then the leftmost differing letter.
inline int word_cmp(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    return word_cmp(a, b) < 0;
  }
};

// X_w: left-to-right product of the tuple entries named by w; the empty
// word is the identity.
template <typename F>
Matrix<F> eval_word(const MatTuple<F>& x, const Word& w) {
  Matrix<F> acc = Matrix<F>::identity(x.field, x.n);
  for (std::uint32_t letter : w) {
    if (letter >= x.size())
      throw InputError("word letter " + std::to_string(letter + 1) +
                       " exceeds tuple arity " + std::to_string(x.size()));
    acc = mul(acc, x[letter]);
  }
  return acc;
}

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "()";
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i] + 1);
  }
  return s + ")";
}

}  // namespace ocsep
