#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ocsep/common.hpp"

namespace ocsep {

// Exact ceil(c * log2(k)) for integers c >= 0, k >= 1, computed as the bit
// length of k^c. No floating point, so the degree cutoffs below can never
// be off by an ulp.
inline mpz_class ceil_mul_log2(std::uint64_t c, std::uint64_t k) {
  if (k == 0) throw InputError("log2 of zero");
  if (k == 1 || c == 0) return 0;
  mpz_class kc;
  mpz_ui_pow_ui(kc.get_mpz_t(), k, c);
  std::size_t bits = mpz_sizeinbase(kc.get_mpz_t(), 2);
  mpz_class t = static_cast<unsigned long>(bits - 1);
  // Exact power of two means log2 is an integer and the ceiling is t.
  if (mpz_popcount(kc.get_mpz_t()) == 1) return t;
  return t + 1;
}

// Longest word the pivot construction may need for k x k generators:
// ceil(2k log2 k) + 4k - 4.
inline mpz_class pivot_length_bound(std::uint64_t k) {
  if (k == 0) throw InputError("pivot bound needs k >= 1");
  return ceil_mul_log2(2 * k, k) + mpz_class(4 * k) - 4;
}

// Every degree bound the library promises, by name. All ceiling-evaluated,
// all exact. n is the matrix size, m the tuple arity (ignored where the
// bound is arity-free).
inline mpz_class bound_value(const std::string& name, std::uint64_t n,
                             std::uint64_t m) {
  if (n == 0) throw InputError("bounds need n >= 1");
  const mpz_class n2 = mpz_class(n) * n;
  const mpz_class n3 = n2 * n;
  const mpz_class n4 = n3 * n;
  if (name == "pivot-length") return pivot_length_bound(n);
  if (name == "sep-conj-char0")
    return ceil_mul_log2(4 * n, n) + 12 * mpz_class(n) - 4;
  if (name == "sep-conj-general")
    return ceil_mul_log2(4 * n * n, n) + 12 * n2 - 4 * mpz_class(n);
  if (name == "sep-lr-char0")
    return ceil_mul_log2(4 * n * n * n, n) + 12 * n3 - 4 * n2;
  if (name == "sep-lr-general")
    return ceil_mul_log2(4 * n * n * n * n, n) + 12 * n4 - 4 * n3;
  if (name == "sep-lr-reduction-char0")
    return n2 * bound_value("sep-conj-char0", n, m * n * n);
  if (name == "sep-lr-reduction-general")
    return n2 * bound_value("sep-conj-general", n, m * n * n);
  if (name == "gen-conj-char0") return n2;
  if (name == "gen-conj-general") return mpz_class(m + 1) * n4;
  if (name == "gen-lr-char0") return n4 * n2;
  if (name == "gen-lr-general") return mpz_class(m) * n4;
  throw InputError("unknown bound name: " + name);
}

inline const std::vector<std::string>& bound_names() {
  static const std::vector<std::string> names = {
      "pivot-length",          "sep-conj-char0",
      "sep-conj-general",      "sep-lr-char0",
      "sep-lr-general",        "sep-lr-reduction-char0",
      "sep-lr-reduction-general", "gen-conj-char0",
      "gen-conj-general",      "gen-lr-char0",
      "gen-lr-general"};
  return names;
}

}  // namespace ocsep
