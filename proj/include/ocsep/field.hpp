#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "ocsep/common.hpp"
#include "ocsep/fp_kernels.hpp"

namespace ocsep {

// Deterministic Miller-Rabin, valid for every 64-bit input.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Which exact field a computation runs in. Every scalar in one run shares
// one FieldSpec.
struct FieldSpec {
  enum class Kind { Rational, Prime };
  Kind kind = Kind::Rational;
  std::uint64_t p = 0;

  static FieldSpec rational() { return {Kind::Rational, 0}; }
  static FieldSpec prime(std::uint64_t p) { return {Kind::Prime, p}; }

  bool is_rational() const { return kind == Kind::Rational; }
  // 0 for the rationals, p otherwise.
  std::uint64_t characteristic() const { return is_rational() ? 0 : p; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind == b.kind && a.p == b.p;
  }

  std::string describe() const {
    return is_rational() ? "rational" : "GF(" + std::to_string(p) + ")";
  }
};

// GF(p) with canonical residues in [0, p). The modulus is capped at 31 bits
// so row kernels can run entirely in 64-bit lanes (see fp_kernels.hpp).
class PrimeField {
 public:
  using Elem = std::uint64_t;
  static constexpr bool is_rational = false;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p > fpk::kMaxModulus) {
      throw FieldError("modulus " + std::to_string(p) +
                       " exceeds the supported 31-bit limit");
    }
    if (!is_prime_u64(p)) {
      throw FieldError("modulus " + std::to_string(p) + " is not prime");
    }
  }

  std::uint64_t modulus() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime(p_); }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }

  Elem inv(Elem a) const {
    if (a == 0) throw SingularMatrixError("inverse of 0 in " + spec().describe());
    // Extended Euclid; works for every unit including p = 2.
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p_),
                 nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(t);
  }

  Elem from_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(m);
  }

  Elem from_mpz(const mpz_class& v) const {
    mpz_class m = v % static_cast<unsigned long>(p_);
    if (m < 0) m += static_cast<unsigned long>(p_);
    return m.get_ui();
  }

  std::string to_string(Elem a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.p_ == b.p_;
  }

 private:
  std::uint64_t p_;
};

// The rationals, backed by GMP. mpq_class keeps results canonical (lowest
// terms, positive denominator) as long as inputs are canonical; raw
// numerator/denominator construction goes through make_rational below.
struct RationalField {
  using Elem = mpq_class;
  static constexpr bool is_rational = true;

  FieldSpec spec() const { return FieldSpec::rational(); }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }

  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw SingularMatrixError("inverse of 0 in Q");
    return 1 / a;
  }

  Elem from_int(std::int64_t v) const {
    return Elem(static_cast<long>(v));
  }

  std::string to_string(const Elem& a) const { return a.get_str(); }

  friend bool operator==(const RationalField&, const RationalField&) {
    return true;
  }
};

inline mpq_class make_rational(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw InputError("rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace ocsep
