#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ocsep::fpk {

// Dense mod-p row kernels behind all GF(p) matrix arithmetic: elimination,
// echelon reduction and matrix products are expressed as scaled-row updates
// so one kernel family carries the inner loops.
//
// Contract shared by every backend:
//   * residues are canonical uint64 values in [0, p)
//   * p is prime and p <= kMaxModulus, so c*x < 2^62 fits in 64 bits
//   * x and y must not alias

inline constexpr std::uint64_t kMaxModulus = (1ull << 31) - 1;

struct Kernels {
  const char* name;
  // y[i] <- (y[i] + c * x[i]) mod p
  void (*axpy)(std::uint64_t* y, const std::uint64_t* x, std::size_t n,
               std::uint64_t c, std::uint64_t p);
  // y[i] <- (c * y[i]) mod p
  void (*scale)(std::uint64_t* y, std::size_t n, std::uint64_t c,
                std::uint64_t p);
};

// Portable reference implementation; the oracle the SIMD variants are
// equivalence-tested against.
const Kernels& scalar_kernels();

// Best backend usable on this machine, resolved once per process.
// OCSEP_FP_BACKEND=scalar|avx2|neon forces a specific one (ignored if that
// backend cannot run here).
const Kernels& active_kernels();

// Every backend compiled in and runnable on this machine.
std::vector<const Kernels*> available_kernels();

}  // namespace ocsep::fpk
