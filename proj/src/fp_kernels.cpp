#include "ocsep/fp_kernels.hpp"

#include <cstdlib>
#include <cstring>

#if defined(__x86_64__)
#include <immintrin.h>
#endif
#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace ocsep::fpk {

namespace {

// ---------------------------------------------------------------- scalar --

void axpy_scalar(std::uint64_t* y, const std::uint64_t* x, std::size_t n,
                 std::uint64_t c, std::uint64_t p) {
  if (c == 0) return;
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = (y[i] + c * x[i]) % p;
  }
}

void scale_scalar(std::uint64_t* y, std::size_t n, std::uint64_t c,
                  std::uint64_t p) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = (c * y[i]) % p;
  }
}

constexpr Kernels kScalar{"scalar", axpy_scalar, scale_scalar};

// ------------------------------------------------------------------ avx2 --
//
// Multiplication by the fixed factor c uses Shoup's trick: with
// c' = floor(c * 2^32 / p) precomputed once per call,
//   q = floor(c' * x / 2^32),  r = c*x - q*p  lies in [0, 2p),
// so one conditional subtract canonicalizes the product and a second one
// folds in y. All intermediates stay below 2^62 because p < 2^31.

#if defined(__x86_64__)

__attribute__((target("avx2"))) inline __m256i reduce_once_avx2(__m256i v,
                                                                __m256i vp) {
  // v in [0, 2p): subtract p where v >= p. Values < 2^33, signed compare ok.
  __m256i lt = _mm256_cmpgt_epi64(vp, v);
  return _mm256_sub_epi64(v, _mm256_andnot_si256(lt, vp));
}

__attribute__((target("avx2"))) void axpy_avx2(std::uint64_t* y,
                                               const std::uint64_t* x,
                                               std::size_t n, std::uint64_t c,
                                               std::uint64_t p) {
  if (c == 0) return;
  const std::uint64_t cshoup = (c << 32) / p;
  const __m256i vc = _mm256_set1_epi64x(static_cast<long long>(c));
  const __m256i vcs = _mm256_set1_epi64x(static_cast<long long>(cshoup));
  const __m256i vp = _mm256_set1_epi64x(static_cast<long long>(p));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    __m256i vy = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + i));
    __m256i q = _mm256_srli_epi64(_mm256_mul_epu32(vcs, vx), 32);
    __m256i prod = _mm256_sub_epi64(_mm256_mul_epu32(vc, vx),
                                    _mm256_mul_epu32(q, vp));
    prod = reduce_once_avx2(prod, vp);
    __m256i sum = reduce_once_avx2(_mm256_add_epi64(vy, prod), vp);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), sum);
  }
  for (; i < n; ++i) y[i] = (y[i] + c * x[i]) % p;
}

__attribute__((target("avx2"))) void scale_avx2(std::uint64_t* y,
                                                std::size_t n, std::uint64_t c,
                                                std::uint64_t p) {
  const std::uint64_t cshoup = (c << 32) / p;
  const __m256i vc = _mm256_set1_epi64x(static_cast<long long>(c));
  const __m256i vcs = _mm256_set1_epi64x(static_cast<long long>(cshoup));
  const __m256i vp = _mm256_set1_epi64x(static_cast<long long>(p));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i vy = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + i));
    __m256i q = _mm256_srli_epi64(_mm256_mul_epu32(vcs, vy), 32);
    __m256i prod = _mm256_sub_epi64(_mm256_mul_epu32(vc, vy),
                                    _mm256_mul_epu32(q, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i),
                        reduce_once_avx2(prod, vp));
  }
  for (; i < n; ++i) y[i] = (c * y[i]) % p;
}

constexpr Kernels kAvx2{"avx2", axpy_avx2, scale_avx2};

bool avx2_usable() { return __builtin_cpu_supports("avx2"); }

#endif  // __x86_64__

// ------------------------------------------------------------------ neon --

#if defined(__aarch64__)

inline uint64x2_t reduce_once_neon(uint64x2_t v, uint64x2_t vp) {
  return vsubq_u64(v, vandq_u64(vcgeq_u64(v, vp), vp));
}

void axpy_neon(std::uint64_t* y, const std::uint64_t* x, std::size_t n,
               std::uint64_t c, std::uint64_t p) {
  if (c == 0) return;
  const std::uint64_t cshoup = (c << 32) / p;
  const uint32x2_t vc = vdup_n_u32(static_cast<std::uint32_t>(c));
  const uint32x2_t vcs = vdup_n_u32(static_cast<std::uint32_t>(cshoup));
  const uint32x2_t vplo = vdup_n_u32(static_cast<std::uint32_t>(p));
  const uint64x2_t vp = vdupq_n_u64(p);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint32x2_t vx = vmovn_u64(vld1q_u64(x + i));
    uint64x2_t vy = vld1q_u64(y + i);
    uint32x2_t q = vmovn_u64(vshrq_n_u64(vmull_u32(vcs, vx), 32));
    uint64x2_t prod = vsubq_u64(vmull_u32(vc, vx), vmull_u32(q, vplo));
    prod = reduce_once_neon(prod, vp);
    vst1q_u64(y + i, reduce_once_neon(vaddq_u64(vy, prod), vp));
  }
  for (; i < n; ++i) y[i] = (y[i] + c * x[i]) % p;
}

void scale_neon(std::uint64_t* y, std::size_t n, std::uint64_t c,
                std::uint64_t p) {
  const std::uint64_t cshoup = (c << 32) / p;
  const uint32x2_t vc = vdup_n_u32(static_cast<std::uint32_t>(c));
  const uint32x2_t vcs = vdup_n_u32(static_cast<std::uint32_t>(cshoup));
  const uint32x2_t vplo = vdup_n_u32(static_cast<std::uint32_t>(p));
  const uint64x2_t vp = vdupq_n_u64(p);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint32x2_t vy = vmovn_u64(vld1q_u64(y + i));
    uint32x2_t q = vmovn_u64(vshrq_n_u64(vmull_u32(vcs, vy), 32));
    uint64x2_t prod = vsubq_u64(vmull_u32(vc, vy), vmull_u32(q, vplo));
    vst1q_u64(y + i, reduce_once_neon(prod, vp));
  }
  for (; i < n; ++i) y[i] = (c * y[i]) % p;
}

constexpr Kernels kNeon{"neon", axpy_neon, scale_neon};

#endif  // __aarch64__

const Kernels* pick_backend() {
  if (const char* forced = std::getenv("OCSEP_FP_BACKEND")) {
    for (const Kernels* k : available_kernels()) {
      if (std::strcmp(k->name, forced) == 0) return k;
    }
    // Unknown or unusable name: fall through to autodetection.
  }
#if defined(__x86_64__)
  if (avx2_usable()) return &kAvx2;
#endif
#if defined(__aarch64__)
  return &kNeon;
#else
  return &kScalar;
#endif
}

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

const Kernels& active_kernels() {
  static const Kernels* chosen = pick_backend();
  return *chosen;
}

std::vector<const Kernels*> available_kernels() {
  std::vector<const Kernels*> out{&kScalar};
#if defined(__x86_64__)
  if (avx2_usable()) out.push_back(&kAvx2);
#endif
#if defined(__aarch64__)
  out.push_back(&kNeon);
#endif
  return out;
}

}  // namespace ocsep::fpk
