#include "critjac/simd.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(__i386__)
#define CRITJAC_X86 1
#include <immintrin.h>
#endif
#if defined(__aarch64__)
#define CRITJAC_NEON 1
#include <arm_neon.h>
#endif

namespace critjac::simd {

namespace {

constexpr double kBig = 0x1p600;
constexpr double kShrink = 0x1p-600;
constexpr double kShift = 600.0;
// Pivot replacement for an exactly vanishing Sturm quotient.
constexpr double kTiny = 1e-300;

void recurrence_scalar(const double* a, const double* b, long n_lo, long n_hi, const double* x, std::size_t count,
                       std::size_t k0, double* mant, int* exp2) {
  for (std::size_t k = k0; k < count; ++k) {
    double prev = 0.0, cur = 1.0, e = 0.0;
    for (long n = 0; n <= n_hi; ++n) {
      if (n >= n_lo) {
        mant[static_cast<std::size_t>(n - n_lo) * count + k] = cur;
        exp2[static_cast<std::size_t>(n - n_lo) * count + k] = static_cast<int>(e);
      }
      if (n == n_hi) break;
      const double a_prev = n > 0 ? a[n - 1] : 0.0;
      double next = ((x[k] - b[n]) * cur - a_prev * prev) / a[n];
      if (std::fabs(next) > kBig) {
        next *= kShrink;
        cur *= kShrink;
        e += kShift;
      }
      prev = cur;
      cur = next;
    }
  }
}

void sturm_scalar(const double* a2, const double* b, long N, const double* x, std::size_t count, std::size_t k0,
                  long* counts) {
  for (std::size_t k = k0; k < count; ++k) {
    long c = 0;
    double q = 1.0;
    for (long i = 0; i < N; ++i) {
      q = i == 0 ? (b[0] - x[k]) : (b[i] - x[k]) - a2[i - 1] / q;
      if (std::fabs(q) < kTiny) q = -kTiny;
      if (q < 0.0) ++c;
    }
    counts[k] = c;
  }
}

#if CRITJAC_X86
__attribute__((target("avx2"))) void recurrence_avx2(const double* a, const double* b, long n_lo, long n_hi,
                                                     const double* x, std::size_t count, double* mant, int* exp2) {
  const std::size_t vec = count - count % 4;
  const __m256d big = _mm256_set1_pd(kBig);
  const __m256d shrink = _mm256_set1_pd(kShrink);
  const __m256d shift = _mm256_set1_pd(kShift);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  for (std::size_t k = 0; k < vec; k += 4) {
    const __m256d xv = _mm256_loadu_pd(x + k);
    __m256d prev = _mm256_setzero_pd(), cur = one, e = _mm256_setzero_pd();
    for (long n = 0; n <= n_hi; ++n) {
      if (n >= n_lo) {
        const std::size_t row = static_cast<std::size_t>(n - n_lo) * count + k;
        _mm256_storeu_pd(mant + row, cur);
        const __m128i ei = _mm256_cvtpd_epi32(e);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(exp2 + row), ei);
      }
      if (n == n_hi) break;
      const __m256d a_prev = _mm256_set1_pd(n > 0 ? a[n - 1] : 0.0);
      const __m256d diff = _mm256_sub_pd(xv, _mm256_set1_pd(b[n]));
      __m256d next = _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(diff, cur), _mm256_mul_pd(a_prev, prev)),
                                   _mm256_set1_pd(a[n]));
      const __m256d mask = _mm256_cmp_pd(_mm256_andnot_pd(sign, next), big, _CMP_GT_OQ);
      if (_mm256_movemask_pd(mask) != 0) {
        const __m256d factor = _mm256_blendv_pd(one, shrink, mask);
        next = _mm256_mul_pd(next, factor);
        cur = _mm256_mul_pd(cur, factor);
        e = _mm256_add_pd(e, _mm256_and_pd(mask, shift));
      }
      prev = cur;
      cur = next;
    }
  }
  recurrence_scalar(a, b, n_lo, n_hi, x, count, vec, mant, exp2);
}

__attribute__((target("avx2"))) void sturm_avx2(const double* a2, const double* b, long N, const double* x,
                                                std::size_t count, long* counts) {
  const std::size_t vec = count - count % 4;
  const __m256d tiny = _mm256_set1_pd(kTiny);
  const __m256d neg_tiny = _mm256_set1_pd(-kTiny);
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t k = 0; k < vec; k += 4) {
    const __m256d xv = _mm256_loadu_pd(x + k);
    __m256d q = _mm256_set1_pd(1.0);
    __m256i c = _mm256_setzero_si256();
    for (long i = 0; i < N; ++i) {
      const __m256d d = _mm256_sub_pd(_mm256_set1_pd(b[i]), xv);
      q = i == 0 ? d : _mm256_sub_pd(d, _mm256_div_pd(_mm256_set1_pd(a2[i - 1]), q));
      const __m256d small = _mm256_cmp_pd(_mm256_andnot_pd(sign, q), tiny, _CMP_LT_OQ);
      q = _mm256_blendv_pd(q, neg_tiny, small);
      // Compare mask is all ones (-1) in negative lanes.
      c = _mm256_sub_epi64(c, _mm256_castpd_si256(_mm256_cmp_pd(q, zero, _CMP_LT_OQ)));
    }
    alignas(32) long long out[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(out), c);
    for (int j = 0; j < 4; ++j) counts[k + j] = static_cast<long>(out[j]);
  }
  sturm_scalar(a2, b, N, x, count, vec, counts);
}

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}
#endif

#if CRITJAC_NEON
void recurrence_neon(const double* a, const double* b, long n_lo, long n_hi, const double* x, std::size_t count,
                     double* mant, int* exp2) {
  const std::size_t vec = count - count % 2;
  const float64x2_t big = vdupq_n_f64(kBig);
  const float64x2_t shrink = vdupq_n_f64(kShrink);
  const float64x2_t one = vdupq_n_f64(1.0);
  for (std::size_t k = 0; k < vec; k += 2) {
    const float64x2_t xv = vld1q_f64(x + k);
    float64x2_t prev = vdupq_n_f64(0.0), cur = one;
    double e[2] = {0.0, 0.0};
    for (long n = 0; n <= n_hi; ++n) {
      if (n >= n_lo) {
        const std::size_t row = static_cast<std::size_t>(n - n_lo) * count + k;
        vst1q_f64(mant + row, cur);
        exp2[row] = static_cast<int>(e[0]);
        exp2[row + 1] = static_cast<int>(e[1]);
      }
      if (n == n_hi) break;
      const float64x2_t a_prev = vdupq_n_f64(n > 0 ? a[n - 1] : 0.0);
      const float64x2_t diff = vsubq_f64(xv, vdupq_n_f64(b[n]));
      float64x2_t next = vdivq_f64(vsubq_f64(vmulq_f64(diff, cur), vmulq_f64(a_prev, prev)), vdupq_n_f64(a[n]));
      const uint64x2_t mask = vcagtq_f64(next, big);
      if (vgetq_lane_u64(mask, 0) | vgetq_lane_u64(mask, 1)) {
        const float64x2_t factor = vbslq_f64(mask, shrink, one);
        next = vmulq_f64(next, factor);
        cur = vmulq_f64(cur, factor);
        if (vgetq_lane_u64(mask, 0)) e[0] += kShift;
        if (vgetq_lane_u64(mask, 1)) e[1] += kShift;
      }
      prev = cur;
      cur = next;
    }
  }
  recurrence_scalar(a, b, n_lo, n_hi, x, count, vec, mant, exp2);
}

void sturm_neon(const double* a2, const double* b, long N, const double* x, std::size_t count, long* counts) {
  const std::size_t vec = count - count % 2;
  const float64x2_t tiny = vdupq_n_f64(kTiny);
  const float64x2_t neg_tiny = vdupq_n_f64(-kTiny);
  const float64x2_t zero = vdupq_n_f64(0.0);
  for (std::size_t k = 0; k < vec; k += 2) {
    const float64x2_t xv = vld1q_f64(x + k);
    float64x2_t q = vdupq_n_f64(1.0);
    int64x2_t c = vdupq_n_s64(0);
    for (long i = 0; i < N; ++i) {
      const float64x2_t d = vsubq_f64(vdupq_n_f64(b[i]), xv);
      q = i == 0 ? d : vsubq_f64(d, vdivq_f64(vdupq_n_f64(a2[i - 1]), q));
      q = vbslq_f64(vcaltq_f64(q, tiny), neg_tiny, q);
      c = vsubq_s64(c, vreinterpretq_s64_u64(vcltq_f64(q, zero)));
    }
    counts[k] = static_cast<long>(vgetq_lane_s64(c, 0));
    counts[k + 1] = static_cast<long>(vgetq_lane_s64(c, 1));
  }
  sturm_scalar(a2, b, N, x, count, vec, counts);
}
#endif

Isa detect() {
  if (const char* env = std::getenv("CRITJAC_SIMD"); env != nullptr && std::strcmp(env, "scalar") == 0)
    return Isa::scalar;
#if CRITJAC_X86
  if (cpu_has_avx2()) return Isa::avx2;
#endif
#if CRITJAC_NEON
  return Isa::neon;
#endif
  return Isa::scalar;
}

}  // namespace

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if CRITJAC_X86
      return cpu_has_avx2();
#else
      return false;
#endif
    case Isa::neon:
#if CRITJAC_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

void recurrence_batch(const double* a, const double* b, long n_lo, long n_hi, const double* x, std::size_t count,
                      double* mant, int* exp2, Isa isa) {
  switch (supported(isa) ? isa : Isa::scalar) {
#if CRITJAC_X86
    case Isa::avx2: recurrence_avx2(a, b, n_lo, n_hi, x, count, mant, exp2); return;
#endif
#if CRITJAC_NEON
    case Isa::neon: recurrence_neon(a, b, n_lo, n_hi, x, count, mant, exp2); return;
#endif
    default: recurrence_scalar(a, b, n_lo, n_hi, x, count, 0, mant, exp2); return;
  }
}

void recurrence_batch(const double* a, const double* b, long n_lo, long n_hi, const double* x, std::size_t count,
                      double* mant, int* exp2) {
  recurrence_batch(a, b, n_lo, n_hi, x, count, mant, exp2, active_isa());
}

void sturm_count_batch(const double* a2, const double* b, long N, const double* x, std::size_t count, long* counts,
                       Isa isa) {
  switch (supported(isa) ? isa : Isa::scalar) {
#if CRITJAC_X86
    case Isa::avx2: sturm_avx2(a2, b, N, x, count, counts); return;
#endif
#if CRITJAC_NEON
    case Isa::neon: sturm_neon(a2, b, N, x, count, counts); return;
#endif
    default: sturm_scalar(a2, b, N, x, count, 0, counts); return;
  }
}

void sturm_count_batch(const double* a2, const double* b, long N, const double* x, std::size_t count, long* counts) {
  sturm_count_batch(a2, b, N, x, count, counts, active_isa());
}

}  // namespace critjac::simd
