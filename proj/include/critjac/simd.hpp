#pragma once

#include <cstddef>

// Batched kernels over independent abscissae. Each kernel has a scalar
// reference; vector variants are picked at runtime and must agree with it.
namespace critjac::simd {

enum class Isa { scalar, avx2, neon };

const char* to_string(Isa isa);

// Best variant supported by this CPU and build. CRITJAC_SIMD=scalar forces the reference.
Isa active_isa();
bool supported(Isa isa);

// Orthonormal polynomials P_0..P_{n_hi} at real points x[0..count) from
// a_{n-1} P_{n-1} + b_n P_n + a_n P_{n+1} = x P_n. Rows n_lo..n_hi are written to
// mant[(n - n_lo) * count + k] and exp2[...] with P_n(x_k) = mant * 2^exp2.
// a and b need entries 0..n_hi.
void recurrence_batch(const double* a, const double* b, long n_lo, long n_hi, const double* x, std::size_t count,
                      double* mant, int* exp2, Isa isa);
void recurrence_batch(const double* a, const double* b, long n_lo, long n_hi, const double* x, std::size_t count,
                      double* mant, int* exp2);

// Number of eigenvalues below x[k] of the N x N truncation with diagonal b and
// squared off-diagonal a2 (a2 needs N-1 entries).
void sturm_count_batch(const double* a2, const double* b, long N, const double* x, std::size_t count, long* counts,
                       Isa isa);
void sturm_count_batch(const double* a2, const double* b, long N, const double* x, std::size_t count, long* counts);

}  // namespace critjac::simd
