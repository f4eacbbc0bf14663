#pragma once

#include <span>
#include <vector>

#include "critjac/simd.hpp"
#include "critjac/solutions.hpp"

namespace critjac {

// P_{-1} = 0, P_0 = 1 and the forward recurrence, one renormalization per step.
using PolynomialSequence = SolutionWindow;

PolynomialSequence poly_eval(const CoefficientModel& model, cplx z, long N);

// Real-argument polynomials for many abscissae at once (vectorized across x).
struct RealPolyBatch {
  long n_lo = 0;
  long n_hi = 0;
  std::vector<double> x;
  std::vector<double> mant;
  std::vector<int> exp2;

  double value(long n, std::size_t k) const;
  double log_abs(long n, std::size_t k) const;
};

RealPolyBatch poly_eval_batch(const CoefficientModel& model, std::span<const double> x, long n_lo, long n_hi);
RealPolyBatch poly_eval_batch(const CoefficientModel& model, std::span<const double> x, long n_lo, long n_hi,
                              simd::Isa isa);

// All eigenvalues of a symmetric tridiagonal matrix (implicit QL), ascending.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> offdiag);

// Number of eigenvalues of the N x N truncation below each x.
std::vector<long> truncated_matrix_counts(const CoefficientModel& model, long N, std::span<const double> x);

// k smallest eigenvalues of the N x N truncation.
std::vector<double> truncated_matrix_eigs(const CoefficientModel& model, long N, long k);
// Eigenvalues of the N x N truncation inside (lo, hi), by bisection.
std::vector<double> truncated_matrix_eigs_window(const CoefficientModel& model, long N, double lo, double hi,
                                                 double tol = 1e-13);

// kappa w^{-1} (-gamma)^n n^{-rho} sin(Phi_n - eta); `phases` built at lambda + i0.
double poly_asymptotic_ac(long n, double lambda, double kappa, double eta, const CriticalParams& params,
                          PhaseAccumulator& phases);

// -Omega (i / (2 varkappa(gamma z))) (-gamma)^{n+1} n^{-rho} e^{-i phi_n(gamma z)}.
LogComplex poly_asymptotic_regular(long n, const SpectralPoint& zp, cplx omega_value, const CriticalParams& params,
                                   PhaseAccumulator& phases);

}  // namespace critjac
