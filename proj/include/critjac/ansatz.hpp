#pragma once

#include <complex>
#include <vector>

#include "critjac/coeffs.hpp"
#include "critjac/log_complex.hpp"

namespace critjac {

enum class Side { plus, minus, interior };

struct SpectralPoint {
  cplx z;
  Side side = Side::interior;

  static SpectralPoint upper(double lambda) { return {cplx(lambda, 0.0), Side::plus}; }
  static SpectralPoint lower(double lambda) { return {cplx(lambda, 0.0), Side::minus}; }
  static SpectralPoint at(cplx z) { return {z, Side::interior}; }
};

SpectralPoint conj(const SpectralPoint& zp);

// Root with Im >= 0; on the cut t > 0 it returns the limit from above, +sqrt(t).
// Lower-side limits are formed by callers through conjugation.
cplx sqrt_cut(cplx t, Side side = Side::plus);

// -tau/n + gamma z / n^sigma.
cplx t_seq(long n, const SpectralPoint& zp, const CriticalParams& params);

// Phase increment theta_n(gamma z), Im >= 0.
cplx theta(long n, const SpectralPoint& zp, const CriticalParams& params);

long default_n_start(const SpectralPoint& zp, const CriticalParams& params);

// Memoized theta_n and prefix sums phi_n = sum_{m=n_start}^{n-1} theta_m.
// Not synchronized: one accumulator per spectral point and worker.
class PhaseAccumulator {
 public:
  PhaseAccumulator(const SpectralPoint& zp, const CriticalParams& params, long n_start = 0);

  long n_start() const { return n_start_; }
  const SpectralPoint& point() const { return zp_; }
  const CriticalParams& params() const { return params_; }

  cplx theta(long n);
  cplx phi(long n);
  // (-gamma)^n n^{-rho} e^{i phi_n}.
  LogComplex ansatz(long n);
  void extend_to(long n);

 private:
  SpectralPoint zp_;
  CriticalParams params_;
  long n_start_;
  std::vector<cplx> theta_;  // theta_[k] = theta_{n_start + k}
  std::vector<cplx> phi_;    // phi_[k] = phi_{n_start + k}
  cplx sum_{0.0, 0.0};
  cplx comp_{0.0, 0.0};
};

LogComplex ansatz_value(long n, const SpectralPoint& zp, const CriticalParams& params);

// Relative defect r_n of the ansatz in the Jacobi equation, from ratios of consecutive terms.
cplx remainder(long n, PhaseAccumulator& phases, const CoefficientModel& model);
cplx remainder(long n, const SpectralPoint& zp, const CriticalParams& params, const CoefficientModel& model);

// e^{w} - 1 without cancellation for small w.
cplx cexpm1(cplx w);

// Leading growing terms of phi_n(z) at z = lambda (already rotated by gamma), without the constant.
cplx asymptotic_phase(long n, cplx lambda, const CriticalParams& params);

}  // namespace critjac
