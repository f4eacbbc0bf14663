#pragma once

#include <iosfwd>
#include <vector>

#include "critjac/ansatz.hpp"

namespace critjac {

struct KernelFactors {
  cplx Lambda;  // (a_n/a_{n-1}) A_{n+1}/A_{n-1}
  cplx Rcal;    // -sqrt(a_n/a_{n-1}) (A_n/A_{n-1}) r_n
};

KernelFactors kernel_factors(long n, PhaseAccumulator& phases, const CoefficientModel& model);
KernelFactors kernel_factors(long n, const SpectralPoint& zp, const CriticalParams& params,
                             const CoefficientModel& model);

// Fitted majorant h_m = C_hat m^{-s} with s = delta - nu; H(n) bounds sum_{m>n} h_m.
struct Majorant {
  double C_hat = 0.0;
  double s = 2.0;
  double H(long n) const;
  // Smallest N with H(N) < tol.
  long required_N(double tol) const;
};

// Factor source for the Volterra equation on [n0, N]. Either backed by an ansatz
// (factors evaluated on demand) or by explicit arrays for synthetic tests.
class VolterraKernel {
 public:
  VolterraKernel(PhaseAccumulator& phases, const CoefficientModel& model, long n0, long N);
  // Lambda[k], Rcal[k] hold the factors at n0 + k.
  static VolterraKernel from_factors(long n0, std::vector<cplx> Lambda, std::vector<cplx> Rcal, double s);

  long n0() const { return n0_; }
  long N() const { return N_; }
  double exponent() const { return s_; }

  KernelFactors factors(long n) const;
  // X_n = Lambda_{n0+1} ... Lambda_n.
  LogComplex x_prod(long n) const;
  // G_{n,m} = X_{m-1} sum_{p=n}^{m-1} X_p^{-1}.
  LogComplex kernel_g(long n, long m) const;
  // max over n0 <= n < m of |G_{n,m}|.
  double sup_g(long m) const;
  Majorant fit_majorant(int probes = 40) const;

 private:
  VolterraKernel() = default;

  PhaseAccumulator* phases_ = nullptr;
  const CoefficientModel* model_ = nullptr;
  long n0_ = 0;
  long N_ = 0;
  double s_ = 2.0;
  std::vector<cplx> lambda_;
  std::vector<cplx> rcal_;
};

struct VolterraOptions {
  long n0 = 0;         // 0: n_start + 1
  long N = 0;          // 0: smallest N with H_N < tol
  double tol = 1e-4;
  long N_cap = 10'000'000;
  long N_min = 4096;
  int probes = 40;
};

struct VolterraSolution {
  long n0 = 0;
  long N = 0;
  std::vector<cplx> u;  // u[k] = u_{n0+k}, k = 0..N-n0+1 (u_{N+1} = 1)
  double tail_bound = 0.0;
  double residual = 0.0;
  Majorant majorant;

  cplx at(long n) const { return u[static_cast<std::size_t>(n - n0)]; }
};

// Backward sweep on explicit factors; u_N = u_{N+1} = 1.
VolterraSolution sweep(const VolterraKernel& kernel);

VolterraSolution solve(PhaseAccumulator& phases, const CoefficientModel& model, const VolterraOptions& opts = {});
VolterraSolution solve(const SpectralPoint& zp, const CriticalParams& params, const CoefficientModel& model,
                       long n0, long N);

double tail_bound(long N, const Majorant& majorant);

// CSV rows "n,abs_u_minus_1,residual" every `stride` indices.
void write_diagnostics(std::ostream& os, const VolterraSolution& sol, const VolterraKernel& kernel, long stride = 1);

}  // namespace critjac
