#pragma once

#include <iosfwd>
#include <vector>

#include "critjac/volterra.hpp"

namespace critjac {

enum class WindowKind { jost, growing, polynomial };

struct SolutionWindow {
  WindowKind kind = WindowKind::jost;
  SpectralPoint zp;
  long first = -1;
  std::vector<LogComplex> values;  // values[k] holds index first + k
  // Diagnostics.
  long n_start = 0;
  long n0 = 0;
  long N = 0;
  double tail_bound = 0.0;
  double volterra_residual = 0.0;
  bool near_cancellation = false;

  long last() const { return first + static_cast<long>(values.size()) - 1; }
  const LogComplex& at(long n) const { return values[static_cast<std::size_t>(n - first)]; }
  LogComplex& at(long n) { return values[static_cast<std::size_t>(n - first)]; }
};

struct JostOptions {
  VolterraOptions volterra;
  long n_start = 0;  // 0: default_n_start
};

// f_n = A_n u_n on [n0, N], continued down to n = -1 by the recurrence (a_{-1} = 1).
SolutionWindow jost(const SpectralPoint& zp, const CriticalParams& params, const CoefficientModel& model,
                    const JostOptions& opts = {});
SolutionWindow jost(const SpectralPoint& zp, const CriticalParams& params, const CoefficientModel& model, long N);

// g_n = f_n sum_{m=n0g}^{n} (a_{m-1} f_{m-1} f_m)^{-1}, continued down to n = -1.
SolutionWindow growing(const SolutionWindow& f, const CriticalParams& params, const CoefficientModel& model,
                       long n0g = 0);
SolutionWindow growing(const SpectralPoint& zp, const CriticalParams& params, const CoefficientModel& model,
                       long n0g, long N);

SolutionWindow conjugate(const SolutionWindow& w);

struct WronskianResult {
  cplx value;            // median over the overlap
  double max_deviation;  // max |W_n - value|
  long first;
  long last;
};

WronskianResult wronskian(const SolutionWindow& F, const SolutionWindow& G, const CoefficientModel& model);

// Largest relative defect of the Jacobi equation over interior indices of the window.
double recurrence_residual(const SolutionWindow& w, const CoefficientModel& model);

// Omega(z) = -a_{-1} f_{-1}(z).
LogComplex omega_log(const SolutionWindow& f);
cplx omega(const SolutionWindow& f);
cplx omega(const SpectralPoint& zp, const CriticalParams& params, const CoefficientModel& model,
           const JostOptions& opts = {});

// varkappa(z) in the gamma = 1 frame: lim theta_n(z) n^nu.
cplx varkappa(const SpectralPoint& zp, const CriticalParams& params);
// w(lambda) = gamma varkappa(gamma (lambda + i0)) > 0 for lambda in the a.c. set.
double wronskian_weight(double lambda, const CriticalParams& params);

// Continue a solution downward from indices n, n+1 to `first` using the recurrence at z.
void extend_backward(std::vector<LogComplex>& values, long first, long from, cplx z, const CoefficientModel& model);

// CSV rows "n,re,im,log_abs".
void write_csv(std::ostream& os, const SolutionWindow& w, long stride = 1);

}  // namespace critjac
