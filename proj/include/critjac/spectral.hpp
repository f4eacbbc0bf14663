#pragma once

#include <span>
#include <string>
#include <vector>

#include "critjac/recurrence.hpp"

namespace critjac {

struct SpectrumClass {
  enum class Kind { whole_line_ac, all_discrete, half_line_ac };
  Kind kind = Kind::all_discrete;
  AcSet ac;
  std::string ac_interval;
  std::string discrete_region;
};

SpectrumClass classify_spectrum(const CriticalParams& params);

struct SpectralOptions {
  JostOptions jost;
  double guard = 1e-3;  // threshold guard band, relative to max(1, |threshold|)
};

struct AmplitudePhase {
  double kappa = 0.0;  // |Omega| with the computed window rescaled to W[f, conj f] = 2 i w
  double eta = 0.0;
  cplx omega;          // as computed, before rescaling
  double scale = 1.0;  // |c| in f_computed = c f
  long n_start = 0;
  long N = 0;
  double tail_bound = 0.0;
};

struct DensitySample {
  double lambda = 0.0;
  double xi = 0.0;
  double kappa = 0.0;
  double eta = 0.0;
  double w = 0.0;
};

// Throws OutsideAC / ThresholdPoint unless lambda is an interior point of the a.c. set.
void check_ac_point(double lambda, const CriticalParams& params, double guard = 1e-3);

AmplitudePhase amplitude_phase(double lambda, const CoefficientModel& model, const CriticalParams& params,
                               const SpectralOptions& opts = {});
DensitySample density(double lambda, const CoefficientModel& model, const CriticalParams& params,
                      const SpectralOptions& opts = {});
// One phase origin for a whole sweep: the largest default n_start over the grid. A per-point
// n_start moves the origin of phi and shifts eta by more than a branch.
long common_n_start(std::span<const double> lambdas, const CriticalParams& params);

// Samples in input order; eta continued along the sweep by nearest-branch selection.
// opts.jost.n_start = 0 selects common_n_start.
std::vector<DensitySample> density_sweep(std::span<const double> lambdas, const CoefficientModel& model,
                                         const CriticalParams& params, const SpectralOptions& opts = {},
                                         int threads = 1);

// <R(z) e_n, e_m> = Omega^{-1} P_min(z) f_max(z). On the real axis an Omega below 1e-8 of the
// terms it cancels from counts as an eigenvalue hit.
cplx resolvent_element(long n, long m, const SpectralPoint& zp, const CoefficientModel& model,
                       const CriticalParams& params, const SpectralOptions& opts = {});

// d<E(lambda) e_n, e_m>/d lambda = w |Omega|^{-2} P_n P_m / pi.
double projector_density(long n, long m, double lambda, const CoefficientModel& model, const CriticalParams& params,
                         const SpectralOptions& opts = {});

struct EigenvalueReport {
  double omega_zero = 0.0;
  double matrix = 0.0;
  double deviation = 0.0;
  bool agrees = false;
};

struct DiscreteOptions {
  JostOptions jost;
  long grid_points = 200;
  double tol = 1e-9;
  double match_tol = 1e-6;
  long matrix_N_start = 256;
  long matrix_N_cap = 1L << 17;
};

struct DiscreteSpectrum {
  std::vector<EigenvalueReport> eigenvalues;
  std::vector<double> matrix_eigenvalues;
  long matrix_N = 0;
  long jost_n_start = 0;
  long jost_N = 0;
};

// Real zeros of Omega on [lo, hi] (disjoint from the closure of the a.c. set), cross-checked
// against the truncated matrix. Fewer sign changes than matrix eigenvalues raises RefineGrid.
DiscreteSpectrum discrete_eigenvalues(double lo, double hi, const CoefficientModel& model,
                                      const CriticalParams& params, const DiscreteOptions& opts = {});

// Matrix eigenvalues in (lo, hi), doubling N until they move less than 1e-8.
std::vector<double> converged_matrix_eigenvalues(const CoefficientModel& model, double lo, double hi, long N_start,
                                                 long N_cap, long* N_used = nullptr);

}  // namespace critjac
