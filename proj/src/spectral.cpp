#include "critjac/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "critjac/error.hpp"

namespace critjac {

SpectrumClass classify_spectrum(const CriticalParams& cp) {
  SpectrumClass s;
  s.ac = cp.ac_set;
  s.ac_interval = cp.ac_set.to_string();
  switch (cp.ac_set.kind) {
    case AcSet::Kind::whole_line:
      s.kind = SpectrumClass::Kind::whole_line_ac;
      s.discrete_region = "empty";
      break;
    case AcSet::Kind::empty:
      s.kind = SpectrumClass::Kind::all_discrete;
      s.discrete_region = "(-inf,inf)";
      break;
    case AcSet::Kind::half_line: {
      s.kind = SpectrumClass::Kind::half_line_ac;
      AcSet rest{AcSet::Kind::half_line, cp.ac_set.threshold, -cp.ac_set.direction};
      s.discrete_region = rest.to_string();
      break;
    }
  }
  return s;
}

void check_ac_point(double lambda, const CriticalParams& cp, double guard) {
  if (!std::isfinite(lambda)) fail(ErrorKind::InvalidParameter, "lambda must be finite");
  if (cp.ac_set.kind == AcSet::Kind::half_line) {
    const double t = cp.ac_set.threshold;
    if (std::abs(lambda - t) < guard * std::max(1.0, std::abs(t)))
      fail(ErrorKind::ThresholdPoint, "lambda within the guard band of the threshold " + std::to_string(t));
  }
  if (!cp.ac_set.contains(lambda))
    fail(ErrorKind::OutsideAC, "lambda = " + std::to_string(lambda) + " is outside " + cp.ac_set.to_string());
}

AmplitudePhase amplitude_phase(double lambda, const CoefficientModel& model, const CriticalParams& params,
                               const SpectralOptions& opts) {
  check_ac_point(lambda, params, opts.guard);
  const SolutionWindow f = jost(SpectralPoint::upper(lambda), params, model, opts.jost);
  AmplitudePhase ap;
  ap.omega = omega(f);
  ap.eta = std::arg(ap.omega);
  ap.n_start = f.n_start;
  ap.N = f.N;
  ap.tail_bound = f.tail_bound;

  // The truncated window is, to leading order, a constant multiple c f of the true solution.
  // W[c f, conj(c f)] = 2 i w |c|^2 measures |c| at n = 0 without knowing the tail.
  const LogComplex cross = f.at(0) * f.at(1).conj();
  const double im = cross.unit().imag();
  const double w = wronskian_weight(lambda, params);
  if (!(im > 0.0)) fail(ErrorKind::TruncationTooShort, "boundary-value Wronskian has the wrong sign; raise N");
  const double log_c2 = std::log(model.a(0) * im / w) + cross.log_abs();
  ap.scale = std::exp(0.5 * log_c2);
  ap.kappa = std::exp(omega_log(f).log_abs() - 0.5 * log_c2);
  return ap;
}

DensitySample density(double lambda, const CoefficientModel& model, const CriticalParams& params,
                      const SpectralOptions& opts) {
  const AmplitudePhase ap = amplitude_phase(lambda, model, params, opts);
  DensitySample s;
  s.lambda = lambda;
  s.kappa = ap.kappa;
  s.eta = ap.eta;
  s.w = wronskian_weight(lambda, params);
  // w / (pi kappa^2): the measure normalization fixed by P_n = Im(conj(Omega) f_n) / w.
  s.xi = s.w / (std::numbers::pi * s.kappa * s.kappa);
  return s;
}

long common_n_start(std::span<const double> lambdas, const CriticalParams& params) {
  long n = 1;
  for (double lambda : lambdas) n = std::max(n, default_n_start(SpectralPoint::upper(lambda), params));
  return n;
}

std::vector<DensitySample> density_sweep(std::span<const double> lambdas, const CoefficientModel& model,
                                         const CriticalParams& params, const SpectralOptions& sweep_opts,
                                         int threads) {
  SpectralOptions opts = sweep_opts;
  if (opts.jost.n_start == 0) opts.jost.n_start = common_n_start(lambdas, params);
  std::vector<DensitySample> out(lambdas.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, lambdas.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) out[i] = density(lambdas[i], model, params, opts);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < lambdas.size(); i += workers) out[i] = density(lambdas[i], model, params, opts);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double two_pi = 2.0 * std::numbers::pi;
    out[i].eta += two_pi * std::round((out[i - 1].eta - out[i].eta) / two_pi);
  }
  return out;
}

cplx resolvent_element(long n, long m, const SpectralPoint& zp, const CoefficientModel& model,
                       const CriticalParams& params, const SpectralOptions& opts) {
  if (n < 0 || m < 0) fail(ErrorKind::InvalidParameter, "matrix indices must be non-negative");
  if (zp.side != Side::interior) check_ac_point(zp.z.real(), params, opts.guard);
  const long lo = std::min(n, m), hi = std::max(n, m);
  const SolutionWindow f = jost(zp, params, model, opts.jost);
  if (hi > f.last()) fail(ErrorKind::InvalidParameter, "index beyond the Jost window");
  const LogComplex Om = omega_log(f);
  if (zp.z.imag() == 0.0 && zp.side == Side::interior) {
    const double frame = std::max(f.at(0).log_abs(), f.at(1).log_abs());
    const double scale = std::abs((zp.z - model.b(0)) * f.at(0).value_scaled(frame)) +
                         std::abs(model.a(0) * f.at(1).value_scaled(frame));
    if (Om.is_zero() || Om.abs() <= 1e-8 * scale * std::exp(frame))
      fail(ErrorKind::EigenvalueHit, "Omega vanishes: z is an eigenvalue");
  }
  const PolynomialSequence P = poly_eval(model, zp.z, lo);
  return (P.at(lo) * f.at(hi) / Om).value();
}

double projector_density(long n, long m, double lambda, const CoefficientModel& model, const CriticalParams& params,
                         const SpectralOptions& opts) {
  const DensitySample s = density(lambda, model, params, opts);
  const PolynomialSequence P = poly_eval(model, cplx(lambda, 0.0), std::max(n, m));
  return s.xi * P.at(n).value().real() * P.at(m).value().real();
}

std::vector<double> converged_matrix_eigenvalues(const CoefficientModel& model, double lo, double hi, long N_start,
                                                 long N_cap, long* N_used) {
  long N = std::max(2L, N_start);
  std::vector<double> prev = truncated_matrix_eigs_window(model, N, lo, hi);
  while (N < N_cap) {
    N *= 2;
    std::vector<double> cur = truncated_matrix_eigs_window(model, N, lo, hi);
    bool stable = cur.size() == prev.size();
    for (std::size_t i = 0; stable && i < cur.size(); ++i) stable = std::abs(cur[i] - prev[i]) < 1e-8;
    prev = std::move(cur);
    if (stable) break;
  }
  if (N_used != nullptr) *N_used = N;
  return prev;
}

DiscreteSpectrum discrete_eigenvalues(double lo, double hi, const CoefficientModel& model,
                                      const CriticalParams& params, const DiscreteOptions& opts) {
  if (!(hi > lo)) fail(ErrorKind::InvalidParameter, "empty interval");
  const AcSet& ac = params.ac_set;
  bool overlaps = false;
  switch (ac.kind) {
    case AcSet::Kind::whole_line: overlaps = true; break;
    case AcSet::Kind::empty: break;
    case AcSet::Kind::half_line:
      overlaps = ac.direction > 0 ? hi >= ac.threshold : lo <= ac.threshold;
      break;
  }
  if (overlaps) fail(ErrorKind::OverlapsAC, "interval meets the closure of the a.c. set " + ac.to_string());

  // One ansatz normalization for the whole interval keeps Omega a single smooth function.
  JostOptions jo = opts.jost;
  if (jo.n_start <= 0)
    jo.n_start = std::max(default_n_start(SpectralPoint::at(cplx(lo, 0.0)), params),
                          default_n_start(SpectralPoint::at(cplx(hi, 0.0)), params));
  if (jo.volterra.N <= 0) jo.volterra.N = std::max(jo.volterra.N_min, 64 * (jo.n_start + 1));
  auto omega_sign = [&](double x) {
    for (;;) {
      try {
        const SolutionWindow f = jost(SpectralPoint::at(cplx(x, 0.0)), params, model, jo);
        const LogComplex Om = omega_log(f);
        if (Om.is_zero()) return 0;
        return Om.unit().real() > 0.0 ? 1 : -1;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::TruncationTooShort || jo.volterra.N >= jo.volterra.N_cap) throw;
        jo.volterra.N *= 2;
      }
    }
  };

  DiscreteSpectrum out;
  const long G = std::max(2L, opts.grid_points);
  std::vector<double> xs(static_cast<std::size_t>(G + 1));
  std::vector<int> sg(xs.size());
  for (long i = 0; i <= G; ++i) {
    xs[static_cast<std::size_t>(i)] = i == G ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(G);
    sg[static_cast<std::size_t>(i)] = omega_sign(xs[static_cast<std::size_t>(i)]);
  }
  std::vector<double> zeros;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (sg[i] == 0) {
      zeros.push_back(xs[i]);
      continue;
    }
    if (i + 1 < xs.size() && sg[i + 1] != 0 && sg[i] != sg[i + 1]) {
      double l = xs[i], r = xs[i + 1];
      int sl = sg[i];
      const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
      while (r - l > opts.tol * scale) {
        const double mid = 0.5 * (l + r);
        const int sm = omega_sign(mid);
        if (sm == 0) {
          l = r = mid;
          break;
        }
        if (sm == sl) {
          l = mid;
        } else {
          r = mid;
        }
      }
      zeros.push_back(0.5 * (l + r));
    }
  }
  out.jost_n_start = jo.n_start;
  out.jost_N = jo.volterra.N;

  out.matrix_eigenvalues =
      converged_matrix_eigenvalues(model, lo, hi, opts.matrix_N_start, opts.matrix_N_cap, &out.matrix_N);
  if (zeros.size() < out.matrix_eigenvalues.size())
    fail(ErrorKind::RefineGrid, "scan found " + std::to_string(zeros.size()) + " sign changes but the matrix has " +
                                    std::to_string(out.matrix_eigenvalues.size()) + " eigenvalues; refine the grid");
  for (double z : zeros) {
    EigenvalueReport r;
    r.omega_zero = z;
    double best = std::numeric_limits<double>::infinity();
    for (double m : out.matrix_eigenvalues) {
      if (std::abs(m - z) < best) {
        best = std::abs(m - z);
        r.matrix = m;
      }
    }
    r.deviation = best;
    r.agrees = best <= opts.match_tol;
    out.eigenvalues.push_back(r);
  }
  return out;
}

}  // namespace critjac
