#include "critjac/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "critjac/error.hpp"

namespace critjac {

PolynomialSequence poly_eval(const CoefficientModel& model, cplx z, long N) {
  if (N < 0) fail(ErrorKind::InvalidParameter, "poly_eval needs N >= 0");
  PolynomialSequence P;
  P.kind = WindowKind::polynomial;
  P.zp = {z, Side::interior};
  P.first = -1;
  P.N = N;
  P.values.assign(static_cast<std::size_t>(N + 2), LogComplex::zero());
  P.at(0) = LogComplex::one();
  // (prev, cur) = (P_{n-1}, P_n) * e^{-frame}.
  cplx prev(0.0, 0.0), cur(1.0, 0.0);
  double frame = 0.0;
  for (long n = 0; n < N; ++n) {
    const double a_prev = n > 0 ? model.a(n - 1) : 0.0;
    const cplx next = ((z - model.b(n)) * cur - a_prev * prev) / model.a(n);
    const double scale = std::max(std::abs(cur), std::abs(next));
    if (scale > 0.0) {
      prev = cur / scale;
      cur = next / scale;
      frame += std::log(scale);
    } else {
      prev = cur;
      cur = next;
    }
    LogComplex v = LogComplex::from(cur);
    if (!v.is_zero()) v = LogComplex(v.log_abs() + frame, v.unit());
    P.at(n + 1) = v;
  }
  return P;
}

double RealPolyBatch::value(long n, std::size_t k) const {
  const std::size_t i = static_cast<std::size_t>(n - n_lo) * x.size() + k;
  return std::ldexp(mant[i], exp2[i]);
}

double RealPolyBatch::log_abs(long n, std::size_t k) const {
  const std::size_t i = static_cast<std::size_t>(n - n_lo) * x.size() + k;
  return std::log(std::abs(mant[i])) + exp2[i] * std::log(2.0);
}

RealPolyBatch poly_eval_batch(const CoefficientModel& model, std::span<const double> x, long n_lo, long n_hi,
                              simd::Isa isa) {
  if (n_lo < 0 || n_hi < n_lo) fail(ErrorKind::InvalidParameter, "invalid polynomial index window");
  RealPolyBatch out;
  out.n_lo = n_lo;
  out.n_hi = n_hi;
  out.x.assign(x.begin(), x.end());
  std::vector<double> a(static_cast<std::size_t>(n_hi + 1)), b(static_cast<std::size_t>(n_hi + 1));
  for (long n = 0; n <= n_hi; ++n) {
    a[static_cast<std::size_t>(n)] = model.a(n);
    b[static_cast<std::size_t>(n)] = model.b(n);
  }
  const std::size_t rows = static_cast<std::size_t>(n_hi - n_lo + 1);
  out.mant.assign(rows * x.size(), 0.0);
  out.exp2.assign(rows * x.size(), 0);
  simd::recurrence_batch(a.data(), b.data(), n_lo, n_hi, out.x.data(), x.size(), out.mant.data(), out.exp2.data(),
                         isa);
  return out;
}

RealPolyBatch poly_eval_batch(const CoefficientModel& model, std::span<const double> x, long n_lo, long n_hi) {
  return poly_eval_batch(model, x, n_lo, n_hi, simd::active_isa());
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const long n = static_cast<long>(d.size());
  if (n == 0) return {};
  e.resize(static_cast<std::size_t>(n), 0.0);
  e[static_cast<std::size_t>(n - 1)] = 0.0;
  for (long l = 0; l < n; ++l) {
    int iter = 0;
    long m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m != l) {
        if (++iter > 60) fail(ErrorKind::InvalidParameter, "tridiagonal QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        long i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

struct Truncation {
  std::vector<double> diag, offdiag, offdiag2;
};

Truncation truncation(const CoefficientModel& model, long N) {
  Truncation t;
  t.diag.resize(static_cast<std::size_t>(N));
  t.offdiag.resize(static_cast<std::size_t>(std::max(0L, N - 1)));
  t.offdiag2.resize(t.offdiag.size());
  for (long n = 0; n < N; ++n) t.diag[static_cast<std::size_t>(n)] = model.b(n);
  for (long n = 0; n + 1 < N; ++n) {
    const double a = model.a(n);
    t.offdiag[static_cast<std::size_t>(n)] = a;
    t.offdiag2[static_cast<std::size_t>(n)] = a * a;
  }
  return t;
}

}  // namespace

std::vector<long> truncated_matrix_counts(const CoefficientModel& model, long N, std::span<const double> x) {
  const Truncation t = truncation(model, N);
  std::vector<long> counts(x.size());
  simd::sturm_count_batch(t.offdiag2.data(), t.diag.data(), N, x.data(), x.size(), counts.data());
  return counts;
}

std::vector<double> truncated_matrix_eigs(const CoefficientModel& model, long N, long k) {
  if (N < 1 || k < 1 || k > N) fail(ErrorKind::InvalidParameter, "truncated_matrix_eigs needs N >= k >= 1");
  Truncation t = truncation(model, N);
  std::vector<double> ev = tridiagonal_eigenvalues(std::move(t.diag), std::move(t.offdiag));
  ev.resize(static_cast<std::size_t>(k));
  return ev;
}

std::vector<double> truncated_matrix_eigs_window(const CoefficientModel& model, long N, double lo, double hi,
                                                 double tol) {
  if (!(hi > lo)) fail(ErrorKind::InvalidParameter, "empty eigenvalue window");
  const Truncation t = truncation(model, N);
  auto count = [&](std::span<const double> xs) {
    std::vector<long> c(xs.size());
    simd::sturm_count_batch(t.offdiag2.data(), t.diag.data(), N, xs.data(), xs.size(), c.data());
    return c;
  };
  const double ends[2] = {lo, hi};
  const std::vector<long> ce = count(ends);
  std::vector<double> out;
  // Eigenvalue j (0-based, global index) is bracketed by counts; quadrisect four probes per pass.
  for (long j = ce[0]; j < ce[1]; ++j) {
    double left = lo, right = hi;
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    while (right - left > tol * scale) {
      double probes[4];
      for (int i = 0; i < 4; ++i) probes[i] = left + (right - left) * (i + 1) / 5.0;
      const std::vector<long> c = count(probes);
      double new_left = left, new_right = right;
      for (int i = 0; i < 4; ++i) {
        if (c[static_cast<std::size_t>(i)] <= j) new_left = probes[i];
        else {
          new_right = probes[i];
          break;
        }
      }
      if (new_left == left && new_right == right) break;
      left = new_left;
      right = new_right;
    }
    out.push_back(0.5 * (left + right));
  }
  return out;
}

double poly_asymptotic_ac(long n, double lambda, double kappa, double eta, const CriticalParams& params,
                          PhaseAccumulator& phases) {
  if (!params.ac_set.contains(lambda)) fail(ErrorKind::OutsideAC, "lambda outside the a.c. set");
  const double w = wronskian_weight(lambda, params);
  const double sign = (params.gamma > 0 && n % 2 != 0) ? -1.0 : 1.0;
  const double Phi = phases.phi(n).real();
  return kappa / w * sign * std::pow(static_cast<double>(n), -params.rho) * std::sin(Phi - eta);
}

LogComplex poly_asymptotic_regular(long n, const SpectralPoint& zp, cplx omega_value, const CriticalParams& params,
                                   PhaseAccumulator& phases) {
  if (zp.z.imag() == 0.0 && params.ac_set.closure_contains(zp.z.real()))
    fail(ErrorKind::OnSpectrum, "regular asymptotics need z off the a.c. set");
  const double g = params.gamma;
  const cplx kap = varkappa({g * zp.z, Side::interior}, params);
  const double sign = (params.gamma > 0 && (n + 1) % 2 != 0) ? -1.0 : 1.0;
  const cplx phi = phases.phi(n);
  const LogComplex envelope(-params.rho * std::log(static_cast<double>(n)) + phi.imag(),
                            std::polar(1.0, -phi.real()));
  return LogComplex::from(-omega_value * cplx(0.0, 1.0) / (2.0 * kap) * sign) * envelope;
}

}  // namespace critjac
