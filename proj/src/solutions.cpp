#include "critjac/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "critjac/error.hpp"

namespace critjac {

namespace {

double a_ext(const CoefficientModel& model, long n) { return n < 0 ? 1.0 : model.a(n); }

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  return v[mid];
}

// Compensated sum of LogComplex terms in a movable exponential frame.
class LogAccumulator {
 public:
  void add(const LogComplex& t) {
    if (t.is_zero()) return;
    if (t.log_abs() > frame_) {
      const double scale = std::isfinite(frame_) ? std::exp(frame_ - t.log_abs()) : 0.0;
      sum_ *= scale;
      comp_ *= scale;
      frame_ = t.log_abs();
    }
    const cplx before = sum_ - comp_;
    const cplx v = t.value_scaled(frame_) - comp_;
    const cplx s = sum_ + v;
    comp_ = (s - sum_) - v;
    sum_ = s;
    const double after = std::abs(sum_ - comp_);
    const double scale = std::max(std::abs(before), std::abs(t.value_scaled(frame_)));
    if (scale > 0.0 && after < 1e-8 * scale) cancelled_ = true;
  }

  LogComplex value() const {
    LogComplex r = LogComplex::from(sum_ - comp_);
    if (r.is_zero()) return r;
    return LogComplex(r.log_abs() + frame_, r.unit());
  }

  bool cancelled() const { return cancelled_; }

 private:
  double frame_ = -std::numeric_limits<double>::infinity();
  cplx sum_{0.0, 0.0};
  cplx comp_{0.0, 0.0};
  bool cancelled_ = false;
};

bool on_closure(const SpectralPoint& zp, const CriticalParams& params) {
  if (zp.z.imag() != 0.0) return false;
  return params.ac_set.closure_contains(zp.z.real());
}

AcSet unit_gamma_set(const CriticalParams& cp) {
  AcSet s = cp.ac_set;
  if (s.kind == AcSet::Kind::half_line && cp.gamma < 0) {
    s.threshold = -s.threshold + 0.0;
    s.direction = 1;
  }
  return s;
}

}  // namespace

void extend_backward(std::vector<LogComplex>& values, long first, long from, cplx z, const CoefficientModel& model) {
  for (long n = from; n > first; --n) {
    const LogComplex& fn = values[static_cast<std::size_t>(n - first)];
    const LogComplex& fn1 = values[static_cast<std::size_t>(n + 1 - first)];
    const double frame = std::max(fn.log_abs(), fn1.log_abs());
    const cplx v = ((z - model.b(n)) * fn.value_scaled(frame) - model.a(n) * fn1.value_scaled(frame)) / a_ext(model, n - 1);
    LogComplex r = LogComplex::from(v);
    if (!r.is_zero()) r = LogComplex(r.log_abs() + frame, r.unit());
    values[static_cast<std::size_t>(n - 1 - first)] = r;
  }
}

SolutionWindow jost(const SpectralPoint& zp, const CriticalParams& params, const CoefficientModel& model,
                    const JostOptions& opts) {
  if (zp.side == Side::minus) {
    SpectralPoint up = conj(zp);
    return conjugate(jost(up, params, model, opts));
  }
  PhaseAccumulator phases(zp, params, opts.n_start);
  const VolterraSolution sol = solve(phases, model, opts.volterra);

  SolutionWindow w;
  w.kind = WindowKind::jost;
  w.zp = zp;
  w.first = -1;
  w.n_start = phases.n_start();
  w.n0 = sol.n0;
  w.N = sol.N;
  w.tail_bound = sol.tail_bound;
  w.volterra_residual = sol.residual;
  w.values.assign(static_cast<std::size_t>(sol.N + 2), LogComplex::zero());
  for (long n = sol.n0; n <= sol.N; ++n) w.at(n) = phases.ansatz(n) * LogComplex::from(sol.at(n));
  extend_backward(w.values, w.first, sol.n0, zp.z, model);
  return w;
}

SolutionWindow jost(const SpectralPoint& zp, const CriticalParams& params, const CoefficientModel& model, long N) {
  JostOptions opts;
  opts.volterra.N = N;
  return jost(zp, params, model, opts);
}

SolutionWindow conjugate(const SolutionWindow& w) {
  SolutionWindow c = w;
  c.zp = conj(w.zp);
  for (auto& v : c.values) v = v.conj();
  return c;
}

SolutionWindow growing(const SolutionWindow& f, const CriticalParams& params, const CoefficientModel& model,
                       long n0g) {
  if (f.kind != WindowKind::jost) fail(ErrorKind::InvalidParameter, "growing solution needs a Jost window");
  if (on_closure(f.zp, params)) fail(ErrorKind::OnSpectrum, "z lies on the closure of the a.c. set");
  const long last = f.last();
  // Raise n0g past indices where f nearly vanishes relative to its neighbours.
  auto small = [&](long m) {
    const double here = f.at(m).log_abs();
    const double near = std::max(m > f.first ? f.at(m - 1).log_abs() : here, m < last ? f.at(m + 1).log_abs() : here);
    return f.at(m).is_zero() || here < near - std::log(1e8);
  };
  long start = std::max(n0g, f.first + 1);
  while (start < last - 1 && (small(start) || small(start - 1))) ++start;
  if (start >= last - 1) fail(ErrorKind::ZeroCrossing, "Jost solution vanishes throughout the window");

  SolutionWindow g;
  g.kind = WindowKind::growing;
  g.zp = f.zp;
  g.first = -1;
  g.n_start = f.n_start;
  g.n0 = start;
  g.N = f.N;
  g.tail_bound = f.tail_bound;
  g.values.assign(f.values.size(), LogComplex::zero());
  LogAccumulator acc;
  for (long n = start; n <= last; ++n) {
    const LogComplex term = (LogComplex::from(cplx(a_ext(model, n - 1), 0.0)) * f.at(n - 1) * f.at(n)).inverse();
    acc.add(term);
    g.at(n) = f.at(n) * acc.value();
  }
  g.near_cancellation = acc.cancelled();
  extend_backward(g.values, g.first, start, f.zp.z, model);
  return g;
}

SolutionWindow growing(const SpectralPoint& zp, const CriticalParams& params, const CoefficientModel& model,
                       long n0g, long N) {
  if (on_closure(zp, params)) fail(ErrorKind::OnSpectrum, "z lies on the closure of the a.c. set");
  return growing(jost(zp, params, model, N), params, model, n0g);
}

WronskianResult wronskian(const SolutionWindow& F, const SolutionWindow& G, const CoefficientModel& model) {
  const bool same = F.zp.z == G.zp.z && (F.zp.side == G.zp.side || F.zp.z.imag() == 0.0);
  if (!same) fail(ErrorKind::WindowMismatch, "windows belong to different spectral points");
  const long lo = std::max(F.first, G.first);
  const long hi = std::min(F.last(), G.last()) - 1;
  if (hi < lo) fail(ErrorKind::WindowMismatch, "windows do not overlap");
  std::vector<cplx> w;
  w.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long n = lo; n <= hi; ++n) {
    const LogComplex d = F.at(n) * G.at(n + 1) - F.at(n + 1) * G.at(n);
    w.push_back(a_ext(model, n) * d.value());
  }
  std::vector<double> re, im;
  for (const cplx& v : w) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  WronskianResult r{cplx(median(re), median(im)), 0.0, lo, hi};
  for (const cplx& v : w) r.max_deviation = std::max(r.max_deviation, std::abs(v - r.value));
  return r;
}

double recurrence_residual(const SolutionWindow& w, const CoefficientModel& model) {
  double worst = 0.0;
  const cplx z = w.zp.z;
  for (long n = std::max(0L, w.first + 1); n < w.last(); ++n) {
    const LogComplex& fm = w.at(n - 1);
    const LogComplex& f0 = w.at(n);
    const LogComplex& fp = w.at(n + 1);
    const double frame = std::max({fm.log_abs(), f0.log_abs(), fp.log_abs()});
    if (!std::isfinite(frame)) continue;
    const cplx xm = a_ext(model, n - 1) * fm.value_scaled(frame);
    const cplx x0 = (model.b(n) - z) * f0.value_scaled(frame);
    const cplx xp = model.a(n) * fp.value_scaled(frame);
    const double scale = std::abs(xm) + std::abs(x0) + std::abs(xp);
    if (scale > 0.0) worst = std::max(worst, std::abs(xm + x0 + xp) / scale);
  }
  return worst;
}

LogComplex omega_log(const SolutionWindow& f) {
  if (f.first > -1) fail(ErrorKind::InvalidParameter, "Jost window does not reach n = -1");
  return -f.at(-1);
}

cplx omega(const SolutionWindow& f) { return omega_log(f).value(); }

cplx omega(const SpectralPoint& zp, const CriticalParams& params, const CoefficientModel& model,
           const JostOptions& opts) {
  return omega(jost(zp, params, model, opts));
}

cplx varkappa(const SpectralPoint& zp, const CriticalParams& cp) {
  if (zp.side == Side::minus) return -std::conj(varkappa(conj(zp), cp));
  if (zp.side == Side::plus) {
    const AcSet s = unit_gamma_set(cp);
    if (cp.regime != Regime::above_one_tau_positive && !s.contains(zp.z.real()))
      fail(ErrorKind::OutsideDomain, "boundary value requested outside the a.c. set");
  }
  switch (cp.regime) {
    case Regime::above_one_tau_negative: {
      const double r = std::sqrt(-cp.tau);
      return zp.z.imag() < 0.0 ? cplx(-r, 0.0) : cplx(r, 0.0);
    }
    case Regime::above_one_tau_positive:
      return {0.0, std::sqrt(cp.tau)};
    case Regime::below_one:
      return sqrt_cut(zp.z);
    case Regime::at_one:
      return sqrt_cut(zp.z - cp.tau);
  }
  return {};
}

double wronskian_weight(double lambda, const CriticalParams& cp) {
  const double g = cp.gamma;
  const SpectralPoint zp{cplx(g * lambda, 0.0), cp.gamma > 0 ? Side::plus : Side::minus};
  return g * varkappa(zp, cp).real();
}

void write_csv(std::ostream& os, const SolutionWindow& w, long stride) {
  os << "n,re,im,log_abs\n";
  const auto prec = os.precision(17);
  for (long n = w.first; n <= w.last(); n += std::max(1L, stride)) {
    const LogComplex& v = w.at(n);
    const cplx x = v.value();
    os << n << ',' << x.real() << ',' << x.imag() << ',' << v.log_abs() << '\n';
  }
  os.precision(prec);
}

}  // namespace critjac
