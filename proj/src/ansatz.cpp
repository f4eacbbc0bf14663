#include "critjac/ansatz.hpp"

#include <algorithm>
#include <cmath>

#include "critjac/error.hpp"

namespace critjac {

namespace {

constexpr long kMaxStart = 1L << 20;

Side effective_side(Side side, int gamma) {
  if (gamma > 0 || side == Side::interior) return side;
  return side == Side::plus ? Side::minus : Side::plus;
}

cplx root(cplx T, Side side) {
  if (side == Side::minus) return -std::conj(sqrt_cut(std::conj(T), Side::plus));
  return sqrt_cut(T, Side::plus);
}

long ceil_to_long(double x) {
  if (!(x < static_cast<double>(kMaxStart))) return kMaxStart;
  return static_cast<long>(std::ceil(x));
}

}  // namespace

SpectralPoint conj(const SpectralPoint& zp) {
  Side s = zp.side;
  if (s == Side::plus) s = Side::minus;
  else if (s == Side::minus) s = Side::plus;
  return {std::conj(zp.z), s};
}

cplx sqrt_cut(cplx t, Side /*side*/) {
  if (t == cplx(0.0, 0.0)) fail(ErrorKind::BranchPoint, "square root evaluated at the branch point t = 0");
  cplx r = std::sqrt(t);
  if (r.imag() < 0.0 || (r.imag() == 0.0 && r.real() < 0.0)) r = -r;
  if (r.imag() == 0.0) r = cplx(r.real(), 0.0);
  return r;
}

cplx t_seq(long n, const SpectralPoint& zp, const CriticalParams& params) {
  const double x = static_cast<double>(n);
  return -params.tau / x + static_cast<double>(params.gamma) * zp.z / std::pow(x, params.sigma);
}

cplx theta(long n, const SpectralPoint& zp, const CriticalParams& params) {
  const Side side = effective_side(zp.side, params.gamma);
  const double x = static_cast<double>(n);
  if (params.sigma == 1.0) {
    const cplx T = static_cast<double>(params.gamma) * zp.z - params.tau;
    return root(T, side) / std::sqrt(x);
  }
  const cplx t = t_seq(n, zp, params);
  cplx T = t;
  cplx power = t;
  for (double p : params.p_values) {
    power *= t;
    T += p * power;
  }
  return root(T, side);
}

long default_n_start(const SpectralPoint& zp, const CriticalParams& params) {
  const double az = std::abs(zp.z);
  const double at = std::abs(params.tau);
  long n = 8;
  n = std::max(n, ceil_to_long(std::pow(4.0 * az, 1.0 / params.sigma)));
  n = std::max(n, ceil_to_long(4.0 * at) + 1);
  // Past the turning point: the leading term of t_n dominates by a factor 2.
  if (params.sigma > 1.0 && az > 0.0)
    n = std::max(n, ceil_to_long(std::pow(2.0 * az / at, 1.0 / (params.sigma - 1.0))));
  if (params.sigma < 1.0 && at > 0.0 && az > 0.0)
    n = std::max(n, ceil_to_long(std::pow(2.0 * at / az, 1.0 / (1.0 - params.sigma))));
  return n;
}

PhaseAccumulator::PhaseAccumulator(const SpectralPoint& zp, const CriticalParams& params, long n_start)
    : zp_(zp), params_(params), n_start_(n_start > 0 ? n_start : default_n_start(zp, params)) {
  phi_.push_back(cplx(0.0, 0.0));
}

void PhaseAccumulator::extend_to(long n) {
  if (n < n_start_) fail(ErrorKind::InvalidParameter, "phase index below n_start");
  const std::size_t need = static_cast<std::size_t>(n - n_start_) + 1;
  if (phi_.size() >= need) return;
  theta_.reserve(need);
  phi_.reserve(need);
  while (phi_.size() < need) {
    const long m = n_start_ + static_cast<long>(theta_.size());
    const cplx th = critjac::theta(m, zp_, params_);
    theta_.push_back(th);
    // Neumaier summation, separately in each component.
    auto add = [](double& s, double& c, double v) {
      const double t = s + v;
      if (std::abs(s) >= std::abs(v)) c += (s - t) + v;
      else c += (v - t) + s;
      s = t;
    };
    double sr = sum_.real(), si = sum_.imag(), cr = comp_.real(), ci = comp_.imag();
    add(sr, cr, th.real());
    add(si, ci, th.imag());
    sum_ = {sr, si};
    comp_ = {cr, ci};
    phi_.push_back(sum_ + comp_);
  }
}

cplx PhaseAccumulator::theta(long n) {
  extend_to(n + 1);
  return theta_[static_cast<std::size_t>(n - n_start_)];
}

cplx PhaseAccumulator::phi(long n) {
  extend_to(n);
  return phi_[static_cast<std::size_t>(n - n_start_)];
}

LogComplex PhaseAccumulator::ansatz(long n) {
  const cplx ph = phi(n);
  const double sign = (params_.gamma > 0 && (n % 2 != 0)) ? -1.0 : 1.0;
  const double m = -params_.rho * std::log(static_cast<double>(n)) - ph.imag();
  return {m, sign * std::polar(1.0, ph.real())};
}

LogComplex ansatz_value(long n, const SpectralPoint& zp, const CriticalParams& params) {
  PhaseAccumulator acc(zp, params);
  return acc.ansatz(n);
}

cplx cexpm1(cplx w) {
  const double u = w.real(), v = w.imag();
  const double s = std::sin(0.5 * v);
  return {std::expm1(u) * std::cos(v) - 2.0 * s * s, std::exp(u) * std::sin(v)};
}

cplx remainder(long n, PhaseAccumulator& phases, const CoefficientModel& model) {
  const CriticalParams& cp = phases.params();
  if (n < phases.n_start() + 1) fail(ErrorKind::InvalidParameter, "remainder needs n >= n_start + 1");
  const double x = static_cast<double>(n);
  const double a0 = model.a(n - 1), a1 = model.a(n), bn = model.b(n);
  const double g = cp.gamma;
  const double half_log_ratio = 0.5 * (std::log(a1) - std::log(a0));
  // q = sqrt(a_{n-1}/a_n) (n/(n-1))^rho, p = sqrt(a_n/a_{n-1}) (n/(n+1))^rho.
  const double q_m1 = std::expm1(-half_log_ratio + cp.rho * std::log1p(1.0 / (x - 1.0)));
  const double p_m1 = std::expm1(half_log_ratio - cp.rho * std::log1p(1.0 / x));
  const cplx em = cexpm1(cplx(0.0, -1.0) * phases.theta(n - 1));
  const cplx ep = cexpm1(cplx(0.0, 1.0) * phases.theta(n));
  const double geo = std::sqrt(a0 * a1);
  const cplx bracket = (q_m1 + p_m1) + (1.0 + q_m1) * em + (1.0 + p_m1) * ep + (2.0 - g * bn / geo) +
                       g * phases.point().z / geo;
  return -g * bracket;
}

cplx remainder(long n, const SpectralPoint& zp, const CriticalParams& params, const CoefficientModel& model) {
  PhaseAccumulator acc(zp, params);
  return remainder(n, acc, model);
}

cplx asymptotic_phase(long n, cplx lambda, const CriticalParams& cp) {
  const double x = static_cast<double>(n);
  if (cp.sigma == 1.0) return 2.0 * sqrt_cut(lambda - cp.tau) * std::sqrt(x);
  if (cp.sigma < 1.0) return 2.0 * sqrt_cut(lambda) * std::pow(x, 1.0 - cp.sigma / 2.0) / (2.0 - cp.sigma);
  const double at = std::abs(cp.tau);
  const double growth = cp.log_phase ? 0.5 * std::log(x) : std::pow(x, 1.5 - cp.sigma) / (3.0 - 2.0 * cp.sigma);
  if (cp.tau < 0.0) {
    const double s = lambda.imag() < 0.0 ? -1.0 : 1.0;
    return s * 2.0 * std::sqrt(at * x) + s * lambda * growth / std::sqrt(at);
  }
  return cplx(0.0, 2.0 * std::sqrt(at * x)) - cplx(0.0, 1.0) * lambda * growth / std::sqrt(at);
}

}  // namespace critjac
