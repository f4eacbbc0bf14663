#include "critjac/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "critjac/error.hpp"

namespace critjac {

KernelFactors kernel_factors(long n, PhaseAccumulator& phases, const CoefficientModel& model) {
  const CriticalParams& cp = phases.params();
  const double x = static_cast<double>(n);
  const double a0 = model.a(n - 1), a1 = model.a(n);
  const cplx th0 = phases.theta(n - 1), th1 = phases.theta(n);
  const double log_ratio = std::log(a1) - std::log(a0);
  // ((n-1)/(n+1))^rho and ((n-1)/n)^rho.
  const double lam_mag = std::exp(log_ratio + cp.rho * (std::log1p(-1.0 / x) - std::log1p(1.0 / x)));
  const double r_mag = std::exp(0.5 * log_ratio + cp.rho * std::log1p(-1.0 / x));
  const cplx i(0.0, 1.0);
  KernelFactors f;
  f.Lambda = lam_mag * std::exp(i * (th0 + th1));
  f.Rcal = static_cast<double>(cp.gamma) * r_mag * std::exp(i * th0) * remainder(n, phases, model);
  return f;
}

KernelFactors kernel_factors(long n, const SpectralPoint& zp, const CriticalParams& params,
                             const CoefficientModel& model) {
  PhaseAccumulator acc(zp, params);
  return kernel_factors(n, acc, model);
}

double Majorant::H(long n) const {
  if (C_hat == 0.0) return 0.0;
  return C_hat * std::pow(static_cast<double>(n), 1.0 - s) / (s - 1.0);
}

long Majorant::required_N(double tol) const {
  if (C_hat == 0.0) return 1;
  const double n = std::pow(C_hat / ((s - 1.0) * tol), 1.0 / (s - 1.0));
  if (!(n < 1e15)) return static_cast<long>(1e15);
  return static_cast<long>(std::ceil(n)) + 1;
}

double tail_bound(long N, const Majorant& majorant) { return majorant.H(N); }

VolterraKernel::VolterraKernel(PhaseAccumulator& phases, const CoefficientModel& model, long n0, long N)
    : phases_(&phases), model_(&model), n0_(n0), N_(N) {
  const CriticalParams& cp = phases.params();
  if (n0 < phases.n_start() + 1) fail(ErrorKind::InvalidParameter, "n0 must exceed the phase start");
  if (N <= n0) fail(ErrorKind::InvalidParameter, "truncation N must exceed n0");
  s_ = cp.delta - cp.nu;
  phases.extend_to(N + 2);
}

VolterraKernel VolterraKernel::from_factors(long n0, std::vector<cplx> Lambda, std::vector<cplx> Rcal, double s) {
  if (Lambda.size() != Rcal.size() || Lambda.size() < 2)
    fail(ErrorKind::InvalidParameter, "factor arrays must match and cover at least two indices");
  VolterraKernel k;
  k.n0_ = n0;
  k.N_ = n0 + static_cast<long>(Lambda.size()) - 1;
  k.s_ = s;
  k.lambda_ = std::move(Lambda);
  k.rcal_ = std::move(Rcal);
  return k;
}

KernelFactors VolterraKernel::factors(long n) const {
  if (phases_ != nullptr) return kernel_factors(n, *phases_, *model_);
  const auto k = static_cast<std::size_t>(n - n0_);
  return {lambda_[k], rcal_[k]};
}

LogComplex VolterraKernel::x_prod(long n) const {
  LogComplex x = LogComplex::one();
  for (long j = n0_ + 1; j <= n; ++j) x *= LogComplex::from(factors(j).Lambda);
  return x;
}

LogComplex VolterraKernel::kernel_g(long n, long m) const {
  if (m < n + 1) fail(ErrorKind::InvalidParameter, "kernel_g needs m >= n + 1");
  // X_{m-1}/X_p = Lambda_{p+1} ... Lambda_{m-1}, accumulated downward from p = m-1.
  cplx ratio(1.0, 0.0), sum(0.0, 0.0);
  for (long p = m - 1; p >= n; --p) {
    sum += ratio;
    if (p > n) ratio *= factors(p).Lambda;
  }
  return LogComplex::from(sum);
}

double VolterraKernel::sup_g(long m) const {
  cplx ratio(1.0, 0.0), sum(0.0, 0.0);
  double best = 0.0;
  for (long p = m - 1; p >= n0_; --p) {
    sum += ratio;
    best = std::max(best, std::abs(sum));
    if (p > n0_) ratio *= factors(p).Lambda;
  }
  return best;
}

Majorant VolterraKernel::fit_majorant(int probes) const {
  Majorant maj;
  maj.s = s_;
  const double lo = std::log(static_cast<double>(n0_ + 1));
  const double hi = std::log(static_cast<double>(N_));
  long last = -1;
  double worst = 0.0;
  for (int i = 0; i < probes; ++i) {
    const double frac = probes > 1 ? static_cast<double>(i) / (probes - 1) : 1.0;
    const long m = std::clamp(std::lround(std::exp(lo + (hi - lo) * frac)), n0_ + 1, N_);
    if (m == last) continue;
    last = m;
    const double h = sup_g(m) * std::abs(factors(m).Rcal);
    worst = std::max(worst, h * std::pow(static_cast<double>(m), s_));
  }
  maj.C_hat = 2.0 * worst;
  return maj;
}

VolterraSolution sweep(const VolterraKernel& kernel) {
  VolterraSolution sol;
  sol.n0 = kernel.n0();
  sol.N = kernel.N();
  const long n0 = sol.n0, N = sol.N;
  sol.u.assign(static_cast<std::size_t>(N - n0 + 2), cplx(1.0, 0.0));
  // D_n = X_n^{-1} B_n obeys D_n = Lambda_{n+1} D_{n+1} + Rcal_{n+1} u_{n+1}, D_N = 0.
  cplx D(0.0, 0.0);
  KernelFactors next = kernel.factors(N);
  double residual = 0.0;
  for (long n = N - 1; n >= n0; --n) {
    const cplx u_next = sol.u[static_cast<std::size_t>(n + 1 - n0)];
    D = next.Lambda * D + next.Rcal * u_next;
    sol.u[static_cast<std::size_t>(n - n0)] = u_next + D;
    // Residual at n+1: Lambda (u_{n+2}-u_{n+1}) - (u_{n+1}-u_n) - Rcal u_{n+1}.
    const cplx u_nn = sol.u[static_cast<std::size_t>(n + 2 - n0)];
    const cplx u_n = sol.u[static_cast<std::size_t>(n - n0)];
    const cplx res = next.Lambda * (u_nn - u_next) - (u_next - u_n) - next.Rcal * u_next;
    residual = std::max(residual, std::abs(res) / std::max(1.0, std::abs(u_next)));
    if (n > n0) next = kernel.factors(n);
  }
  sol.residual = residual;
  return sol;
}

VolterraSolution solve(PhaseAccumulator& phases, const CoefficientModel& model, const VolterraOptions& opts) {
  const long n0 = opts.n0 > 0 ? opts.n0 : phases.n_start() + 1;
  long N = opts.N;
  if (N <= 0) {
    const long probe_N = std::max(opts.N_min, 64 * n0);
    const Majorant probe = VolterraKernel(phases, model, n0, probe_N).fit_majorant(opts.probes);
    N = std::clamp(probe.required_N(opts.tol), probe_N, std::max(probe_N, opts.N_cap));
  }
  VolterraKernel kernel(phases, model, n0, N);
  const Majorant maj = kernel.fit_majorant(opts.probes);
  const double H = maj.H(N);
  if (!(H < 1.0))
    fail(ErrorKind::TruncationTooShort, "tail bound H_N = " + std::to_string(H) + " is not below 1; raise N or n0");
  VolterraSolution sol = sweep(kernel);
  sol.majorant = maj;
  sol.tail_bound = H;
  return sol;
}

VolterraSolution solve(const SpectralPoint& zp, const CriticalParams& params, const CoefficientModel& model,
                       long n0, long N) {
  PhaseAccumulator phases(zp, params, n0 > 1 ? n0 - 1 : 0);
  VolterraOptions opts;
  opts.n0 = n0;
  opts.N = N;
  return solve(phases, model, opts);
}

void write_diagnostics(std::ostream& os, const VolterraSolution& sol, const VolterraKernel& kernel, long stride) {
  os << "n,abs_u_minus_1,residual\n";
  const auto prec = os.precision(17);
  for (long n = sol.n0 + 1; n <= sol.N; n += std::max(1L, stride)) {
    const KernelFactors f = kernel.factors(n);
    const cplx up = sol.at(n + 1), u = sol.at(n), um = sol.at(n - 1);
    const cplx res = f.Lambda * (up - u) - (u - um) - f.Rcal * u;
    os << n << ',' << std::abs(u - 1.0) << ',' << std::abs(res) << '\n';
  }
  os.precision(prec);
}

}  // namespace critjac
