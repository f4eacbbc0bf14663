#include "critjac/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "critjac/error.hpp"

namespace critjac {

namespace {

// Tables whose entries stray further than this (in units of n^{-2}) from the
// descriptor are rejected.
constexpr double kTableDeviationBound = 1.0e3;

Rational exact(double x) { return Rational(x); }

}  // namespace

CoefficientModel laguerre_model(double p) {
  if (!(p > -1.0) || !std::isfinite(p)) fail(ErrorKind::InvalidParameter, "laguerre parameter must exceed -1");
  CoefficientModel m;
  m.kind_ = CoefficientModel::Kind::laguerre;
  m.p_ = p;
  m.desc_ = {1.0, 1.0 + p / 2.0, (1.0 + p) / 2.0, 1.0};
  return m;
}

CoefficientModel power_model(double sigma, double alpha, double beta, double gamma) {
  if (!(sigma > 0.0 && sigma <= 1.5)) fail(ErrorKind::UnsupportedRegime, "power model needs sigma in (0, 3/2]");
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma) || gamma == 0.0)
    fail(ErrorKind::InvalidParameter, "power model parameters must be finite with gamma != 0");
  if (1.0 + alpha <= 0.0) fail(ErrorKind::InvalidParameter, "power model needs a(1) = 1 + alpha > 0");
  CoefficientModel m;
  m.kind_ = CoefficientModel::Kind::power;
  m.desc_ = {sigma, alpha, beta, gamma};
  return m;
}

CoefficientModel table_model(std::vector<double> a, std::vector<double> b, const AsymptoticDescriptor& desc) {
  if (a.empty() || a.size() != b.size()) fail(ErrorKind::InvalidParameter, "table arrays must be non-empty and equal length");
  for (double v : a)
    if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorKind::InvalidParameter, "table entries a(n) must be positive");
  for (double v : b)
    if (!std::isfinite(v)) fail(ErrorKind::InvalidParameter, "table entries b(n) must be finite");
  if (!(desc.sigma > 0.0 && desc.sigma <= 1.5)) fail(ErrorKind::UnsupportedRegime, "table descriptor needs sigma in (0, 3/2]");
  CoefficientModel m;
  m.kind_ = CoefficientModel::Kind::table;
  m.desc_ = desc;
  m.table_a_ = std::make_shared<const std::vector<double>>(std::move(a));
  m.table_b_ = std::make_shared<const std::vector<double>>(std::move(b));
  if (m.table_a_->size() > 20) {
    const double dev = descriptor_deviation(m, 10, static_cast<long>(m.table_a_->size()) - 1);
    if (dev > kTableDeviationBound)
      fail(ErrorKind::InvalidParameter, "table coefficients do not follow the declared descriptor");
  }
  return m;
}

CoefficientModel reflect(const CoefficientModel& model) {
  CoefficientModel m = model;
  m.b_sign_ = -model.b_sign_;
  m.desc_.gamma = -model.desc_.gamma;
  return m;
}

double CoefficientModel::power_a(long n) const {
  if (n == 0) return 1.0;
  const double x = static_cast<double>(n);
  return std::pow(x, desc_.sigma) * (1.0 + desc_.alpha / x);
}

double CoefficientModel::power_b(long n) const {
  if (n == 0) return 0.0;
  const double x = static_cast<double>(n);
  return 2.0 * desc_.gamma * std::pow(x, desc_.sigma) * (1.0 + desc_.beta / x);
}

double CoefficientModel::a(long n) const {
  switch (kind_) {
    case Kind::laguerre: {
      const double x = static_cast<double>(n) + 1.0;
      return std::sqrt(x * (x + p_));
    }
    case Kind::power:
      return power_a(n);
    case Kind::table:
      if (n < static_cast<long>(table_a_->size())) return (*table_a_)[n];
      return power_a(n);
  }
  return 0.0;
}

double CoefficientModel::b(long n) const {
  switch (kind_) {
    case Kind::laguerre:
      return b_sign_ * (2.0 * static_cast<double>(n) + p_ + 1.0);
    case Kind::power:
      // The descriptor already carries the reflected gamma.
      return power_b(n);
    case Kind::table:
      if (n < static_cast<long>(table_b_->size())) return b_sign_ * (*table_b_)[n];
      return power_b(n);
  }
  return 0.0;
}

std::string CoefficientModel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::laguerre: os << "laguerre(p=" << p_ << ")"; break;
    case Kind::power: os << "power"; break;
    case Kind::table: os << "table[" << table_a_->size() << "]"; break;
  }
  os << " sigma=" << desc_.sigma << " alpha=" << desc_.alpha << " beta=" << desc_.beta << " gamma=" << desc_.gamma;
  return os.str();
}

double descriptor_deviation(const CoefficientModel& model, long n_lo, long n_hi, int samples) {
  const auto& d = model.descriptor();
  double worst = 0.0;
  const double lo = std::log(static_cast<double>(std::max(1L, n_lo)));
  const double hi = std::log(static_cast<double>(std::max(n_lo, n_hi)));
  long last = -1;
  for (int i = 0; i < samples; ++i) {
    const double frac = samples > 1 ? static_cast<double>(i) / (samples - 1) : 0.0;
    const long n = std::lround(std::exp(lo + (hi - lo) * frac));
    if (n == last) continue;
    last = n;
    const double x = static_cast<double>(n);
    // a(n) n^{-sigma} - 1 - alpha/n, computed from the log to keep relative accuracy at large n.
    const double ratio = std::expm1(std::log(model.a(n)) - d.sigma * std::log(x));
    worst = std::max(worst, std::abs(ratio - d.alpha / x) * x * x);
  }
  return worst;
}

bool AcSet::contains(double lambda) const {
  switch (kind) {
    case Kind::empty: return false;
    case Kind::whole_line: return std::isfinite(lambda);
    case Kind::half_line: return direction > 0 ? lambda > threshold : lambda < threshold;
  }
  return false;
}

bool AcSet::closure_contains(double lambda) const {
  if (kind == Kind::half_line) return direction > 0 ? lambda >= threshold : lambda <= threshold;
  return contains(lambda);
}

std::string AcSet::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::empty: return "empty";
    case Kind::whole_line: return "(-inf,inf)";
    case Kind::half_line:
      if (direction > 0) os << "(" << threshold << ",inf)";
      else os << "(-inf," << threshold << ")";
      return os.str();
  }
  return "";
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::above_one_tau_negative: return "sigma in (1,3/2], tau < 0";
    case Regime::above_one_tau_positive: return "sigma in (1,3/2], tau > 0";
    case Regime::below_one: return "sigma in (0,1)";
    case Regime::at_one: return "sigma = 1";
  }
  return "";
}

CriticalParams classify(const AsymptoticDescriptor& d) {
  if (!std::isfinite(d.sigma) || !std::isfinite(d.alpha) || !std::isfinite(d.beta) || !std::isfinite(d.gamma))
    fail(ErrorKind::InvalidParameter, "descriptor entries must be finite");
  if (d.sigma <= 0.0) fail(ErrorKind::UnsupportedRegime, "sigma must be positive");
  if (std::abs(d.gamma) != 1.0)
    fail(ErrorKind::NotCritical, "|gamma| != 1; only the critical case |gamma| = 1 is computed");
  if (d.sigma > 1.5)
    fail(ErrorKind::LimitCircleRegime,
         "sigma > 3/2: the spectrum is discrete for tau > 0 and the operator is limit circle for tau < 0");

  CriticalParams cp;
  cp.gamma = d.gamma > 0 ? 1 : -1;
  cp.sigma = d.sigma;
  cp.alpha = d.alpha;
  cp.beta = d.beta;
  cp.tau = 2.0 * d.beta - 2.0 * d.alpha + d.sigma;

  const Rational sigma_q = exact(d.sigma);
  if (d.sigma > 1.0 && cp.tau == 0.0)
    fail(ErrorKind::UnsupportedTauZero, "sigma in (1,3/2] with tau = 0 is not covered");

  if (d.sigma >= 1.0) {
    cp.rho_exact = sigma_q / 2 - Rational(1, 4);
    cp.varsigma_exact = Rational(3, 2) - sigma_q;
  } else {
    cp.rho_exact = sigma_q / 4;
    cp.varsigma_exact = Rational(1) - sigma_q / 2;
  }
  cp.rho = static_cast<double>(cp.rho_exact);
  cp.varsigma = static_cast<double>(cp.varsigma_exact);
  cp.nu = d.sigma >= 1.0 ? 0.5 : d.sigma / 2.0;
  cp.log_phase = d.sigma == 1.5;

  // Minimal L >= 1 with (L + 1/2) sigma > 1.
  int L = 1;
  while ((Rational(L) + Rational(1, 2)) * sigma_q <= 1) ++L;
  cp.L = L;
  cp.p = eikonal_coefficients(L);
  for (const auto& r : cp.p) cp.p_values.push_back(static_cast<double>(r));

  if (d.sigma > 1.0) cp.delta = d.sigma + 0.5;
  else if (d.sigma == 1.0) cp.delta = 2.0;
  else if (d.sigma > 2.0 / 3.0) cp.delta = std::min(2.0 * d.sigma, 2.0 - d.sigma / 2.0);
  else cp.delta = std::min((L + 1) * d.sigma, 2.0 - d.sigma / 2.0);

  const double g = cp.gamma;
  if (d.sigma > 1.0) {
    if (cp.tau < 0.0) {
      cp.regime = Regime::above_one_tau_negative;
      cp.ac_set = {AcSet::Kind::whole_line, 0.0, 1};
      cp.spectrum_case = "sigma in (1,3/2], tau < 0: spectrum absolutely continuous on the whole line";
    } else {
      cp.regime = Regime::above_one_tau_positive;
      cp.ac_set = {AcSet::Kind::empty, 0.0, 1};
      cp.spectrum_case = "sigma in (1,3/2], tau > 0: spectrum discrete";
    }
    if (cp.log_phase && cp.tau < 0.0)
      cp.notes = "sigma = 3/2: uniqueness needs u_n = 1 + O(n^{-1/2}), which the sweep satisfies";
  } else if (d.sigma < 1.0) {
    cp.regime = Regime::below_one;
    cp.ac_set = {AcSet::Kind::half_line, 0.0, cp.gamma};
    cp.spectrum_case = "sigma in (0,1): absolutely continuous on gamma (0, inf), discrete elsewhere";
  } else {
    cp.regime = Regime::at_one;
    cp.ac_set = {AcSet::Kind::half_line, g * cp.tau + 0.0, cp.gamma};
    cp.spectrum_case = "sigma = 1: absolutely continuous on gamma (tau, inf), discrete elsewhere";
  }
  return cp;
}

CriticalParams classify(const CoefficientModel& model) { return classify(model.descriptor()); }

}  // namespace critjac
