#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "critjac/error.hpp"
#include "critjac/volterra.hpp"
#include "test_util.hpp"

using namespace critjac;
using cld = std::complex<long double>;

namespace {

// u_n = 1 + sum_{m=n+1}^{N} G_{n,m} Rcal_m u_m with G built from explicit products.
std::vector<cld> direct_volterra(long n0, const std::vector<cplx>& Lambda, const std::vector<cplx>& Rcal) {
  const long N = n0 + static_cast<long>(Lambda.size()) - 1;
  auto idx = [&](long n) { return static_cast<std::size_t>(n - n0); };
  std::vector<cld> X(Lambda.size(), cld(1.0L));
  for (long n = n0 + 1; n <= N; ++n) X[idx(n)] = X[idx(n - 1)] * cld(Lambda[idx(n)]);
  std::vector<cld> u(Lambda.size() + 1, cld(1.0L));
  for (long n = N - 1; n >= n0; --n) {
    cld acc = 1.0L;
    for (long m = n + 1; m <= N; ++m) {
      cld g = 0.0L;
      for (long p = n; p <= m - 1; ++p) g += X[idx(m - 1)] / X[idx(p)];
      acc += g * cld(Rcal[idx(m)]) * u[idx(m)];
    }
    u[idx(n)] = acc;
  }
  return u;
}

}  // namespace

TEST_CASE("sweep matches the direct Volterra sum on synthetic kernels") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ph(-3.0, 3.0), mag(0.5, 1.0), r(-1.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    const long n0 = 5, len = 120;
    std::vector<cplx> L(len), R(len);
    for (long k = 0; k < len; ++k) {
      const double m = static_cast<double>(n0 + k);
      L[static_cast<std::size_t>(k)] = std::polar(trial % 2 ? mag(rng) : 1.0, ph(rng));
      R[static_cast<std::size_t>(k)] = cplx(r(rng), r(rng)) / (m * m);
    }
    const auto kernel = VolterraKernel::from_factors(n0, L, R, 2.0);
    const auto sol = sweep(kernel);
    const auto ref = direct_volterra(n0, L, R);
    for (long n = n0; n <= kernel.N(); ++n) {
      const cld d = cld(sol.at(n)) - ref[static_cast<std::size_t>(n - n0)];
      CHECK(static_cast<double>(std::abs(d)) < 1e-12);
    }
    CHECK(sol.at(kernel.N()) == cplx(1.0, 0.0));
    CHECK(sol.residual < 1e-14);

    // Kernel entries against explicit products.
    for (long n : {n0, n0 + 17, n0 + 60})
      for (long m : {n + 1, n + 9, n + 50}) {
        cld X = 1.0L, g = 0.0L;
        std::vector<cld> prefix;
        for (long p = n0; p <= m - 1; ++p) {
          if (p > n0) X *= cld(L[static_cast<std::size_t>(p - n0)]);
          prefix.push_back(X);
        }
        for (long p = n; p <= m - 1; ++p) g += prefix.back() / prefix[static_cast<std::size_t>(p - n0)];
        const cplx got = kernel.kernel_g(n, m).value();
        CHECK(std::abs(cld(got) - g) <= 1e-11L * (1.0L + std::abs(g)));
      }
  }
}

TEST_CASE("kernel is bounded by m - n when |Lambda| = 1") {
  std::vector<cplx> L(300), R(300, cplx(0.0, 0.0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ph(-3.0, 3.0);
  for (auto& x : L) x = std::polar(1.0, ph(rng));
  const auto k = VolterraKernel::from_factors(1, L, R, 2.0);
  for (long m : {2L, 50L, 299L}) CHECK(k.sup_g(m) <= static_cast<double>(m) + 1e-9);
}

TEST_CASE("majorant tail") {
  Majorant maj{3.0, 2.5};
  CHECK(maj.H(100) == doctest::Approx(3.0 * std::pow(100.0, -1.5) / 1.5));
  const long N = maj.required_N(1e-6);
  CHECK(maj.H(N) < 1e-6);
  CHECK(maj.H(N - 1) >= 1e-6 * 0.99);
  CHECK(tail_bound(100, maj) == maj.H(100));
}

TEST_CASE("certified bound and truncation doubling on real models") {
  struct Case {
    CoefficientModel model;
    SpectralPoint zp;
  };
  const Case cases[] = {
      {laguerre_model(0.0), SpectralPoint::upper(1.0)},
      {laguerre_model(1.0), SpectralPoint::at(cplx(-2.0, 0.5))},
      {power_model(1.25, 0.0, -0.8, 1.0), SpectralPoint::upper(0.5)},
      {power_model(0.5, 0.0, 0.0, 1.0), SpectralPoint::upper(1.0)},
      {power_model(1.25, 0.0, 0.0, 1.0), SpectralPoint::at(cplx(0.0, 0.0))},
  };
  for (const auto& c : cases) {
    const auto cp = classify(c.model);
    PhaseAccumulator pa(c.zp, cp);
    VolterraOptions o;
    o.N = 20'000;
    const auto a = solve(pa, c.model, o);
    o.N = 40'000;
    const auto b = solve(pa, c.model, o);
    CAPTURE(c.model.describe());
    CHECK(a.residual < 1e-12);
    bool bound_ok = true, doubling_ok = true;
    for (long n = a.n0; n <= a.N; n += 7) {
      const double Hn = b.majorant.H(n);
      bound_ok &= std::abs(b.at(n) - 1.0) <= std::expm1(Hn);
      doubling_ok &= std::abs(a.at(n) - b.at(n)) <= std::exp(Hn) * std::expm1(b.majorant.H(a.N)) + 1e-13;
    }
    CHECK(bound_ok);
    CHECK(doubling_ok);
    std::ostringstream os;
    write_diagnostics(os, a, VolterraKernel(pa, c.model, a.n0, a.N), 5000);
    CHECK(os.str().rfind("n,abs_u_minus_1,residual\n", 0) == 0);
  }
}

TEST_CASE("truncation that is too short is refused") {
  const auto m = power_model(0.5, 0.0, 0.0, 1.0);
  const auto cp = classify(m);
  PhaseAccumulator pa(SpectralPoint::upper(1.0), cp, 1);
  VolterraOptions o;
  o.N = 3;
  CHECK(test::kind_of([&] { solve(pa, m, o); }) == ErrorKind::TruncationTooShort);
}

TEST_CASE("kernel factors") {
  const auto m = laguerre_model(0.0);
  const auto cp = classify(m);
  const auto zp = SpectralPoint::at(cplx(1.0, 1.0));
  PhaseAccumulator pa(zp, cp);
  for (long n : {20L, 200L, 2000L}) {
    const auto f = kernel_factors(n, pa, m);
    // Lambda_n = (a_n/a_{n-1}) A_{n+1}/A_{n-1}.
    const cplx expect = m.a(n) / m.a(n - 1) * (pa.ansatz(n + 1) / pa.ansatz(n - 1)).value();
    CHECK(std::abs(f.Lambda - expect) < 1e-12 * std::abs(expect));
    const cplx rr = -std::sqrt(m.a(n) / m.a(n - 1)) * (pa.ansatz(n) / pa.ansatz(n - 1)).value() * remainder(n, pa, m);
    CHECK(std::abs(f.Rcal - rr) < 1e-12 * std::abs(rr));
  }
}
