#include <doctest.h>

#include <cmath>
#include <random>

#include "critjac/ansatz.hpp"
#include "critjac/error.hpp"
#include "test_util.hpp"

using namespace critjac;

TEST_CASE("sqrt_cut picks the upper root") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const cplx t(u(rng), u(rng));
    const cplx r = sqrt_cut(t);
    CHECK(r.imag() >= 0.0);
    CHECK(std::abs(r * r - t) <= 1e-14 * std::abs(t));
  }
  CHECK(sqrt_cut(cplx(4.0, 0.0)) == cplx(2.0, 0.0));
  CHECK(sqrt_cut(cplx(-4.0, 0.0)) == cplx(0.0, 2.0));
  CHECK(test::kind_of([] { sqrt_cut(cplx(0.0, 0.0)); }) == ErrorKind::BranchPoint);
}

TEST_CASE("theta solves the eikonal equation to order L") {
  for (double sigma : {0.3, 0.5, 0.8, 1.0, 1.25}) {
    const auto cp = classify(AsymptoticDescriptor{sigma, 0.2, -0.7, 1.0});
    const auto zp = SpectralPoint::at(cplx(0.7, 0.4));
    double worst = 0.0;
    for (long n : {1000L, 10'000L, 100'000L}) {
      const cplx t = t_seq(n, zp, cp);
      const cplx th = theta(n, zp, cp);
      const cplx defect = 2.0 - 2.0 * std::cos(th) - t;
      worst = std::max(worst, std::abs(defect) / std::pow(std::abs(t), cp.L + 1));
      CHECK(th.imag() >= 0.0);
    }
    CAPTURE(sigma);
    CHECK(worst < 1.0);
  }
}

TEST_CASE("property: conjugation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.05, 3.0);
  for (double sigma : {0.5, 1.0, 1.25}) {
    const auto cp = classify(AsymptoticDescriptor{sigma, 0.0, sigma > 1 ? -0.9 : 0.0, -1.0});
    for (int i = 0; i < 20; ++i) {
      const cplx z(re(rng), im(rng));
      const auto zp = SpectralPoint::at(z);
      const auto zc = conj(zp);
      for (long n : {50L, 500L, 5000L}) {
        const cplx a = theta(n, zp, cp), b = theta(n, zc, cp);
        CHECK(std::abs(b + std::conj(a)) <= 1e-13 * std::abs(a));
      }
      PhaseAccumulator pa(zp, cp, 64), pb(zc, cp, 64);
      for (long n : {100L, 1000L}) {
        const cplx fa = pa.ansatz(n).value(), fb = pb.ansatz(n).value();
        CHECK(std::abs(fb - std::conj(fa)) <= 1e-10 * std::abs(fa));
      }
    }
  }
}

TEST_CASE("ansatz decays off the spectrum") {
  const auto cp = classify(laguerre_model(0.0));
  PhaseAccumulator pa(SpectralPoint::at(cplx(1.0, 0.5)), cp);
  double prev = pa.ansatz(pa.n_start() + 1).log_abs();
  for (long n = pa.n_start() + 2; n < 5000; n += 37) {
    const double cur = pa.ansatz(n).log_abs();
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("phase prefix sums agree with long double summation") {
  const auto cp = classify(power_model(0.5, 0.0, 0.0, 1.0));
  const auto zp = SpectralPoint::upper(2.0);
  PhaseAccumulator pa(zp, cp, 20);
  std::complex<long double> s = 0;
  for (long n = 20; n < 200'000; ++n) s += std::complex<long double>(theta(n, zp, cp));
  const cplx ref(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  CHECK(std::abs(pa.phi(200'000) - ref) <= 1e-12 * std::abs(ref));
}

TEST_CASE("closed-form phase asymptotics") {
  // phi_n minus its leading terms settles to a constant once the first divergent
  // subleading term (expanded here by hand) is removed as well.
  struct Case {
    double sigma, beta;
    cplx z;
  };
  for (const Case& c : {Case{1.0, -0.5, {2.0, 0.0}}, Case{0.5, 0.0, {1.5, 0.0}}, Case{1.25, -0.8, {0.5, 0.0}},
                        Case{1.25, 0.0, {0.0, 0.0}}, Case{1.5, -1.0, {0.3, 0.0}}}) {
    const auto cp = classify(AsymptoticDescriptor{c.sigma, 0.0, c.beta, 1.0});
    const auto zp = cp.ac_set.contains(c.z.real()) ? SpectralPoint::upper(c.z.real()) : SpectralPoint::at(c.z);
    const double lam = c.z.real(), at = std::abs(cp.tau);
    auto extra = [&](long n) -> cplx {
      const double x = static_cast<double>(n);
      if (c.sigma == 0.5) return 4.0 * (std::pow(lam, 1.5) / 24.0 - cp.tau / (2.0 * std::sqrt(lam))) * std::pow(x, 0.25);
      if (c.sigma == 1.25 && cp.tau < 0.0) return -lam * lam / (8.0 * std::pow(at, 1.5)) * std::log(x);
      return 0.0;
    };
    PhaseAccumulator pa(zp, cp);
    auto gap = [&](long n) { return pa.phi(n) - asymptotic_phase(n, c.z, cp) - extra(n); };
    const cplx d1 = gap(100'000), d2 = gap(400'000);
    CAPTURE(c.sigma);
    CHECK(std::abs(d1 - d2) < 2e-2);
  }
  const auto cp = classify(laguerre_model(0.0));
  CHECK(asymptotic_phase(10'000, 1.0, cp).real() == doctest::Approx(200.0));
  const auto cq = classify(AsymptoticDescriptor{0.5, 0.0, 0.0, 1.0});
  CHECK(asymptotic_phase(10'000, 1.0, cq).real() == doctest::Approx(4000.0 / 3.0));
}

TEST_CASE("cexpm1 keeps small arguments accurate") {
  for (double x : {1e-12, 1e-8, 1e-4, 0.3, 2.0}) {
    for (const cplx w : {cplx(0.0, x), cplx(x, 0.0), cplx(-x, x), cplx(x / 3, -x)}) {
      const std::complex<long double> wl(w.real(), w.imag());
      // Series oracle in long double.
      std::complex<long double> term = wl, sum = 0;
      for (int k = 2; k < 60; ++k) {
        sum += term;
        term *= wl / static_cast<long double>(k);
      }
      const cplx ref(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
      CHECK(std::abs(cexpm1(w) - ref) <= 4e-16 * std::abs(ref));
    }
  }
}

TEST_CASE("remainder decays with the predicted exponent") {
  struct Case {
    CoefficientModel model;
    cplx z;
  };
  const Case cases[] = {
      {laguerre_model(0.0), {1.0, 1.0}},
      {power_model(1.25, 0.0, -0.8, 1.0), {0.5, 0.0}},
      {power_model(0.8, 0.0, 0.0, 1.0), {1.0, 1.0}},
      {power_model(1.25, 0.0, 0.0, 1.0), {1.0, 1.0}},
  };
  for (const auto& c : cases) {
    const auto cp = classify(c.model);
    PhaseAccumulator pa(SpectralPoint::at(c.z), cp);
    std::vector<double> x, y;
    for (int i = 0; i <= 20; ++i) {
      const long n = std::lround(std::pow(10.0, 3.0 + i / 20.0));
      x.push_back(std::log(static_cast<double>(n)));
      y.push_back(std::log(std::abs(remainder(n, pa, c.model))));
    }
    CAPTURE(c.model.describe());
    CHECK(test::slope(x, y) == doctest::Approx(-cp.delta).epsilon(0.1));
  }
}

TEST_CASE("default n_start") {
  const auto cp = classify(laguerre_model(0.0));
  CHECK(default_n_start(SpectralPoint::at(cplx(1.0, 0.0)), cp) == 8);
  CHECK(default_n_start(SpectralPoint::at(cplx(100.0, 0.0)), cp) == 400);
  const auto cq = classify(power_model(1.25, 0.0, -0.8, 1.0));
  CHECK(default_n_start(SpectralPoint::at(cplx(1.0, 1.0)), cq) > 1000);
  CHECK(test::kind_of([&] { PhaseAccumulator(SpectralPoint::at(1.0), cp, 10).theta(5); }) ==
        ErrorKind::InvalidParameter);
}
