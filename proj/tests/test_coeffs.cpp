#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>

#include "critjac/coeffs.hpp"
#include "critjac/eikonal.hpp"
#include "critjac/error.hpp"
#include "test_util.hpp"

using namespace critjac;
using boost::multiprecision::cpp_int;
using test::kind_of;

namespace {

// 4 arcsin^2(sqrt(t)/2) = sum_{l>=1} 2 t^l / (l^2 binom(2l, l)); solves 2 - 2 cos(theta) = t for theta^2.
Rational arcsin_series_coefficient(int l) {
  cpp_int binom = 1;
  for (int k = 1; k <= l; ++k) binom = binom * (l + k) / k;
  return Rational(cpp_int(2), cpp_int(l) * l * binom);
}

}  // namespace

TEST_CASE("eikonal coefficients match the arcsine series") {
  const auto p = eikonal_coefficients(12);
  REQUIRE(p.size() == 11);
  for (int l = 2; l <= 12; ++l) CHECK(p[static_cast<std::size_t>(l - 2)] == arcsin_series_coefficient(l));
  CHECK(to_fraction_string(p[0]) == "1/12");
  CHECK(to_fraction_string(p[1]) == "1/90");
  CHECK(eikonal_coefficients(1).empty());
}

TEST_CASE("eikonal certificate vanishes through order L") {
  for (int L = 1; L <= 8; ++L) {
    const auto p = eikonal_coefficients(L);
    const auto c = eikonal_certificate(p, L, L + 1);
    for (int k = 0; k <= L; ++k) CHECK(c[static_cast<std::size_t>(k)] == 0);
    if (L >= 2) {
      auto q = p;
      q.back() += Rational(1, 1000);
      CHECK(eikonal_certificate(q, L, L)[static_cast<std::size_t>(L)] != 0);
    }
  }
}

TEST_CASE("cosine coefficients") {
  CHECK(cosine_coefficient(1) == 1);
  CHECK(cosine_coefficient(2) == Rational(-1, 12));
  CHECK(cosine_coefficient(3) == Rational(1, 360));
}

TEST_CASE("laguerre classification") {
  for (double p : {0.0, 1.0, 2.5, -0.5}) {
    const auto cp = classify(laguerre_model(p));
    CHECK(cp.tau == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(cp.rho == 0.25);
    CHECK(cp.nu == 0.5);
    CHECK(cp.delta == 2.0);
    CHECK(cp.L == 1);
    CHECK(cp.regime == Regime::at_one);
    CHECK(cp.ac_set.to_string() == "(0,inf)");
  }
}

TEST_CASE("regime parameters") {
  SUBCASE("sigma 1.25, tau < 0") {
    const auto cp = classify(AsymptoticDescriptor{1.25, 0.0, -0.8, 1.0});
    CHECK(cp.tau == doctest::Approx(-0.35));
    CHECK(cp.rho == 0.375);
    CHECK(cp.delta == 1.75);
    CHECK(cp.ac_set.kind == AcSet::Kind::whole_line);
  }
  SUBCASE("sigma 1.25, tau > 0") {
    const auto cp = classify(AsymptoticDescriptor{1.25, 0.0, 0.0, 1.0});
    CHECK(cp.tau == 1.25);
    CHECK(cp.ac_set.kind == AcSet::Kind::empty);
    CHECK(cp.ac_set.to_string() == "empty");
  }
  SUBCASE("sigma below one") {
    const auto cp = classify(AsymptoticDescriptor{0.5, 0.0, 0.0, -1.0});
    CHECK(cp.rho == 0.125);
    CHECK(cp.nu == 0.25);
    CHECK(cp.L == 2);
    CHECK(cp.delta == 1.5);
    CHECK(cp.ac_set.to_string() == "(-inf,0)");
    CHECK(classify(AsymptoticDescriptor{0.3, 0, 0, 1}).L == 3);
    CHECK(classify(AsymptoticDescriptor{0.8, 0, 0, 1}).delta == doctest::Approx(1.6));
  }
  SUBCASE("sigma one with gamma = -1") {
    const auto cp = classify(AsymptoticDescriptor{1.0, 0.0, 0.0, -1.0});
    CHECK(cp.tau == 1.0);
    CHECK(cp.ac_set.to_string() == "(-inf,-1)");
  }
  SUBCASE("sigma 3/2") {
    const auto cp = classify(AsymptoticDescriptor{1.5, 0.0, -1.25, 1.0});
    CHECK(cp.log_phase);
    CHECK(!cp.notes.empty());
    CHECK(cp.delta == 2.0);
  }
}

TEST_CASE("rejections") {
  CHECK(kind_of([] { classify(AsymptoticDescriptor{2.0, 0, 0, 1}); }) == ErrorKind::LimitCircleRegime);
  CHECK(kind_of([] { classify(AsymptoticDescriptor{1.0, 0, 0, 0.5}); }) == ErrorKind::NotCritical);
  CHECK(kind_of([] { classify(AsymptoticDescriptor{0.0, 0, 0, 1}); }) == ErrorKind::UnsupportedRegime);
  CHECK(kind_of([] { classify(AsymptoticDescriptor{1.25, 0, -0.625, 1}); }) == ErrorKind::UnsupportedTauZero);
  CHECK(kind_of([] { classify(AsymptoticDescriptor{NAN, 0, 0, 1}); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { laguerre_model(-1.0); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { power_model(1.75, 0, 0, 1); }) == ErrorKind::UnsupportedRegime);
  CHECK(is_regime_rejection(ErrorKind::NotCritical));
  CHECK(!is_regime_rejection(ErrorKind::TruncationTooShort));
}

TEST_CASE("property: 2 rho + varsigma = 1 exactly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> sig(0.01, 1.5), ab(-3.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    AsymptoticDescriptor d{sig(rng), ab(rng), ab(rng), (i % 2) ? 1.0 : -1.0};
    if (i % 5 == 0) d.sigma = 1.0;
    try {
      const auto cp = classify(d);
      CHECK(2 * cp.rho_exact + cp.varsigma_exact == 1);
      CHECK((static_cast<double>(cp.L) + 0.5) * d.sigma > 1.0);
      CHECK((static_cast<double>(cp.L) - 0.5) * d.sigma <= 1.0);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedTauZero);
    }
  }
}

TEST_CASE("property: reflection keeps tau and mirrors the a.c. set") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> sig(0.1, 1.5), al(-0.9, 2.0), be(-2.0, 2.0), lam(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double s = (i % 4 == 0) ? 1.0 : sig(rng);
    const auto m = power_model(s, al(rng), be(rng), (i % 2) ? 1.0 : -1.0);
    const auto r = reflect(m);
    try {
      const auto cm = classify(m);
      const auto cr = classify(r);
      CHECK(cr.tau == cm.tau);
      CHECK(cr.gamma == -cm.gamma);
      for (int k = 0; k < 10; ++k) {
        const double x = lam(rng);
        CHECK(cr.ac_set.contains(-x) == cm.ac_set.contains(x));
      }
      for (long n : {0L, 1L, 7L, 1000L}) {
        CHECK(r.a(n) == m.a(n));
        CHECK(r.b(n) == -m.b(n));
      }
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedTauZero);
    }
  }
}

TEST_CASE("built-in models follow their descriptors") {
  const auto lag = laguerre_model(1.5);
  const double c1 = descriptor_deviation(lag, 100, 10'000);
  const double c2 = descriptor_deviation(lag, 10'000, 1'000'000);
  CHECK(c1 < 1.0);
  CHECK(std::abs(c1 - c2) < 0.05 * c1 + 1e-3);
  const auto pw = power_model(1.25, 0.3, -0.2, 1.0);
  CHECK(descriptor_deviation(pw, 100, 10'000) < 1e-6);
  CHECK(pw.a(0) == 1.0);
  CHECK(pw.b(0) == 0.0);
  CHECK(pw.a(10) == doctest::Approx(std::pow(10.0, 1.25) * 1.03));
  CHECK(pw.b(10) == doctest::Approx(2.0 * std::pow(10.0, 1.25) * 0.98));
  CHECK(lag.a(3) == doctest::Approx(std::sqrt(4.0 * 5.5)));
  CHECK(lag.b(3) == doctest::Approx(2.0 * 3 + 1.5 + 1.0));
}

TEST_CASE("table model") {
  const AsymptoticDescriptor d{1.0, 0.0, 0.0, 1.0};
  const auto t = table_model({5.0, 6.0}, {1.0, 2.0}, d);
  CHECK(t.a(0) == 5.0);
  CHECK(t.b(1) == 2.0);
  CHECK(t.a(2) == 2.0);
  CHECK(t.b(3) == 6.0);
  std::vector<double> a(40, 1.0), b(40, 0.0);
  CHECK(kind_of([&] { table_model(a, b, d); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { table_model({1.0}, {1.0, 2.0}, AsymptoticDescriptor{}); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("a.c. set membership") {
  const AcSet half{AcSet::Kind::half_line, 0.5, -1};
  CHECK(half.contains(0.0));
  CHECK(!half.contains(0.5));
  CHECK(half.closure_contains(0.5));
  CHECK(!half.contains(1.0));
  CHECK(half.to_string() == "(-inf,0.5)");
  const AcSet whole{AcSet::Kind::whole_line, 0.0, 1};
  CHECK(whole.contains(-1e9));
}
