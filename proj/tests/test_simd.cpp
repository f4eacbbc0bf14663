#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "critjac/coeffs.hpp"
#include "critjac/simd.hpp"

using namespace critjac;

namespace {

std::vector<simd::Isa> vector_isas() {
  std::vector<simd::Isa> out;
  for (auto isa : {simd::Isa::avx2, simd::Isa::neon})
    if (simd::supported(isa)) out.push_back(isa);
  return out;
}

struct Coeffs {
  std::vector<double> a, b, a2;
};

Coeffs coefficients(const CoefficientModel& m, long n) {
  Coeffs c;
  for (long k = 0; k <= n; ++k) {
    c.a.push_back(m.a(k));
    c.b.push_back(m.b(k));
    c.a2.push_back(m.a(k) * m.a(k));
  }
  return c;
}

}  // namespace

TEST_CASE("scalar reference is always available") {
  CHECK(simd::supported(simd::Isa::scalar));
  CHECK(simd::supported(simd::active_isa()));
  CHECK(std::strlen(simd::to_string(simd::active_isa())) > 0);
}

TEST_CASE("vector recurrence is bitwise equal to the scalar reference") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-50.0, 300.0);
  for (const auto& m : {laguerre_model(0.0), power_model(1.25, 0.0, -0.8, 1.0), power_model(0.5, 0.0, 0.0, -1.0)}) {
    const Coeffs c = coefficients(m, 3000);
    for (std::size_t count : {1u, 3u, 4u, 7u, 33u}) {
      std::vector<double> x(count);
      for (auto& v : x) v = u(rng);
      const long lo = 100, hi = 3000;
      const std::size_t cells = static_cast<std::size_t>(hi - lo + 1) * count;
      std::vector<double> m_ref(cells);
      std::vector<int> e_ref(cells);
      simd::recurrence_batch(c.a.data(), c.b.data(), lo, hi, x.data(), count, m_ref.data(), e_ref.data(),
                             simd::Isa::scalar);
      for (auto isa : vector_isas()) {
        std::vector<double> mv(cells);
        std::vector<int> ev(cells);
        simd::recurrence_batch(c.a.data(), c.b.data(), lo, hi, x.data(), count, mv.data(), ev.data(), isa);
        CAPTURE(simd::to_string(isa));
        CHECK(std::memcmp(mv.data(), m_ref.data(), cells * sizeof(double)) == 0);
        CHECK(ev == e_ref);
      }
    }
  }
}

TEST_CASE("rescaled representation stays finite where plain doubles overflow") {
  const auto m = laguerre_model(0.0);
  const Coeffs c = coefficients(m, 20'000);
  const double x = -50.0;
  double mant = 0.0;
  int e = 0;
  simd::recurrence_batch(c.a.data(), c.b.data(), 20'000, 20'000, &x, 1, &mant, &e, simd::Isa::scalar);
  CHECK(std::isfinite(mant));
  CHECK(e > 1024);
}

TEST_CASE("vector Sturm counts equal the scalar reference") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-20.0, 200.0);
  const Coeffs c = coefficients(power_model(1.0, 0.0, 0.0, 1.0), 2000);
  for (std::size_t count : {1u, 2u, 4u, 5u, 64u}) {
    std::vector<double> x(count);
    for (auto& v : x) v = u(rng);
    std::vector<long> ref(count);
    simd::sturm_count_batch(c.a2.data(), c.b.data(), 2000, x.data(), count, ref.data(), simd::Isa::scalar);
    for (std::size_t k = 1; k < count; ++k)
      if (x[k] > x[k - 1]) CHECK(ref[k] >= ref[k - 1]);
    for (auto isa : vector_isas()) {
      std::vector<long> got(count);
      simd::sturm_count_batch(c.a2.data(), c.b.data(), 2000, x.data(), count, got.data(), isa);
      CHECK(got == ref);
    }
  }
}
