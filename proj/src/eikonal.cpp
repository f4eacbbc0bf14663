#include "critjac/eikonal.hpp"

#include <stdexcept>

namespace critjac {

namespace {

RationalSeries multiply(const RationalSeries& x, const RationalSeries& y, int degree) {
  RationalSeries out(degree + 1, Rational(0));
  for (int i = 0; i < static_cast<int>(x.size()) && i <= degree; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < static_cast<int>(y.size()) && i + j <= degree; ++j) {
      if (y[j] != 0) out[i + j] += x[i] * y[j];
    }
  }
  return out;
}

// t + sum_{l>=2} p_l t^l, truncated at `degree`.
RationalSeries theta_squared(const std::vector<Rational>& p, int degree) {
  RationalSeries s(degree + 1, Rational(0));
  if (degree >= 1) s[1] = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int power = static_cast<int>(i) + 2;
    if (power <= degree) s[power] = p[i];
  }
  return s;
}

Rational factorial(int n) {
  Rational f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Rational cosine_coefficient(int k) {
  const Rational sign = (k % 2 == 1) ? Rational(1) : Rational(-1);
  return sign * 2 / factorial(2 * k);
}

std::vector<Rational> eikonal_coefficients(int L) {
  if (L < 1) throw std::invalid_argument("eikonal depth must be positive");
  std::vector<Rational> p;
  // Q_l = P_l + sum_{k=2}^{l} a_k (P_l + t)^k vanishes at t^2..t^l; extend one degree at a time.
  for (int l = 1; l < L; ++l) {
    const int degree = l + 1;
    const RationalSeries s = theta_squared(p, degree);
    RationalSeries q(degree + 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) q[i + 2] += p[i];
    RationalSeries power = s;
    for (int k = 2; k <= l; ++k) {
      power = multiply(power, s, degree);
      const Rational a = cosine_coefficient(k);
      for (int j = 0; j <= degree; ++j) q[j] += a * power[j];
    }
    p.push_back(-cosine_coefficient(l + 1) - q[l + 1]);
  }
  return p;
}

RationalSeries eikonal_certificate(const std::vector<Rational>& p, int L, int degree) {
  const RationalSeries s = theta_squared(p, degree);
  RationalSeries out(degree + 1, Rational(0));
  RationalSeries power(degree + 1, Rational(0));
  power[0] = 1;
  for (int l = 1; l <= L; ++l) {
    power = multiply(power, s, degree);
    const Rational a = cosine_coefficient(l);
    for (int j = 0; j <= degree; ++j) out[j] += a * power[j];
  }
  if (degree >= 1) out[1] -= 1;
  return out;
}

std::string to_fraction_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace critjac
