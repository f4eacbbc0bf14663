#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace critjac {

using Rational = boost::multiprecision::cpp_rational;

// Truncated power series in t with exact coefficients; index = power.
using RationalSeries = std::vector<Rational>;

// a_k = 2 (-1)^{k+1} / (2k)!, the coefficients of 2 - 2 cos(theta) in theta^2.
Rational cosine_coefficient(int k);

// p_2..p_L (index 0 holds p_2). Empty for L = 1.
std::vector<Rational> eikonal_coefficients(int L);

// Coefficients of 2 sum_{l=1}^{L} (-1)^{l+1} s^l / (2l)! - t at t^0..t^degree,
// where s = t + sum p_l t^l. Zero at t^1..t^L certifies the coefficients.
RationalSeries eikonal_certificate(const std::vector<Rational>& p, int L, int degree);

std::string to_fraction_string(const Rational& r);

}  // namespace critjac
