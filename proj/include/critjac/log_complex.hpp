#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace critjac {

using cplx = std::complex<double>;

// Complex value stored as exp(m) * u with |u| = 1. Zero is m = -inf.
class LogComplex {
 public:
  LogComplex() = default;
  LogComplex(double log_mag, cplx unit) : m_(log_mag), u_(unit) {}

  static LogComplex zero() { return {-std::numeric_limits<double>::infinity(), cplx(1.0, 0.0)}; }
  static LogComplex one() { return {0.0, cplx(1.0, 0.0)}; }

  static LogComplex from(cplx v) {
    const double r = std::abs(v);
    if (r == 0.0) return zero();
    if (!std::isfinite(r)) return {std::numeric_limits<double>::infinity(), cplx(1.0, 0.0)};
    return {std::log(r), v / r};
  }

  // exp(w) for complex w, without forming the exponential.
  static LogComplex exp(cplx w) { return {w.real(), std::polar(1.0, w.imag())}; }

  double log_abs() const { return m_; }
  cplx unit() const { return u_; }
  bool is_zero() const { return m_ == -std::numeric_limits<double>::infinity(); }
  double abs() const { return std::exp(m_); }
  double arg() const { return std::arg(u_); }

  cplx value() const { return is_zero() ? cplx(0.0, 0.0) : std::exp(m_) * u_; }
  // Value scaled by exp(-shift); useful when the caller tracks a common frame.
  cplx value_scaled(double shift) const { return is_zero() ? cplx(0.0, 0.0) : std::exp(m_ - shift) * u_; }

  LogComplex conj() const { return {m_, std::conj(u_)}; }
  LogComplex inverse() const { return {-m_, std::conj(u_)}; }
  LogComplex operator-() const { return {m_, -u_}; }

  friend LogComplex operator*(const LogComplex& x, const LogComplex& y) {
    if (x.is_zero() || y.is_zero()) return zero();
    return {x.m_ + y.m_, normalized(x.u_ * y.u_)};
  }
  friend LogComplex operator/(const LogComplex& x, const LogComplex& y) { return x * y.inverse(); }
  friend LogComplex operator*(const LogComplex& x, cplx c) { return x * from(c); }
  friend LogComplex operator*(cplx c, const LogComplex& x) { return x * from(c); }

  friend LogComplex operator+(const LogComplex& x, const LogComplex& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const double frame = std::max(x.m_, y.m_);
    const cplx s = x.value_scaled(frame) + y.value_scaled(frame);
    LogComplex r = from(s);
    if (!r.is_zero()) r.m_ += frame;
    return r;
  }
  friend LogComplex operator-(const LogComplex& x, const LogComplex& y) { return x + (-y); }

  LogComplex& operator*=(const LogComplex& y) { return *this = *this * y; }
  LogComplex& operator+=(const LogComplex& y) { return *this = *this + y; }

 private:
  static cplx normalized(cplx u) {
    const double r = std::abs(u);
    return r > 0.0 ? u / r : cplx(1.0, 0.0);
  }

  double m_ = -std::numeric_limits<double>::infinity();
  cplx u_{1.0, 0.0};
};

}  // namespace critjac
