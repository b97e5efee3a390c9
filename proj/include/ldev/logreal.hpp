#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "ldev/errors.hpp"

namespace ldev {

// Non-negative real stored as its natural logarithm.  Zero is -inf.
// Multiplication/division are exact up to one rounding; addition uses the
// max-shifted log1p(exp) form.  Export to linear scale is lossy outside
// double range (documented: masses below ~1e-308 flush to zero).
class LogReal {
 public:
  constexpr LogReal() : lv_(-std::numeric_limits<double>::infinity()) {}

  static constexpr LogReal zero() { return LogReal(); }
  static constexpr LogReal one() { return LogReal(0.0); }

  static LogReal from_log(double lv) {
    if (std::isnan(lv)) throw RegimeError("LogReal: NaN log value");
    return LogReal(lv);
  }
  static LogReal from_linear(double x) {
    if (std::isnan(x) || x < 0.0) throw RegimeError("LogReal: negative or NaN linear value");
    return LogReal(std::log(x));  // log(0) = -inf
  }

  double log_value() const { return lv_; }
  double linear() const { return std::exp(lv_); }
  bool is_zero() const { return std::isinf(lv_) && lv_ < 0; }

  LogReal& operator*=(LogReal o) {
    lv_ += o.lv_;
    if (std::isnan(lv_)) lv_ = -std::numeric_limits<double>::infinity();  // 0 * inf
    return *this;
  }
  LogReal& operator/=(LogReal o) {
    if (o.is_zero()) throw RegimeError("LogReal: division by zero");
    lv_ -= o.lv_;
    return *this;
  }
  LogReal& operator+=(LogReal o) {
    if (o.is_zero()) return *this;
    if (is_zero()) { lv_ = o.lv_; return *this; }
    double hi = lv_, lo = o.lv_;
    if (hi < lo) std::swap(hi, lo);
    lv_ = hi + std::log1p(std::exp(lo - hi));
    return *this;
  }

  friend LogReal operator*(LogReal a, LogReal b) { return a *= b; }
  friend LogReal operator/(LogReal a, LogReal b) { return a /= b; }
  friend LogReal operator+(LogReal a, LogReal b) { return a += b; }
  friend bool operator==(LogReal a, LogReal b) { return a.lv_ == b.lv_; }
  friend bool operator<(LogReal a, LogReal b) { return a.lv_ < b.lv_; }
  friend bool operator<=(LogReal a, LogReal b) { return a.lv_ <= b.lv_; }
  friend bool operator>(LogReal a, LogReal b) { return a.lv_ > b.lv_; }
  friend bool operator>=(LogReal a, LogReal b) { return a.lv_ >= b.lv_; }

  LogReal pow(double e) const {
    if (is_zero() && e > 0) return zero();
    return LogReal(lv_ * e);
  }

 private:
  explicit constexpr LogReal(double lv) : lv_(lv) {}
  double lv_;
};

// Sum of a sequence in log domain with an exact shift by the maximum
// element.  Empty input or all-zero input returns zero.
LogReal log_sum_exp(std::span<const LogReal> xs);

}  // namespace ldev
