#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace ldev {

// Exact rational arithmetic for the brute-force oracle and exact moment
// checks.  Backed by Boost.Multiprecision; always in lowest terms with a
// positive denominator (the backend canonicalizes on every operation).
class Rational {
 public:
  using Int = boost::multiprecision::cpp_int;

  Rational() : v_(0) {}
  Rational(std::int64_t n) : v_(n) {}
  Rational(std::int64_t num, std::int64_t den) : Rational(Int(num), Int(den)) {}
  // The backend rejects negative denominators outright, so normalize the
  // sign here; a zero denominator is a caller error.
  Rational(const Int& num, const Int& den);

  // Exact value of a finite double (every finite double is m * 2^e).
  static Rational from_double(double x);

  Int numerator() const { return boost::multiprecision::numerator(v_); }
  Int denominator() const { return boost::multiprecision::denominator(v_); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

  Rational pow(unsigned e) const;

  bool is_zero() const { return v_.is_zero(); }
  bool is_negative() const { return v_ < 0; }

  double to_double() const { return v_.convert_to<double>(); }
  // Natural log of a positive rational, accurate to ~1e-16 relative even when
  // numerator/denominator have hundreds of thousands of bits.
  double log_value() const;

  std::string to_string() const;

 private:
  boost::multiprecision::cpp_rational v_;
};

}  // namespace ldev
