#include "ldev/rational.hpp"

#include <cmath>
#include <sstream>

#include "ldev/errors.hpp"

namespace ldev {

Rational::Rational(const Int& num, const Int& den) {
  if (den.is_zero()) throw RegimeError("Rational: zero denominator");
  if (den < 0) {
    v_ = boost::multiprecision::cpp_rational(Int(-num), Int(-den));
  } else {
    v_ = boost::multiprecision::cpp_rational(num, den);
  }
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw RegimeError("Rational::from_double: non-finite input");
  if (x == 0.0) return Rational();
  int exp = 0;
  double frac = std::frexp(x, &exp);           // x = frac * 2^exp, |frac| in [0.5, 1)
  auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));  // exact: 53-bit integer
  exp -= 53;
  Rational r(mant);
  Int one = 1;
  if (exp >= 0) {
    r.v_ *= boost::multiprecision::cpp_rational(one << exp);
  } else {
    r.v_ /= boost::multiprecision::cpp_rational(one << -exp);
  }
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw RegimeError("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::pow(unsigned e) const {
  Rational base = *this, acc(1);
  while (e) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

namespace {

// log of a positive big integer: top bits as long double plus msb*ln2.
long double log_big(const Rational::Int& v) {
  using boost::multiprecision::msb;
  unsigned bits = msb(v);  // position of the highest set bit
  if (bits <= 62) return std::log(static_cast<long double>(v.convert_to<std::uint64_t>()));
  Rational::Int top = v >> (bits - 62);
  long double lead = std::log(static_cast<long double>(top.convert_to<std::uint64_t>()));
  return lead + static_cast<long double>(bits - 62) * 0.693147180559945309417232121458L;
}

}  // namespace

double Rational::log_value() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  if (is_negative()) throw RegimeError("Rational::log_value: negative value");
  return static_cast<double>(log_big(numerator()) - log_big(denominator()));
}

std::string Rational::to_string() const {
  std::ostringstream os;
  os << numerator() << "/" << denominator();
  return os.str();
}

}  // namespace ldev
