#pragma once

// Exact scalars. All mathematics in this library runs over GMP rationals;
// doubles only appear as annotations for humans.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "sasaki/errors.hpp"

namespace sasaki {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sign(const Rational& x) { return sgn(x); }
inline int sign(const Integer& x) { return sgn(x); }

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline Integer ceil_of(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b(base);
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

inline Integer binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// 2^-bits as an exact rational.
inline Rational dyadic_width(unsigned bits) {
  Integer den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  return Rational(Integer(1), den);
}

/// Canonical serialization: reduced "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& x) {
  Rational c(x);
  c.canonicalize();
  return c.get_str(10);
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  if (s.front() == '+') s.erase(0, 1);
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-')
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  Integer d(den);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return make_rational(Integer(num), d);
}

/// Decimal rendering with exactly `digits` fractional digits, rounded half
/// away from zero.
inline std::string to_decimal(const Rational& x, unsigned digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Rational scaled = abs(x) * scale + Rational(1, 2);
  Integer n = floor_of(scaled);
  std::string body = n.get_str();
  if (digits > 0) {
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
  }
  if (sgn(x) < 0 && n != 0) body.insert(0, "-");
  return body;
}

inline double to_double(const Rational& x) { return x.get_d(); }

/// The rational with smallest denominator in the closed interval [lo, hi].
inline Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
  if (lo > hi) return simplest_rational_in(hi, lo);
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) return -simplest_rational_in(-hi, -lo);
  Integer c = ceil_of(lo);
  if (Rational(c) <= hi) return Rational(c);
  Integer f = floor_of(lo);
  Rational inner = simplest_rational_in(Rational(1) / (hi - f), Rational(1) / (lo - f));
  Rational out = Rational(f) + Rational(1) / inner;
  out.canonicalize();
  return out;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

/// Euler's totient by trial division.
inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace sasaki
