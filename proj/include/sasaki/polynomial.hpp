#pragma once

// Dense univariate polynomials over an exact field.
//
// Coefficients are stored lowest degree first and kept trimmed: the zero
// polynomial has no coefficients (degree -1), otherwise the last stored
// coefficient is nonzero.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/rational.hpp"

namespace sasaki {

template <class Field>
class Polynomial {
 public:
  using coefficient_type = Field;

  Polynomial() = default;
  Polynomial(std::initializer_list<Field> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<Field> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const Field& value) { return Polynomial(std::vector<Field>{value}); }

  static Polynomial monomial(const Field& coeff, std::size_t power) {
    std::vector<Field> c(power + 1, Field(0));
    c[power] = coeff;
    return Polynomial(std::move(c));
  }

  /// The linear polynomial a + b*x.
  static Polynomial linear(const Field& a, const Field& b) { return Polynomial{a, b}; }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Field& leading() const { return c_.back(); }
  const std::vector<Field>& coefficients() const { return c_; }

  Field coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Field(0); }

  template <class T>
  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= x;
      acc += T(*it);
    }
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Field(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Field(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }

  Polynomial& operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
  }

  Polynomial& operator*=(const Field& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  Polynomial& operator/=(const Field& s) {
    for (auto& x : c_) x /= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Field& s) { return a *= s; }
  friend Polynomial operator*(const Field& s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, const Field& s) { return a /= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Field> out(a.c_.size() + b.c_.size() - 1, Field(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Field> out(c_.size() - 1, Field(0));
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Field(static_cast<long>(i));
    return Polynomial(std::move(out));
  }

  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const {
    if (c_.empty()) return {};
    std::vector<Field> out(c_.size() + 1, Field(0));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i + 1] = c_[i] / Field(static_cast<long>(i + 1));
    return Polynomial(std::move(out));
  }

  /// Antiderivative that vanishes at `base`.
  Polynomial antiderivative_from(const Field& base) const {
    Polynomial a = antiderivative();
    return a - Polynomial::constant(a(base));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Field(0)) c_.pop_back();
  }

  std::vector<Field> c_;
};

using QPoly = Polynomial<Rational>;

template <class Field>
Polynomial<Field> pow(const Polynomial<Field>& p, unsigned k) {
  Polynomial<Field> out = Polynomial<Field>::constant(Field(1));
  for (unsigned i = 0; i < k; ++i) out *= p;
  return out;
}

/// Euclidean division: a = q*b + r with deg r < deg b.
template <class Field>
std::pair<Polynomial<Field>, Polynomial<Field>> divmod(const Polynomial<Field>& a,
                                                      const Polynomial<Field>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Field> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial<Field>{}, a};
  std::vector<Field> quot(static_cast<std::size_t>(a.degree() - db + 1), Field(0));
  const Field& lead = b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    Field f = rem[static_cast<std::size_t>(k + db)] / lead;
    quot[static_cast<std::size_t>(k)] = f;
    if (f == Field(0)) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * b.coefficients()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial<Field>(std::move(quot)), Polynomial<Field>(std::move(rem))};
}

template <class Field>
Polynomial<Field> operator%(const Polynomial<Field>& a, const Polynomial<Field>& b) {
  return divmod(a, b).second;
}

template <class Field>
Polynomial<Field> monic(const Polynomial<Field>& p) {
  if (p.is_zero()) return p;
  return p / p.leading();
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
template <class Field>
Polynomial<Field> gcd(Polynomial<Field> a, Polynomial<Field> b) {
  while (!b.is_zero()) {
    Polynomial<Field> r = a % b;
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

/// p / gcd(p, p'), made monic: same roots as p, all simple.
template <class Field>
Polynomial<Field> squarefree_part(const Polynomial<Field>& p) {
  if (p.degree() <= 0) return monic(p);
  Polynomial<Field> g = gcd(p, p.derivative());
  return monic(divmod(p, g).first);
}

/// Exact quotient; throws if b does not divide a.
template <class Field>
Polynomial<Field> exact_quotient(const Polynomial<Field>& a, const Polynomial<Field>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_quotient: nonzero remainder");
  return q;
}

/// Integer coefficients of the primitive polynomial proportional to p with
/// positive leading coefficient.
inline std::vector<Integer> primitive_integer_coefficients(const QPoly& p) {
  std::vector<Integer> out;
  if (p.is_zero()) return out;
  Integer l(1);
  for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  Integer g(0);
  for (const auto& c : p.coefficients()) {
    Rational scaled = c * l;
    out.push_back(scaled.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (sgn(out.back()) < 0) g = -g;
  for (auto& c : out) c /= g;
  return out;
}

inline QPoly from_integers(const std::vector<Integer>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (const auto& x : coeffs) c.emplace_back(x);
  return QPoly(std::move(c));
}

/// (1 + r z)^k as a polynomial in z.
template <class Field>
Polynomial<Field> linear_power(const Field& r, unsigned k) {
  return pow(Polynomial<Field>::linear(Field(1), r), k);
}

inline std::vector<std::string> to_strings(const QPoly& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coefficients()) out.push_back(to_string(c));
  return out;
}

/// Human-readable rendering, highest degree first, e.g. "3*t^2 - t - 1".
inline std::string to_display(const QPoly& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    Rational c = p.coefficient(static_cast<std::size_t>(i));
    if (c == 0) continue;
    const bool neg = sgn(c) < 0;
    Rational a = abs(c);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const bool unit = (a == 1) && i > 0;
    if (!unit) out += to_string(a);
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace sasaki
