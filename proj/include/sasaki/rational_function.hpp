#pragma once

// Elements of Q(t), kept in lowest terms with a monic denominator. Used as
// the field for the one-parameter ray family, so that the same solver code
// produces exact functions of t instead of numbers.

#include <utility>

#include "sasaki/polynomial.hpp"

namespace sasaki {

class RationalFunction {
 public:
  RationalFunction() : num_(), den_(QPoly::constant(Rational(1))) {}
  RationalFunction(long value) : RationalFunction(Rational(value)) {}  // NOLINT
  RationalFunction(const Rational& value)                              // NOLINT
      : num_(QPoly::constant(value)), den_(QPoly::constant(Rational(1))) {}
  RationalFunction(QPoly num)  // NOLINT
      : num_(std::move(num)), den_(QPoly::constant(Rational(1))) {}
  RationalFunction(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RationalFunction variable() { return RationalFunction(QPoly{Rational(0), Rational(1)}); }

  const QPoly& numerator() const { return num_; }
  const QPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Rational operator()(const Rational& t) const {
    Rational d = den_(t);
    if (d == 0) throw std::domain_error("rational function evaluated at a pole");
    return num_(t) / d;
  }

  RationalFunction& operator+=(const RationalFunction& o) {
    if (den_ == o.den_) {
      num_ += o.num_;
      normalize();
    } else {
      *this = RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    return *this;
  }
  RationalFunction& operator-=(const RationalFunction& o) { return *this += -o; }
  RationalFunction& operator*=(const RationalFunction& o) {
    *this = RationalFunction(num_ * o.num_, den_ * o.den_);
    return *this;
  }
  RationalFunction& operator/=(const RationalFunction& o) {
    if (o.is_zero()) throw std::domain_error("rational function division by zero");
    *this = RationalFunction(num_ * o.den_, den_ * o.num_);
    return *this;
  }

  friend RationalFunction operator-(RationalFunction a) {
    a.num_ = -a.num_;
    return a;
  }
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = QPoly::constant(Rational(1));
      return;
    }
    QPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_quotient(num_, g);
      den_ = exact_quotient(den_, g);
    }
    Rational lead = den_.leading();
    num_ /= lead;
    den_ /= lead;
  }

  QPoly num_;
  QPoly den_;
};

}  // namespace sasaki
