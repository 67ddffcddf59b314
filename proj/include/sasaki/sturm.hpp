#pragma once

// Exact real-root counting, isolation and recognition for polynomials over Q.
//
// Counting uses the classical Sturm chain p, p', -rem(...). Interval
// endpoints are allowed to be roots: signs are taken as one-sided limits
// (first nonzero derivative), so every count refers to an open interval.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sasaki/polynomial.hpp"

namespace sasaki {

/// Sign of p on (x, x + eps) for all small eps > 0.
inline int sign_right_of(const QPoly& p, const Rational& x) {
  QPoly q = p;
  while (!q.is_zero()) {
    int s = sign(q(x));
    if (s != 0) return s;
    q = q.derivative();
  }
  return 0;
}

/// Sign of p on (x - eps, x) for all small eps > 0.
inline int sign_left_of(const QPoly& p, const Rational& x) {
  QPoly q = p;
  int flip = 1;
  while (!q.is_zero()) {
    int s = sign(q(x));
    if (s != 0) return s * flip;
    q = q.derivative();
    flip = -flip;
  }
  return 0;
}

class SturmChain {
 public:
  explicit SturmChain(const QPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("Sturm chain of the zero polynomial");
    seq_.push_back(p);
    QPoly next = p.derivative();
    while (!next.is_zero()) {
      seq_.push_back(next);
      QPoly rem = seq_[seq_.size() - 2] % seq_.back();
      next = -rem;
    }
  }

  const std::vector<QPoly>& sequence() const { return seq_; }

  int variations_right_of(const Rational& x) const {
    return count_changes([&](const QPoly& q) { return sign_right_of(q, x); });
  }

  int variations_left_of(const Rational& x) const {
    return count_changes([&](const QPoly& q) { return sign_left_of(q, x); });
  }

  /// Number of distinct real roots of p in the open interval (a, b).
  int count_roots_open(const Rational& a, const Rational& b) const {
    if (a >= b) return 0;
    return variations_right_of(a) - variations_left_of(b);
  }

 private:
  template <class SignFn>
  int count_changes(SignFn fn) const {
    int changes = 0;
    int last = 0;
    for (const auto& q : seq_) {
      int s = fn(q);
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  std::vector<QPoly> seq_;
};

/// A closed rational interval; lo == hi marks an exactly known rational root.
/// Otherwise the root lies in the open interval (lo, hi).
struct IsolatingInterval {
  Rational lo;
  Rational hi;

  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return exact() ? x == lo : (lo < x && x < hi); }
};

/// Every real root of p lies strictly inside (-B, B).
inline Rational cauchy_bound(const QPoly& p) {
  if (p.degree() < 1) return Rational(1);
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rational q = abs(p.coefficient(static_cast<std::size_t>(i)) / p.leading());
    if (q > m) m = q;
  }
  return m + 1;
}

/// Root isolation and refinement for the squarefree part of a polynomial.
class RootIsolator {
 public:
  explicit RootIsolator(const QPoly& p) : poly_(squarefree_part(p)), chain_(poly_) {}

  const QPoly& polynomial() const { return poly_; }
  const SturmChain& chain() const { return chain_; }

  int count_open(const Rational& a, const Rational& b) const { return chain_.count_roots_open(a, b); }

  /// Isolating intervals for all roots in the open interval (a, b), in
  /// increasing order.
  std::vector<IsolatingInterval> isolate(const Rational& a, const Rational& b) const {
    std::vector<IsolatingInterval> out;
    isolate_into(a, b, count_open(a, b), out);
    return out;
  }

  /// Isolating intervals for every real root.
  std::vector<IsolatingInterval> isolate_all() const {
    Rational b = cauchy_bound(poly_);
    return isolate(-b, b);
  }

  void bisect_once(IsolatingInterval& iv) const {
    if (iv.exact()) return;
    Rational mid = iv.midpoint();
    int s = sign(poly_(mid));
    if (s == 0) {
      iv.lo = iv.hi = mid;
    } else if (s == sign_right_of(poly_, iv.lo)) {
      iv.lo = mid;
    } else {
      iv.hi = mid;
    }
  }

  /// Bisect until the width is at most max_width (or the root is hit exactly).
  void refine(IsolatingInterval& iv, const Rational& max_width) const {
    while (!iv.exact() && iv.width() > max_width) bisect_once(iv);
  }

 private:
  void isolate_into(const Rational& a, const Rational& b, int count, std::vector<IsolatingInterval>& out) const {
    if (count == 0) return;
    if (count == 1) {
      out.push_back({a, b});
      return;
    }
    Rational mid = (a + b) / 2;
    int left = count_open(a, mid);
    isolate_into(a, mid, left, out);
    int hit = 0;
    if (poly_(mid) == 0) {
      out.push_back({mid, mid});
      hit = 1;
    }
    isolate_into(mid, b, count - left - hit, out);
  }

  QPoly poly_;
  SturmChain chain_;
};

/// |leading coefficient| of the primitive integer form of p. Denominators of
/// rational roots, and of the coefficients of monic rational factors, divide
/// it.
inline Integer primitive_leading(const QPoly& p) {
  auto ints = primitive_integer_coefficients(p);
  return ints.empty() ? Integer(1) : Integer(abs(ints.back()));
}

/// Separation width below which an interval holds at most one rational with
/// denominator <= L.
inline Rational separation_width(const Integer& lead) {
  return Rational(Integer(1), Integer(lead * lead + 1));
}

/// If the root isolated by iv is rational, return it. Complete: a rational
/// root p/q has q | L, so once the interval is narrower than 1/L^2 the
/// simplest rational inside it is the only candidate.
inline std::optional<Rational> rational_root_in(const RootIsolator& iso, IsolatingInterval iv) {
  if (iv.exact()) return iv.lo;
  const Rational width = separation_width(primitive_leading(iso.polynomial()));
  iso.refine(iv, width);
  if (iv.exact()) return iv.lo;
  Rational candidate = simplest_rational_in(iv.lo, iv.hi);
  if (iso.polynomial()(candidate) == 0) return candidate;
  return std::nullopt;
}

namespace detail {

inline std::pair<Rational, Rational> product_range(const IsolatingInterval& x, const IsolatingInterval& y) {
  Rational p[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

inline bool has_root_in(const QPoly& q, const IsolatingInterval& iv) {
  if (iv.exact()) return q(iv.lo) == 0;
  return SturmChain(squarefree_part(q)).count_roots_open(iv.lo, iv.hi) > 0;
}

}  // namespace detail

/// Look for a monic quadratic factor t^2 - S t + P of `poly` over Q that
/// vanishes at the irrational root isolated by x. A real quadratic
/// irrationality has a real conjugate, so it suffices to try every other real
/// root y of `poly` and recognize S = x + y and P = x*y as rationals with
/// denominators dividing the primitive leading coefficient.
inline std::optional<QPoly> quadratic_factor_for(const RootIsolator& iso, const IsolatingInterval& x,
                                                 const std::vector<IsolatingInterval>& all_roots) {
  const QPoly& poly = iso.polynomial();
  if (poly.degree() < 2 || x.exact()) return std::nullopt;
  const Rational width = separation_width(primitive_leading(poly));
  for (const auto& y0 : all_roots) {
    if (y0.exact() || (y0.lo == x.lo && y0.hi == x.hi)) continue;
    IsolatingInterval xi = x;
    IsolatingInterval yi = y0;
    for (;;) {
      auto [plo, phi] = detail::product_range(xi, yi);
      Rational sw = xi.width() + yi.width();
      Rational pw = phi - plo;
      if ((sw < width && pw < width) || xi.exact() || yi.exact()) break;
      iso.bisect_once(xi);
      iso.bisect_once(yi);
    }
    if (xi.exact() || yi.exact()) continue;  // rational root, not our concern here
    auto [plo, phi] = detail::product_range(xi, yi);
    Rational s = simplest_rational_in(xi.lo + yi.lo, xi.hi + yi.hi);
    Rational p = simplest_rational_in(plo, phi);
    QPoly candidate{p, -s, Rational(1)};
    if (!(poly % candidate).is_zero()) continue;
    if (!detail::has_root_in(candidate, x)) continue;
    return candidate;
  }
  return std::nullopt;
}

}  // namespace sasaki
