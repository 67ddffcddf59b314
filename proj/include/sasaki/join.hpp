#pragma once

// Join data M *_{l1,l2} S^3_w: parameter validation, quotient orbifold data of
// a ray v in the w-Sasaki cone, and the admissible data it induces.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/rational.hpp"

namespace sasaki {

struct WeightVector {
  std::int64_t w1 = 1;
  std::int64_t w2 = 1;

  std::int64_t norm() const { return w1 + w2; }  // |w|
  bool is_unit() const { return w1 == 1 && w2 == 1; }
  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/// A compact CSC Kähler base N. The normalized scalar curvature of the
/// rescaled base is s_{N_n} = sigma / n.
struct BaseGeometry {
  std::string name;
  int dN = 1;
  Rational sigma;
  std::optional<std::int64_t> fano_index;
  bool kahler_einstein = false;

  bool quasi_monotone() const { return fano_index.has_value(); }
  bool positive_kahler_einstein() const { return kahler_einstein && fano_index && *fano_index > 0; }

  friend bool operator==(const BaseGeometry& a, const BaseGeometry& b) {
    return a.name == b.name && a.dN == b.dN && a.sigma == b.sigma && a.fano_index == b.fano_index &&
           a.kahler_einstein == b.kahler_einstein;
  }
};

inline void check_base(const BaseGeometry& base) {
  if (base.dN < 1) throw Error(ErrorCode::NonPositiveInput, "base '" + base.name + "' has dN < 1");
  if (base.kahler_einstein) {
    if (!base.fano_index)
      throw Error(ErrorCode::PreconditionViolated, "Kähler-Einstein base '" + base.name + "' needs a fano_index");
    if (base.sigma != Rational(static_cast<long>(*base.fano_index)))
      throw Error(ErrorCode::PreconditionViolated,
                  "Kähler-Einstein base '" + base.name + "' must have sigma equal to its fano_index");
  }
}

namespace bases {

inline BaseGeometry cp1() { return {"CP1", 1, Rational(2), 2, true}; }
inline BaseGeometry cp2() { return {"CP2", 2, Rational(3), 3, true}; }
inline BaseGeometry k3() { return {"K3", 2, Rational(0), 0, true}; }  // Ricci-flat

/// Genus-g curve with its constant curvature metric; sigma = 2 - 2g.
inline BaseGeometry riemann_surface(int genus) {
  if (genus < 0) throw Error(ErrorCode::NonPositiveInput, "genus must be >= 0");
  const std::int64_t chi = 2 - 2 * static_cast<std::int64_t>(genus);
  return {"RiemannSurface(" + std::to_string(genus) + ")", 1, Rational(static_cast<long>(chi)), chi, true};
}

}  // namespace bases

struct JoinSpec {
  BaseGeometry base;
  std::int64_t l1 = 1;
  std::int64_t l2 = 1;
  WeightVector w;

  std::int64_t chern_key() const { return l1 * w.norm(); }  // l1 |w|
  /// Excluded ray parameter t = w2/w1, where the quotient degenerates (n = 0).
  Rational excluded_t() const { return make_rational(w.w2, w.w1); }
};

/// Checks gcd(w1,w2) = 1, w1 >= w2 and the admissibility condition
/// gcd(l2, l1 w1 w2) = 1.
inline JoinSpec validate_join(const BaseGeometry& base, std::int64_t l1, std::int64_t l2, WeightVector w) {
  check_base(base);
  if (l1 <= 0 || l2 <= 0 || w.w1 <= 0 || w.w2 <= 0)
    throw Error(ErrorCode::NonPositiveInput, "l1, l2, w1, w2 must all be positive");
  if (const auto g = gcd64(w.w1, w.w2); g != 1)
    throw Error(ErrorCode::WeightsNotCoprime, "gcd(w1, w2) = gcd(" + std::to_string(w.w1) + ", " +
                                                  std::to_string(w.w2) + ") = " + std::to_string(g) + " != 1");
  if (w.w1 < w.w2)
    throw Error(ErrorCode::WeightsUnordered,
                "w1 >= w2 required, got w = (" + std::to_string(w.w1) + ", " + std::to_string(w.w2) + ")");
  const std::int64_t prod = l1 * w.w1 * w.w2;
  if (const auto g = gcd64(l2, prod); g != 1)
    throw Error(ErrorCode::AdmissibilityGcdFailure, "gcd(l2, l1*w1*w2) = gcd(" + std::to_string(l2) + ", " +
                                                        std::to_string(prod) + ") = " + std::to_string(g) +
                                                        " != 1");
  return JoinSpec{base, l1, l2, w};
}

/// v1 H1 + v2 H2 in the w-Sasaki cone. Quasi-regular rays have coprime
/// positive integer components; other positive rationals stand for real rays
/// through the s := 1 convention.
struct RayVector {
  Rational v1{1};
  Rational v2{1};

  static RayVector integral(std::int64_t a, std::int64_t b) {
    return {Rational(static_cast<long>(a)), Rational(static_cast<long>(b))};
  }
  /// The ray (1, t).
  static RayVector slope(const Rational& t) { return {Rational(1), t}; }

  bool positive() const { return sgn(v1) > 0 && sgn(v2) > 0; }
  bool quasi_regular() const {
    if (!positive() || !is_integer(v1) || !is_integer(v2)) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), v1.get_num_mpz_t(), v2.get_num_mpz_t());
    return g == 1;
  }
  bool is_unit() const { return v1 == 1 && v2 == 1; }
  Rational slope_value() const { return v2 / v1; }
};

struct FiberQuotientData {
  std::int64_t q = 0;   // w1 v2 - w2 v1
  std::int64_t s = 1;   // gcd(|q|, l2)
  std::int64_t m = 1;   // l2 / s
  std::int64_t m1 = 1;  // v1 m
  std::int64_t m2 = 1;  // v2 m
  std::int64_t n = 1;   // l1 q / s
  Rational r;           // q / (w1 v2 + w2 v1)
};

enum class RayClass { regular, almost_regular, quasi_regular };

inline std::string to_string(RayClass c) {
  switch (c) {
    case RayClass::regular: return "regular";
    case RayClass::almost_regular: return "almost_regular";
    case RayClass::quasi_regular: return "quasi_regular";
  }
  return "unknown";
}

/// Inputs of the extremal boundary-value problem.
struct AdmissibleData {
  int dN = 1;
  Rational sNn;
  Rational r;
  Rational m1{1};
  Rational m2{1};

  friend bool operator==(const AdmissibleData&, const AdmissibleData&) = default;
};

inline void check_admissible(const AdmissibleData& d) {
  if (d.dN < 1) throw Error(ErrorCode::InvalidAdmissibleData, "dN must be >= 1");
  if (sgn(d.m1) <= 0 || sgn(d.m2) <= 0) throw Error(ErrorCode::InvalidAdmissibleData, "m1, m2 must be positive");
  if (sgn(d.r) == 0 || abs(d.r) >= 1)
    throw Error(ErrorCode::InvalidAdmissibleData, "0 < |r| < 1 required, got r = " + to_string(d.r));
}

namespace detail {

inline void require_quasi_regular(const RayVector& v) {
  if (!v.quasi_regular())
    throw Error(ErrorCode::NotQuasiRegular, "ray (" + to_string(v.v1) + ", " + to_string(v.v2) +
                                                ") is not a pair of coprime positive integers");
}

inline std::int64_t to_i64(const Rational& x) { return static_cast<std::int64_t>(x.get_num().get_si()); }

}  // namespace detail

inline FiberQuotientData fiber_quotient(const JoinSpec& join, const RayVector& v) {
  detail::require_quasi_regular(v);
  const std::int64_t v1 = detail::to_i64(v.v1);
  const std::int64_t v2 = detail::to_i64(v.v2);
  FiberQuotientData f;
  f.q = join.w.w1 * v2 - join.w.w2 * v1;
  if (f.q == 0)
    throw Error(ErrorCode::DegenerateRay, "w1*v2 = w2*v1: the ray is proportional to w");
  f.s = gcd64(f.q < 0 ? -f.q : f.q, join.l2);
  f.m = join.l2 / f.s;
  f.m1 = v1 * f.m;
  f.m2 = v2 * f.m;
  f.n = join.l1 * f.q / f.s;
  f.r = make_rational(f.q, join.w.w1 * v2 + join.w.w2 * v1);
  return f;
}

inline RayClass classify_ray(const JoinSpec& join, const RayVector& v) {
  const FiberQuotientData f = fiber_quotient(join, v);
  if (!v.is_unit()) return RayClass::quasi_regular;
  return f.s == join.l2 ? RayClass::regular : RayClass::almost_regular;
}

/// Admissible data in the s := 1 convention: m_i = v_i l2 and
/// s_{N_n} = sigma / (l1 q). Defined for any positive rational ray.
inline AdmissibleData admissible_data_unit_s(const JoinSpec& join, const RayVector& v) {
  if (!v.positive()) throw Error(ErrorCode::NonPositiveInput, "ray components must be positive");
  const Rational w1(static_cast<long>(join.w.w1));
  const Rational w2(static_cast<long>(join.w.w2));
  const Rational q = w1 * v.v2 - w2 * v.v1;
  if (sgn(q) == 0) throw Error(ErrorCode::DegenerateRay, "w1*v2 = w2*v1: the ray is proportional to w");
  const Rational l1(static_cast<long>(join.l1));
  const Rational l2(static_cast<long>(join.l2));
  AdmissibleData d;
  d.dN = join.base.dN;
  d.r = q / (w1 * v.v2 + w2 * v.v1);
  d.m1 = v.v1 * l2;
  d.m2 = v.v2 * l2;
  d.sNn = join.base.sigma / (l1 * q);
  return d;
}

/// Admissible data of the quotient orbifold for quasi-regular rays; other
/// rays fall back to the s := 1 convention.
inline AdmissibleData admissible_data_for_ray(const JoinSpec& join, const RayVector& v) {
  if (!v.quasi_regular()) return admissible_data_unit_s(join, v);
  const FiberQuotientData f = fiber_quotient(join, v);
  AdmissibleData d;
  d.dN = join.base.dN;
  d.r = f.r;
  d.m1 = Rational(static_cast<long>(f.m1));
  d.m2 = Rational(static_cast<long>(f.m2));
  d.sNn = join.base.sigma / Rational(static_cast<long>(f.n));
  return d;
}

struct RelativeFanoIndices {
  std::int64_t l1;
  std::int64_t l2;
};

inline RelativeFanoIndices relative_fano_indices(std::int64_t fano_index, const WeightVector& w) {
  if (fano_index < 1) throw Error(ErrorCode::PreconditionViolated, "fano_index must be >= 1");
  const std::int64_t g = gcd64(w.norm(), fano_index);
  return {fano_index / g, w.norm() / g};
}

struct ContactInvariants {
  std::int64_t c1_coefficient;  // c1(D) = c1_coefficient * gamma
  int w2_class;                 // second Stiefel-Whitney class, mod 2
};

inline ContactInvariants contact_invariants(const JoinSpec& join) {
  if (!join.base.fano_index)
    throw Error(ErrorCode::NotQuasiMonotone, "base '" + join.base.name + "' has no quasi-monotone index");
  const std::int64_t c1 = join.l2 * *join.base.fano_index - join.chern_key();
  return {c1, static_cast<int>(((c1 % 2) + 2) % 2)};
}

}  // namespace sasaki
