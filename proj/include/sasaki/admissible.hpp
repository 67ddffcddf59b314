#pragma once

// The extremal polynomial of an admissible Kähler class and the existence
// criteria built on it.
//
// F solves
//     F''(z) = (1 + r z)^{dN-1} (2 dN s r + (alpha z + beta)(1 + r z))
// on [-1, 1] with F(+-1) = 0, F'(-1) = 2 (1-r)^dN / m2 and
// F'(1) = -2 (1+r)^dN / m1. Integrating twice from z = -1 leaves a 2x2
// linear system for (alpha, beta) whose entries are the moments
//     M(k, j) = int_{-1}^{1} y^j (1 + r y)^k dy,
// evaluated as polynomials in r (odd binomial terms drop out). The solver is
// generic in the field so that it also runs over Q(t) for the ray family.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sasaki/join.hpp"
#include "sasaki/polynomial.hpp"
#include "sasaki/sturm.hpp"

namespace sasaki {

template <class Field>
Field field_pow(const Field& x, unsigned k) {
  Field out(1);
  for (unsigned i = 0; i < k; ++i) out *= x;
  return out;
}

/// int_{-1}^{1} y^j (1 + r y)^k dy.
template <class Field>
Field moment(unsigned k, unsigned j, const Field& r) {
  Field acc(0);
  Field rp(1);
  for (unsigned i = 0; i <= k; ++i) {
    if ((i + j) % 2 == 0) {
      Rational coeff(Integer(binomial(k, i) * 2), Integer(static_cast<unsigned long>(i + j + 1)));
      coeff.canonicalize();
      acc += Field(coeff) * rp;
    }
    rp *= r;
  }
  return acc;
}

template <class Field>
struct ExtremalCoefficients {
  Field alpha;
  Field beta;
};

/// Solves for (alpha, beta). Throws SingularSystem when the 2x2 determinant
/// vanishes identically in the field.
template <class Field>
ExtremalCoefficients<Field> extremal_coefficients(int dN, const Field& sNn, const Field& r, const Field& m1,
                                                  const Field& m2) {
  const auto d = static_cast<unsigned>(dN);
  const Field M0 = moment<Field>(d, 0, r);
  const Field M1 = moment<Field>(d, 1, r);
  const Field M2 = moment<Field>(d, 2, r);
  const Field N0 = moment<Field>(d - 1, 0, r);
  const Field N1 = moment<Field>(d - 1, 1, r);
  const Field source = Field(static_cast<long>(2 * dN)) * sNn * r;
  const Field plus = field_pow<Field>(Field(1) + r, d);
  const Field minus = field_pow<Field>(Field(1) - r, d);

  // F'(1) - F'(-1) = int F''
  const Field a11 = M1;
  const Field a12 = M0;
  const Field b1 = -(Field(2) * plus / m1) - (Field(2) * minus / m2) - source * N0;
  // F(1) - F(-1) - 2 F'(-1) = int (1 - y) F''
  const Field a21 = M1 - M2;
  const Field a22 = M0 - M1;
  const Field b2 = -(Field(4) * minus / m2) - source * (N0 - N1);

  const Field det = a11 * a22 - a12 * a21;
  if (det == Field(0)) throw Error(ErrorCode::SingularSystem, "extremal linear system has zero determinant");
  return {(b1 * a22 - b2 * a12) / det, (a11 * b2 - a21 * b1) / det};
}

struct ExtremalSolution {
  QPoly F;
  Rational alpha;
  Rational beta;
  AdmissibleData data;
};

/// Right-hand side of the extremal ODE as a polynomial in z.
inline QPoly extremal_second_derivative(const AdmissibleData& d, const Rational& alpha, const Rational& beta) {
  const QPoly base = linear_power(d.r, static_cast<unsigned>(d.dN - 1));
  const Rational source = Rational(2 * d.dN) * d.sNn * d.r;
  const QPoly inner = QPoly::constant(source) + QPoly::linear(beta, alpha) * QPoly::linear(Rational(1), d.r);
  return base * inner;
}

inline ExtremalSolution solve_extremal(const AdmissibleData& data) {
  check_admissible(data);
  const auto d = static_cast<unsigned>(data.dN);
  ExtremalCoefficients<Rational> ab;
  try {
    ab = extremal_coefficients<Rational>(data.dN, data.sNn, data.r, data.m1, data.m2);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularSystem) throw;
    throw Error(ErrorCode::SingularSystem, "zero determinant at dN=" + std::to_string(data.dN) +
                                               ", sNn=" + to_string(data.sNn) + ", r=" + to_string(data.r) +
                                               ", m1=" + to_string(data.m1) + ", m2=" + to_string(data.m2));
  }
  const Rational slope_lo = Rational(2) * pow(Rational(1) - data.r, d) / data.m2;
  const Rational slope_hi = Rational(-2) * pow(Rational(1) + data.r, d) / data.m1;

  const QPoly Fpp = extremal_second_derivative(data, ab.alpha, ab.beta);
  const QPoly Fp = Fpp.antiderivative_from(Rational(-1)) + QPoly::constant(slope_lo);
  const QPoly F = Fp.antiderivative_from(Rational(-1));
  if (F(Rational(1)) != 0 || Fp(Rational(1)) != slope_hi)
    throw std::logic_error("extremal solve failed its own boundary check");
  return {F, ab.alpha, ab.beta, data};
}

enum class PositivityStatus { positive, boundary_zero_only, fails };

inline std::string to_string(PositivityStatus s) {
  switch (s) {
    case PositivityStatus::positive: return "positive";
    case PositivityStatus::boundary_zero_only: return "boundary_zero_only";
    case PositivityStatus::fails: return "fails";
  }
  return "unknown";
}

/// Positivity of F on the open interval (-1, 1).
///
/// positive: no roots inside and F > 0 there, with at most simple zeros at
/// the endpoints. boundary_zero_only: positive inside but with a multiple
/// zero at an endpoint (the boundary slope conditions cannot hold). fails:
/// F has an interior root or is negative inside; `witness` then brackets a
/// root (width < 2^-32) or is a small interval where F < 0.
struct PositivityReport {
  PositivityStatus status = PositivityStatus::fails;
  int interior_roots = 0;
  std::optional<IsolatingInterval> witness;
  int variations_at_minus_one = 0;  // Sturm sign variations at -1 (right limit)
  int variations_at_plus_one = 0;   // and at +1 (left limit)
};

inline PositivityReport positivity(const QPoly& F) {
  if (F.is_zero()) throw Error(ErrorCode::PreconditionViolated, "positivity of the zero polynomial");
  const Rational lo(-1);
  const Rational hi(1);
  const RootIsolator iso(F);
  PositivityReport rep;
  rep.variations_at_minus_one = iso.chain().variations_right_of(lo);
  rep.variations_at_plus_one = iso.chain().variations_left_of(hi);
  rep.interior_roots = rep.variations_at_minus_one - rep.variations_at_plus_one;

  const Rational witness_width = dyadic_width(33);
  if (rep.interior_roots > 0) {
    IsolatingInterval iv = iso.isolate(lo, hi).front();
    iso.refine(iv, witness_width);
    rep.witness = iv;
    rep.status = PositivityStatus::fails;
    return rep;
  }
  if (sign(F(Rational(0))) < 0) {
    rep.witness = IsolatingInterval{Rational(0), witness_width};
    rep.status = PositivityStatus::fails;
    return rep;
  }
  const QPoly dF = F.derivative();
  const bool flat_end = (F(lo) == 0 && dF(lo) == 0) || (F(hi) == 0 && dF(hi) == 0);
  rep.status = flat_end ? PositivityStatus::boundary_zero_only : PositivityStatus::positive;
  return rep;
}

enum class ExistenceVerdict { exists_admissible, no_admissible_manifold_case, unknown_orbifold };

inline std::string to_string(ExistenceVerdict v) {
  switch (v) {
    case ExistenceVerdict::exists_admissible: return "exists_admissible";
    case ExistenceVerdict::no_admissible_manifold_case: return "no_admissible_manifold_case";
    case ExistenceVerdict::unknown_orbifold: return "unknown_orbifold";
  }
  return "unknown";
}

/// Positivity proves existence. Non-positivity rules out an extremal metric
/// only in the manifold case m1 = m2 = 1; for orbifolds it is inconclusive.
inline ExistenceVerdict extremal_exists(const AdmissibleData& data) {
  const ExtremalSolution sol = solve_extremal(data);
  if (positivity(sol.F).status == PositivityStatus::positive) return ExistenceVerdict::exists_admissible;
  if (data.m1 == 1 && data.m2 == 1) return ExistenceVerdict::no_admissible_manifold_case;
  return ExistenceVerdict::unknown_orbifold;
}

/// alpha of the extremal solution; zero exactly when the class carries an
/// admissible CSC metric.
inline Rational csc_residual(const AdmissibleData& data) { return solve_extremal(data).alpha; }

/// The closed-form CSC condition
///   2 s ((1+r)^{d+1} - (1-r)^{d+1}) / (r (d+1))
///     - k ((1+r)^{d+2} - (1-r)^{d+2}) / (r^2 (d+1)(d+2)) + 2c = 0.
///
/// Two readings of c are carried. The printed one has the term 2 m1 m2 s in
/// its numerator; it does not vanish at data that provably admit CSC metrics
/// (for dN=1, s=4, r=1/2, m1=m2=1 it evaluates to -6). The corrected one
/// uses 2 m1 m2 s r and agrees with alpha = 0. `residual` is the corrected
/// value; `residual_as_printed` is kept for the log.
struct CscClosedForm {
  Rational k;
  Rational c;
  Rational residual;
  Rational c_as_printed;
  Rational residual_as_printed;
};

inline CscClosedForm csc_closed_form(const AdmissibleData& data) {
  check_admissible(data);
  const auto d = static_cast<unsigned>(data.dN);
  const Rational& r = data.r;
  const Rational& s = data.sNn;
  const Rational& m1 = data.m1;
  const Rational& m2 = data.m2;
  const Rational p1 = Rational(1) + r;
  const Rational q1 = Rational(1) - r;
  const Rational diff1 = pow(p1, d + 1) - pow(q1, d + 1);
  const Rational diff2 = pow(p1, d + 2) - pow(q1, d + 2);
  const Rational dd(static_cast<long>(d));

  CscClosedForm out;
  out.k = Rational(2) * (dd + 1) * r *
          (m2 * pow(p1, d) * (Rational(1) + m1 * s) - m1 * pow(q1, d) * (Rational(-1) + m2 * s)) /
          (m1 * m2 * diff1);
  auto c_with = [&](const Rational& source_term) -> Rational {
    return Rational(2) * pow(Rational(1) - r * r, d) * (m2 * q1 + m1 * p1 - source_term) / (m1 * m2 * diff1);
  };
  auto residual_with = [&](const Rational& c) -> Rational {
    return Rational(2) * s * diff1 / (r * (dd + 1)) - out.k * diff2 / (r * r * (dd + 1) * (dd + 2)) +
           Rational(2) * c;
  };
  out.c = c_with(Rational(2) * m1 * m2 * s * r);
  out.c_as_printed = c_with(Rational(2) * m1 * m2 * s);
  out.residual = residual_with(out.c);
  out.residual_as_printed = residual_with(out.c_as_printed);
  return out;
}

struct KeResiduals {
  Rational fano_residual;
  Rational integral_residual;
};

/// int_{-1}^{1} ((1 - z)/m2 - (1 + z)/m1) (1 + r z)^dN dz via moments; generic
/// in the field.
template <class Field>
Field ke_integral(int dN, const Field& r, const Field& m1, const Field& m2) {
  const auto d = static_cast<unsigned>(dN);
  const Field M0 = moment<Field>(d, 0, r);
  const Field M1 = moment<Field>(d, 1, r);
  return (M0 - M1) / m2 - (M0 + M1) / m1;
}

/// Both Kähler-Einstein conditions; both vanish exactly when the class
/// carries an admissible KE metric. `n` may be rational (s := 1 convention).
inline KeResiduals ke_residuals(const AdmissibleData& data, std::int64_t fano_index, const Rational& n) {
  check_admissible(data);
  if (sgn(n) == 0) throw Error(ErrorCode::PreconditionViolated, "n must be nonzero");
  const Rational fano(static_cast<long>(fano_index));
  if (data.sNn != fano / n)
    throw Error(ErrorCode::PreconditionViolated,
                "sNn = " + to_string(data.sNn) + " differs from fano_index/n = " + to_string(fano / n));
  KeResiduals out;
  out.fano_residual = Rational(2) * data.r * fano / n - (Rational(1) + data.r) / data.m2 -
                      (Rational(1) - data.r) / data.m1;
  const QPoly weight = QPoly::linear(Rational(1) / data.m2, Rational(-1) / data.m2) -
                       QPoly::linear(Rational(1) / data.m1, Rational(1) / data.m1);
  const QPoly integrand = weight * linear_power(data.r, static_cast<unsigned>(data.dN));
  const QPoly anti = integrand.antiderivative();
  out.integral_residual = anti(Rational(1)) - anti(Rational(-1));
  return out;
}

}  // namespace sasaki
