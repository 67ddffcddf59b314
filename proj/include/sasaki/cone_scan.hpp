#pragma once

// Scans of the w-Sasaki cone. Rays are parametrized by t = v2/v1 in (0, inf);
// t = w2/w1 is excluded (there n = 0). With the s := 1 convention
//     r = (w1 t - w2)/(w1 t + w2),  m1 = l2,  m2 = l2 t,  s_{N_n} = sigma/(l1 (w1 t - w2)),
// alpha becomes a rational function of t, and CSC rays are its positive
// roots.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sasaki/admissible.hpp"
#include "sasaki/join.hpp"
#include "sasaki/parallel.hpp"
#include "sasaki/rational_function.hpp"
#include "sasaki/sturm.hpp"

namespace sasaki {

/// alpha(t) = numerator(t) / denominator(t) in lowest terms, denominator
/// monic. Both degrees are at most 2 dN + 1: after multiplying through by
/// t (w1 t + w2)^{2 dN} the Cramer numerator and determinant are polynomials
/// of that degree.
struct RayFunction {
  QPoly numerator;
  QPoly denominator;
  Rational excluded_t;

  static constexpr int degree_bound(int dN) { return 2 * dN + 1; }

  Rational operator()(const Rational& t) const { return numerator(t) / denominator(t); }
};

namespace detail {

struct RayFamily {
  RationalFunction t, r, m1, m2, q;
};

inline RayFamily ray_family(const JoinSpec& join) {
  RayFamily f;
  f.t = RationalFunction::variable();
  const Rational w1(static_cast<long>(join.w.w1));
  const Rational w2(static_cast<long>(join.w.w2));
  const Rational l2(static_cast<long>(join.l2));
  f.q = RationalFunction(QPoly::linear(-w2, w1));
  const RationalFunction p(QPoly::linear(w2, w1));
  f.r = f.q / p;
  f.m1 = RationalFunction(l2);
  f.m2 = RationalFunction(l2) * f.t;
  return f;
}

}  // namespace detail

inline RayFunction build_csc_ray_function(const JoinSpec& join) {
  const auto fam = detail::ray_family(join);
  const RationalFunction sNn =
      RationalFunction(join.base.sigma) / (RationalFunction(Rational(static_cast<long>(join.l1))) * fam.q);
  const auto ab = extremal_coefficients<RationalFunction>(join.base.dN, sNn, fam.r, fam.m1, fam.m2);
  if (ab.alpha.is_zero())
    throw Error(ErrorCode::DegenerateFamily, "alpha vanishes identically along the w-cone of l=(" +
                                                 std::to_string(join.l1) + "," + std::to_string(join.l2) + ")");
  return {ab.alpha.numerator(), ab.alpha.denominator(), join.excluded_t()};
}

enum class RaySide { r_positive, r_negative };

inline std::string to_string(RaySide s) { return s == RaySide::r_positive ? "r_positive" : "r_negative"; }

struct RootRecord {
  IsolatingInterval interval;
  std::string approx;
  std::optional<Rational> rational_value;
  std::optional<int> algebraic_degree;
  /// Primitive integer coefficients, lowest degree first.
  std::optional<std::vector<Integer>> minimal_polynomial;
  RaySide side = RaySide::r_positive;
  /// Re-solving the extremal system at the interval endpoints gives alpha of
  /// opposite signs (or alpha = 0 exactly at a rational root).
  bool alpha_sign_change = false;
};

namespace detail {

inline unsigned decimal_digits(unsigned bits) { return std::max(6U, static_cast<unsigned>(bits * 0.30103)); }

struct PositiveRootSet {
  std::vector<RootRecord> roots;
  bool excluded_is_root = false;
};

/// Isolates, refines and recognizes the roots of `poly` in (0, inf) other
/// than `excluded`. Refined intervals never touch 0 or `excluded` and
/// contain no root of `avoid` (when nonzero).
inline PositiveRootSet analyze_positive_roots(const QPoly& poly, const Rational& excluded, unsigned bits,
                                             const QPoly& avoid = QPoly{}) {
  PositiveRootSet out;
  const RootIsolator iso(poly);
  const QPoly& sqf = iso.polynomial();
  out.excluded_is_root = sqf(excluded) == 0;
  if (sqf.degree() < 1) return out;

  Rational bound = std::max<Rational>(cauchy_bound(sqf), excluded + 1);
  const Rational zero(0);
  std::vector<IsolatingInterval> all = iso.isolate(-bound, zero);
  if (sqf(zero) == 0) all.push_back({zero, zero});
  const std::vector<IsolatingInterval> below = iso.isolate(zero, excluded);
  const std::vector<IsolatingInterval> above = iso.isolate(excluded, bound);
  all.insert(all.end(), below.begin(), below.end());
  if (out.excluded_is_root) all.push_back({excluded, excluded});
  all.insert(all.end(), above.begin(), above.end());

  // Rational roots anywhere on the line, then the remaining factor.
  std::vector<std::optional<Rational>> rational(all.size());
  QPoly deflated = sqf;
  for (std::size_t i = 0; i < all.size(); ++i) {
    rational[i] = rational_root_in(iso, all[i]);
    if (rational[i]) deflated = exact_quotient(deflated, QPoly::linear(-*rational[i], Rational(1)));
  }
  std::vector<IsolatingInterval> irrational;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (!rational[i]) irrational.push_back(all[i]);
  const std::optional<RootIsolator> diso =
      deflated.degree() >= 1 ? std::optional<RootIsolator>(RootIsolator(deflated)) : std::nullopt;

  std::optional<SturmChain> avoid_chain;
  if (!avoid.is_zero() && avoid.degree() >= 1) avoid_chain.emplace(squarefree_part(avoid));
  const Rational target = dyadic_width(bits);
  const unsigned digits = decimal_digits(bits);

  for (std::size_t i = 0; i < all.size(); ++i) {
    IsolatingInterval iv = all[i];
    const bool positive = iv.exact() ? sign(iv.lo) > 0 : sign(iv.lo) >= 0;
    if (!positive || (iv.exact() && iv.lo == excluded)) continue;
    RootRecord rec;
    rec.side = (iv.exact() ? iv.lo : iv.hi) > excluded ? RaySide::r_positive : RaySide::r_negative;
    if (rational[i]) {
      rec.rational_value = rational[i];
      rec.algebraic_degree = 1;
      rec.minimal_polynomial = primitive_integer_coefficients(QPoly::linear(-*rational[i], Rational(1)));
    } else if (diso) {
      if (deflated.degree() == 2) {
        rec.algebraic_degree = 2;
        rec.minimal_polynomial = primitive_integer_coefficients(deflated);
      } else if (auto quad = quadratic_factor_for(*diso, iv, irrational)) {
        rec.algebraic_degree = 2;
        rec.minimal_polynomial = primitive_integer_coefficients(*quad);
      }
    }
    iso.refine(iv, target);
    auto touches = [&](const IsolatingInterval& x) {
      if (x.exact()) return false;
      if (x.lo == zero || x.lo == excluded || x.hi == excluded) return true;
      if (!avoid_chain) return false;
      const QPoly& a = avoid_chain->sequence().front();
      return a(x.lo) == 0 || a(x.hi) == 0 || avoid_chain->count_roots_open(x.lo, x.hi) > 0;
    };
    while (touches(iv)) iso.bisect_once(iv);
    rec.interval = iv;
    rec.approx = to_decimal(rec.rational_value ? *rec.rational_value : iv.midpoint(), digits);
    out.roots.push_back(std::move(rec));
  }
  return out;
}

inline Rational alpha_at(const JoinSpec& join, const Rational& t) {
  return csc_residual(admissible_data_unit_s(join, RayVector::slope(t)));
}

}  // namespace detail

/// Pairs (a, b) of coprime positive integers with a, b <= max_component,
/// ordered by (max(a, b), a, b).
inline std::vector<RayVector> coprime_ray_grid(std::int64_t max_component) {
  struct Key {
    std::int64_t mx, a, b;
  };
  std::vector<Key> keys;
  for (std::int64_t a = 1; a <= max_component; ++a)
    for (std::int64_t b = 1; b <= max_component; ++b)
      if (gcd64(a, b) == 1) keys.push_back({std::max(a, b), a, b});
  std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
    return std::tie(x.mx, x.a, x.b) < std::tie(y.mx, y.a, y.b);
  });
  std::vector<RayVector> out;
  for (const auto& k : keys) out.push_back(RayVector::integral(k.a, k.b));
  return out;
}

/// The first `count` rays of the coprime grid that are not proportional to w.
inline std::vector<RayVector> nondegenerate_rays(const WeightVector& w, std::size_t count) {
  std::vector<RayVector> out;
  for (std::int64_t mx = 1; out.size() < count; ++mx) {
    out.clear();
    for (const auto& v : coprime_ray_grid(mx)) {
      if (v.v1 * w.w2 == v.v2 * w.w1) continue;
      out.push_back(v);
      if (out.size() == count) break;
    }
  }
  return out;
}

struct ScanOptions {
  unsigned precision_bits = 64;
  /// Quasi-regular rays (a, b), a, b <= probe_max, checked for positivity.
  std::int64_t probe_max = 4;
};

struct ScanReport {
  JoinSpec join;
  RayFunction ray_function;
  std::vector<RootRecord> roots;
  bool bound_check = false;
  std::vector<RayVector> positivity_failures;
  /// alpha vanishes in the limit t -> w2/w1 (for w = (1,1) this is the
  /// product ray, which lies outside the scanned family).
  bool excluded_ray_is_root = false;
  unsigned precision_bits = 64;
};

/// 2 l2 > 16 l1 w1 - 5 l1 w2 for w != (1,1); 2 l2 > 11 l1 for w = (1,1).
inline bool check_multiplicity_bound(const JoinSpec& join) {
  if (join.w.is_unit()) return 2 * join.l2 > 11 * join.l1;
  return 2 * join.l2 > 16 * join.l1 * join.w.w1 - 5 * join.l1 * join.w.w2;
}

inline ScanReport find_csc_rays(const JoinSpec& join, const ScanOptions& opts = {}) {
  if (opts.precision_bits == 0) throw Error(ErrorCode::PreconditionViolated, "precision_bits must be positive");
  ScanReport rep;
  rep.join = join;
  rep.precision_bits = opts.precision_bits;
  rep.ray_function = build_csc_ray_function(join);
  auto roots = detail::analyze_positive_roots(rep.ray_function.numerator, rep.ray_function.excluded_t,
                                              opts.precision_bits, rep.ray_function.denominator);
  rep.excluded_ray_is_root = roots.excluded_is_root;
  for (auto& rec : roots.roots) {
    if (rec.rational_value) {
      rec.alpha_sign_change = detail::alpha_at(join, *rec.rational_value) == 0;
    } else {
      const int lo = sign(detail::alpha_at(join, rec.interval.lo));
      const int hi = sign(detail::alpha_at(join, rec.interval.hi));
      rec.alpha_sign_change = lo * hi < 0;
    }
  }
  rep.roots = std::move(roots.roots);
  rep.bound_check = check_multiplicity_bound(join);
  for (const auto& v : coprime_ray_grid(opts.probe_max)) {
    if (v.v1 * join.w.w2 == v.v2 * join.w.w1) continue;
    const auto sol = solve_extremal(admissible_data_for_ray(join, v));
    if (positivity(sol.F).status != PositivityStatus::positive) rep.positivity_failures.push_back(v);
  }
  return rep;
}

struct ExhaustionEntry {
  RayVector v;
  std::optional<PositivityStatus> status;
  std::optional<Rational> alpha;
  std::optional<std::string> error;
};

/// Extremal solve and positivity for every grid ray; per-ray errors are
/// recorded rather than thrown.
inline std::vector<ExhaustionEntry> exhaustion_scan(const JoinSpec& join, const std::vector<RayVector>& grid) {
  std::vector<ExhaustionEntry> out;
  out.reserve(grid.size());
  for (const auto& v : grid) {
    ExhaustionEntry e{v, std::nullopt, std::nullopt, std::nullopt};
    try {
      const auto sol = solve_extremal(admissible_data_for_ray(join, v));
      e.alpha = sol.alpha;
      e.status = positivity(sol.F).status;
    } catch (const Error& err) {
      e.error = err.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

struct NonexistenceCell {
  int genus = 1;
  std::int64_t l1 = 1;
  WeightVector w;
  AdmissibleData data;
  PositivityReport report;
};

/// Regular rays v = (1,1) of genus-g joins with l2 = 1 whose extremal
/// polynomial is not positive (hence no extremal metric in that class).
/// Cells are ordered by (genus, l1, w1, w2).
inline std::vector<NonexistenceCell> nonexistence_search(int genus_min, int genus_max, std::int64_t l1_max,
                                                         std::int64_t w_max, unsigned workers = 1) {
  if (genus_min < 1) throw Error(ErrorCode::PreconditionViolated, "genus must be >= 1");
  struct Cell {
    int genus;
    std::int64_t l1, w1, w2;
  };
  std::vector<Cell> cells;
  for (int g = genus_min; g <= genus_max; ++g)
    for (std::int64_t l1 = 1; l1 <= l1_max; ++l1)
      for (std::int64_t w1 = 2; w1 <= w_max; ++w1)
        for (std::int64_t w2 = 1; w2 < w1; ++w2)
          if (gcd64(w1, w2) == 1) cells.push_back({g, l1, w1, w2});

  auto run = [](const Cell& c) -> std::optional<NonexistenceCell> {
    AdmissibleData d;
    d.dN = 1;
    d.r = make_rational(c.w1 - c.w2, c.w1 + c.w2);
    d.m1 = d.m2 = Rational(1);
    d.sNn = make_rational(2 - 2 * static_cast<std::int64_t>(c.genus), c.l1 * (c.w1 - c.w2));
    auto rep = positivity(solve_extremal(d).F);
    if (rep.status == PositivityStatus::positive) return std::nullopt;
    return NonexistenceCell{c.genus, c.l1, {c.w1, c.w2}, d, rep};
  };
  std::vector<NonexistenceCell> out;
  for (auto& r : parallel_map(cells, run, workers))
    if (r) out.push_back(std::move(*r));
  return out;
}

struct KeRaySolution {
  JoinSpec join;
  RootRecord root;
  /// Numerator in t of the integral condition.
  QPoly integral_polynomial;
  /// The Fano-class condition vanishes identically along the cone (it does
  /// for relative Fano indices).
  bool fano_condition_identically_zero = false;
  bool fano_condition_at_root = false;
  /// Residuals evaluated at the interval midpoint (exactly zero for
  /// rational roots).
  double fano_residual = 0.0;
  double integral_residual = 0.0;
  /// The root lies in an isolating interval of find_csc_rays on the same join.
  bool in_csc_scan = false;
  /// The root is t = w2/w1 (w = (1,1)): the product ray, excluded from scans.
  bool on_excluded_ray = false;
  std::size_t candidate_count = 0;
};

inline KeRaySolution ke_ray_solve(const BaseGeometry& base, const WeightVector& w, unsigned precision_bits = 64) {
  if (!base.positive_kahler_einstein())
    throw Error(ErrorCode::NotPositiveKahlerEinstein, "base '" + base.name + "' is not positive Kähler-Einstein");
  const auto [l1, l2] = relative_fano_indices(*base.fano_index, w);
  KeRaySolution out;
  out.join = validate_join(base, l1, l2, w);
  const auto fam = detail::ray_family(out.join);
  const RationalFunction integral = ke_integral<RationalFunction>(base.dN, fam.r, fam.m1, fam.m2);
  const RationalFunction n = RationalFunction(Rational(static_cast<long>(l1))) * fam.q;
  const RationalFunction fano = RationalFunction(Rational(2)) * fam.r *
                                    RationalFunction(Rational(static_cast<long>(*base.fano_index))) / n -
                                (RationalFunction(Rational(1)) + fam.r) / fam.m2 -
                                (RationalFunction(Rational(1)) - fam.r) / fam.m1;
  out.integral_polynomial = integral.numerator();
  out.fano_condition_identically_zero = fano.is_zero();
  const Rational tex = out.join.excluded_t();

  auto found = detail::analyze_positive_roots(out.integral_polynomial, tex, precision_bits);
  out.candidate_count = found.roots.size();
  const ScanReport scan = find_csc_rays(out.join, ScanOptions{precision_bits, 1});

  if (found.roots.empty()) {
    if (!found.excluded_is_root)
      throw Error(ErrorCode::NoPositiveRoot, "the Kähler-Einstein integral condition has no positive root");
    out.on_excluded_ray = true;
    out.candidate_count = 1;
    out.root.interval = {tex, tex};
    out.root.rational_value = tex;
    out.root.algebraic_degree = 1;
    out.root.minimal_polynomial = primitive_integer_coefficients(QPoly::linear(-tex, Rational(1)));
    out.root.approx = to_decimal(tex, detail::decimal_digits(precision_bits));
    out.root.alpha_sign_change = false;
    out.fano_condition_at_root = out.fano_condition_identically_zero;
    out.in_csc_scan = scan.excluded_ray_is_root;
    return out;
  }

  const QPoly ke_sqf = squarefree_part(out.integral_polynomial);
  auto vanishes_at = [&](const QPoly& other, const IsolatingInterval& iv) {
    const QPoly common = gcd(ke_sqf, other);
    return common.degree() >= 1 && detail::has_root_in(common, iv);
  };
  // Prefer the candidate where the Fano condition also holds.
  std::size_t pick = 0;
  for (std::size_t i = 0; i < found.roots.size(); ++i) {
    if (fano.is_zero() || vanishes_at(fano.numerator(), found.roots[i].interval)) {
      pick = i;
      out.fano_condition_at_root = true;
      break;
    }
  }
  out.root = found.roots[pick];
  const IsolatingInterval& iv = out.root.interval;
  const Rational t = out.root.rational_value ? *out.root.rational_value : iv.midpoint();
  const AdmissibleData d = admissible_data_unit_s(out.join, RayVector::slope(t));
  const Rational n_at = Rational(static_cast<long>(l1)) * (Rational(static_cast<long>(w.w1)) * t - w.w2);
  const KeResiduals res = ke_residuals(d, *base.fano_index, n_at);
  out.fano_residual = to_double(res.fano_residual);
  out.integral_residual = to_double(res.integral_residual);
  out.root.alpha_sign_change = true;

  for (const auto& csc : scan.roots) {
    IsolatingInterval meet{std::max(csc.interval.lo, iv.lo), std::min(csc.interval.hi, iv.hi)};
    if (csc.interval.exact() || iv.exact()) {
      const Rational x = csc.interval.exact() ? csc.interval.lo : iv.lo;
      if (csc.interval.contains(x) && iv.contains(x) && out.integral_polynomial(x) == 0) out.in_csc_scan = true;
    } else if (meet.lo < meet.hi && vanishes_at(scan.ray_function.numerator, meet)) {
      out.in_csc_scan = true;
    }
    if (out.in_csc_scan) break;
  }
  return out;
}

}  // namespace sasaki
