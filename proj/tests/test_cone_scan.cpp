#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sasaki/cone_scan.hpp"

using namespace sasaki;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

const double y21_root = (1.0 + std::sqrt(13.0)) / 6.0;

/// alpha at the ray (1, t) computed by the 4x4 oracle on the s := 1 data.
Rational oracle_alpha(const JoinSpec& join, const Rational& t) {
  return oracle::extremal_by_coefficient_matching(admissible_data_unit_s(join, RayVector::slope(t))).alpha;
}

}  // namespace

TEST(RayFunction, MatchesResidualAtRationalRays) {
  const auto join = validate_join(bases::cp1(), 1, 2, {3, 1});
  const auto f = build_csc_ray_function(join);
  EXPECT_EQ(f.excluded_t, q(1, 3));
  EXPECT_EQ(f(q(1)), csc_residual(admissible_data_unit_s(join, RayVector::integral(1, 1))));
  const auto d = admissible_data_unit_s(join, RayVector::integral(1, 1));
  EXPECT_EQ(d.r, q(1, 2));
  EXPECT_EQ(d.m1, 2);
  EXPECT_EQ(d.m2, 2);
  EXPECT_EQ(validate_join(bases::cp1(), 1, 1, {3, 1}).excluded_t(), q(1, 3));
}

TEST(RayFunction, ExactOnTwoHundredRandomRays) {
  std::mt19937_64 rng(200);
  const std::vector<JoinSpec> joins = {validate_join(bases::cp1(), 1, 2, {3, 1}),
                                       validate_join(bases::cp2(), 1, 5, {2, 1}),
                                       validate_join(bases::k3(), 2, 7, {3, 2}),
                                       validate_join(bases::riemann_surface(3), 1, 1, {4, 1})};
  std::uniform_int_distribution<long> num(1, 60), den(1, 25);
  int checked = 0;
  while (checked < 200) {
    const auto& join = joins[static_cast<std::size_t>(checked) % joins.size()];
    const Rational t = make_rational(num(rng), den(rng));
    const auto f = build_csc_ray_function(join);
    if (t == f.excluded_t || f.denominator(t) == 0) continue;
    ASSERT_EQ(f(t), oracle_alpha(join, t)) << join.base.name << " t=" << to_string(t);
    ++checked;
  }
}

TEST(RayFunction, DegreeBound) {
  for (const auto& base : {bases::cp1(), bases::cp2(), bases::k3(), bases::riemann_surface(2)})
    for (std::int64_t l2 : {1, 5, 7})
      for (WeightVector w : {WeightVector{3, 1}, WeightVector{5, 2}, WeightVector{1, 1}}) {
        JoinSpec join;
        try {
          join = validate_join(base, 1, l2, w);
        } catch (const Error&) {
          continue;
        }
        const auto f = build_csc_ray_function(join);
        EXPECT_LE(f.numerator.degree(), RayFunction::degree_bound(base.dN));
        EXPECT_LE(f.denominator.degree(), RayFunction::degree_bound(base.dN));
        EXPECT_EQ(gcd(f.numerator, f.denominator).degree(), 0);
      }
}

TEST(FindCscRays, Y21KahlerEinsteinRoot) {
  const auto rep = find_csc_rays(validate_join(bases::cp1(), 1, 2, {3, 1}));
  ASSERT_EQ(rep.roots.size(), 1U);
  const auto& root = rep.roots[0];
  EXPECT_LT(std::abs(to_double(root.interval.midpoint()) - y21_root), 1e-9);
  ASSERT_TRUE(root.minimal_polynomial.has_value());
  EXPECT_EQ(*root.minimal_polynomial, (std::vector<Integer>{-1, -1, 3}));
  EXPECT_EQ(root.algebraic_degree, 2);
  EXPECT_FALSE(root.rational_value.has_value());
  EXPECT_TRUE(root.alpha_sign_change);
  EXPECT_EQ(root.side, RaySide::r_positive);
  EXPECT_LE(root.interval.width(), dyadic_width(64));
  EXPECT_TRUE(root.interval.lo > q(1, 3));
  EXPECT_EQ(root.approx.substr(0, 8), "0.767591");
  EXPECT_TRUE(rep.positivity_failures.empty());
}

TEST(FindCscRays, IntervalsIsolateExactlyOneRoot) {
  for (std::int64_t l2 : {11, 59}) {
    const auto join = validate_join(bases::cp1(), 1, l2, {7, 1});
    const auto rep = find_csc_rays(join);
    const SturmChain chain(squarefree_part(rep.ray_function.numerator));
    for (const auto& r : rep.roots) {
      if (r.interval.exact()) continue;
      EXPECT_EQ(chain.count_roots_open(r.interval.lo, r.interval.hi), 1);
      EXPECT_FALSE(r.interval.lo < rep.ray_function.excluded_t && rep.ray_function.excluded_t < r.interval.hi);
      EXPECT_TRUE(r.alpha_sign_change);
    }
  }
}

TEST(FindCscRays, MultiplicityBoundExamples) {
  EXPECT_TRUE(check_multiplicity_bound(validate_join(bases::cp1(), 1, 59, {7, 1})));
  EXPECT_FALSE(check_multiplicity_bound(validate_join(bases::cp1(), 1, 1, {7, 1})));
  EXPECT_TRUE(check_multiplicity_bound(validate_join(bases::cp1(), 1, 7, {1, 1})));
  // (l1, l2) = (1, 6) with w = (1, 1): 12 > 11.
  JoinSpec j{bases::cp1(), 1, 6, {1, 1}};
  EXPECT_TRUE(check_multiplicity_bound(j));
  for (const auto& [l1, l2, w1, w2] : std::vector<std::array<std::int64_t, 4>>{{1, 59, 7, 1}, {1, 59, 5, 3}, {2, 59, 3, 1}})
    EXPECT_GE(find_csc_rays(validate_join(bases::cp1(), l1, l2, {w1, w2})).roots.size(), 3U);
}

TEST(FindCscRays, GenusSamplesHaveOneRoot) {
  const auto rep = find_csc_rays(validate_join(bases::riemann_surface(2), 1, 1, {3, 1}));
  EXPECT_EQ(rep.roots.size(), 1U);
  for (int g = 1; g <= 4; ++g)
    for (std::int64_t l1 : {1, 2, 3})
      for (WeightVector w : {WeightVector{2, 1}, WeightVector{3, 2}, WeightVector{5, 1}}) {
        const auto r = find_csc_rays(validate_join(bases::riemann_surface(g), l1, 1, w));
        EXPECT_EQ(r.roots.size(), 1U) << "g=" << g << " l1=" << l1;
        EXPECT_TRUE(r.positivity_failures.empty());
      }
}

TEST(FindCscRays, UnitWeightsRootAtProductRay) {
  const auto rep = find_csc_rays(validate_join(bases::cp1(), 1, 3, {1, 1}));
  EXPECT_TRUE(rep.excluded_ray_is_root);
  EXPECT_EQ(rep.roots.size(), 0U);
  const auto many = find_csc_rays(validate_join(bases::cp1(), 1, 7, {1, 1}));
  EXPECT_EQ(many.roots.size(), 2U);
  // Roots come in pairs t, 1/t.
  EXPECT_NEAR(to_double(many.roots[0].interval.midpoint()) * to_double(many.roots[1].interval.midpoint()), 1.0, 1e-12);
}

TEST(FindCscRays, RationalRootsAreExact) {
  // Among small CP1 joins, any rational root must be reported exactly and
  // agree with alpha = 0 from a direct solve.
  for (std::int64_t l2 = 1; l2 <= 12; ++l2)
    for (std::int64_t w1 = 1; w1 <= 4; ++w1)
      for (std::int64_t w2 = 1; w2 <= w1; ++w2) {
        JoinSpec join;
        try {
          join = validate_join(bases::cp1(), 1, l2, {w1, w2});
        } catch (const Error&) {
          continue;
        }
        for (const auto& r : find_csc_rays(join).roots)
          if (r.rational_value) {
            EXPECT_EQ(csc_residual(admissible_data_unit_s(join, RayVector::slope(*r.rational_value))), 0);
          }
      }
}

TEST(FindCscRays, PrecisionIsHonoured) {
  const auto join = validate_join(bases::cp1(), 1, 2, {3, 1});
  const auto rep = find_csc_rays(join, ScanOptions{100, 1});
  ASSERT_EQ(rep.roots.size(), 1U);
  EXPECT_LE(rep.roots[0].interval.width(), dyadic_width(100));
  EXPECT_GE(rep.roots[0].approx.size(), 30U);
  EXPECT_THROW(find_csc_rays(join, ScanOptions{0, 1}), Error);
}

TEST(ExhaustionScan, NonnegativeSigmaBasesArePositive) {
  const auto grid = coprime_ray_grid(6);
  const auto join = validate_join(bases::cp1(), 1, 2, {3, 1});
  for (const auto& e : exhaustion_scan(join, grid)) {
    if (e.v.v1 * 1 == e.v.v2 * 3) {
      EXPECT_TRUE(e.error.has_value());
      continue;
    }
    ASSERT_TRUE(e.status.has_value());
    EXPECT_EQ(*e.status, PositivityStatus::positive);
  }
  const auto k3 = validate_join(bases::k3(), 1, 5, {2, 1});
  for (const auto& e : exhaustion_scan(k3, nondegenerate_rays(k3.w, 50))) EXPECT_EQ(e.status, PositivityStatus::positive);
  const auto g1 = validate_join(bases::riemann_surface(1), 2, 3, {5, 2});
  for (const auto& e : exhaustion_scan(g1, nondegenerate_rays(g1.w, 50))) EXPECT_EQ(e.status, PositivityStatus::positive);
}

TEST(RayGrid, OrderingAndExclusion) {
  const auto grid = coprime_ray_grid(3);
  ASSERT_EQ(grid.size(), 7U);  // (1,1) (1,2) (2,1) (1,3) (2,3) (3,1) (3,2)
  EXPECT_TRUE(grid[0].is_unit());
  const auto rays = nondegenerate_rays({3, 1}, 50);
  EXPECT_EQ(rays.size(), 50U);
  for (const auto& v : rays) EXPECT_NE(v.v1 * 1, v.v2 * 3);
}

TEST(NonexistenceSearch, SmallGenusIsEmptyAndLargeGenusIsNot) {
  EXPECT_TRUE(nonexistence_search(1, 4, 10, 20).empty());
  const auto found = nonexistence_search(20, 20, 3, 15);
  ASSERT_FALSE(found.empty());
  for (const auto& c : found) {
    EXPECT_EQ(c.report.status, PositivityStatus::fails);
    EXPECT_EQ(extremal_exists(c.data), ExistenceVerdict::no_admissible_manifold_case);
  }
  EXPECT_THROW(nonexistence_search(0, 1, 1, 2), Error);
}

TEST(NonexistenceSearch, IndependentOfWorkerCount) {
  const auto a = nonexistence_search(18, 20, 4, 14, 1);
  const auto b = nonexistence_search(18, 20, 4, 14, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].genus, b[i].genus);
    EXPECT_EQ(a[i].l1, b[i].l1);
    EXPECT_EQ(a[i].w, b[i].w);
    EXPECT_EQ(a[i].data, b[i].data);
  }
}

TEST(KeRaySolve, Y21) {
  const auto ke = ke_ray_solve(bases::cp1(), {3, 1});
  EXPECT_EQ(ke.join.l1, 1);
  EXPECT_EQ(ke.join.l2, 2);
  ASSERT_TRUE(ke.root.minimal_polynomial.has_value());
  EXPECT_EQ(*ke.root.minimal_polynomial, (std::vector<Integer>{-1, -1, 3}));
  EXPECT_LT(std::abs(to_double(ke.root.interval.midpoint()) - y21_root), 1e-10);
  EXPECT_TRUE(ke.fano_condition_identically_zero);
  EXPECT_TRUE(ke.fano_condition_at_root);
  EXPECT_LT(std::abs(ke.integral_residual), 1e-10);
  EXPECT_LT(std::abs(ke.fano_residual), 1e-10);
  EXPECT_TRUE(ke.in_csc_scan);
}

TEST(KeRaySolve, OtherWeights) {
  const auto y31 = ke_ray_solve(bases::cp1(), {2, 1});
  EXPECT_EQ(y31.join.l1, 2);
  EXPECT_EQ(y31.join.l2, 3);
  EXPECT_EQ(y31.root.algebraic_degree, 2);
  EXPECT_LT(std::abs(y31.integral_residual), 1e-10);
  EXPECT_TRUE(y31.in_csc_scan);

  const auto unit = ke_ray_solve(bases::cp1(), {1, 1});
  EXPECT_TRUE(unit.on_excluded_ray);
  EXPECT_EQ(unit.root.rational_value, q(1));
  EXPECT_TRUE(unit.in_csc_scan);

  for (WeightVector w : {WeightVector{5, 3}, WeightVector{7, 2}, WeightVector{4, 1}}) {
    const auto ke = ke_ray_solve(bases::cp2(), w);
    EXPECT_TRUE(ke.in_csc_scan);
    EXPECT_TRUE(ke.fano_condition_at_root);
    EXPECT_LT(std::abs(ke.integral_residual), 1e-10);
  }
  EXPECT_THROW(ke_ray_solve(bases::k3(), {2, 1}), Error);
  EXPECT_THROW(ke_ray_solve(bases::riemann_surface(2), {2, 1}), Error);
}
