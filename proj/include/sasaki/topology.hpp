#pragma once

// Contact and topological invariants of joins: cohomology of sphere joins,
// orbifold cohomology of CP^1[w], homotopy statements, contactomorphism
// tests and bouquet enumeration.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/join.hpp"
#include "sasaki/rational.hpp"

namespace sasaki {

struct Generator {
  std::string name;
  int degree = 0;
};

/// coefficient * prod generators[i]^exponents[i] = 0.
struct MonomialRelation {
  std::int64_t coefficient = 1;
  std::vector<int> exponents;
};

struct RingPresentation {
  std::vector<Generator> generators;
  std::vector<MonomialRelation> relations;
  int ambient_dimension = 0;

  std::string to_string() const {
    std::ostringstream os;
    os << "Z[";
    for (std::size_t i = 0; i < generators.size(); ++i) os << (i ? "," : "") << generators[i].name;
    os << "]/(";
    for (std::size_t k = 0; k < relations.size(); ++k) {
      const auto& rel = relations[k];
      if (k) os << ", ";
      if (rel.coefficient != 1) os << rel.coefficient;
      for (std::size_t i = 0; i < rel.exponents.size(); ++i) {
        if (rel.exponents[i] == 0) continue;
        os << generators[i].name;
        if (rel.exponents[i] > 1) os << "^" << rel.exponents[i];
      }
    }
    os << ")";
    return os.str();
  }
};

struct GradedGroup {
  int degree = 0;
  int free_rank = 0;
  std::vector<std::int64_t> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }

  std::string to_string() const {
    if (trivial()) return "0";
    std::string out;
    if (free_rank == 1) out = "Z";
    if (free_rank > 1) out = "Z^" + std::to_string(free_rank);
    for (auto t : torsion) out += (out.empty() ? "" : "+") + ("Z_" + std::to_string(t));
    return out;
  }
  friend bool operator==(const GradedGroup&, const GradedGroup&) = default;
};

/// H*(M) for M = S^{2p+1} *_{l1,l2} S^3_w: Z[x,y]/(w1 w2 l1^2 x^2, x^{p+1}, x^2 y, y^2),
/// deg x = 2, deg y = 2p + 1. Only l1 and w enter.
inline RingPresentation sphere_join_cohomology(int p, const JoinSpec& join) {
  if (p <= 1)
    throw Error(ErrorCode::UnsupportedDimension,
                "p = " + std::to_string(p) + ": the sphere join formula needs p >= 2 (p = 1 is the 5-dimensional case)");
  RingPresentation pres;
  pres.generators = {{"x", 2}, {"y", 2 * p + 1}};
  const std::int64_t torsion = join.w.w1 * join.w.w2 * join.l1 * join.l1;
  pres.relations = {{torsion, {2, 0}}, {1, {p + 1, 0}}, {1, {2, 1}}, {1, {0, 2}}};
  pres.ambient_dimension = 2 * p + 3;
  return pres;
}

/// Additive structure of a ring presented by monomial relations. Each monomial
/// spans a cyclic summand whose order is the gcd of the coefficients of the
/// relations dividing it (free when none divides it, zero when the gcd is 1).
inline std::vector<GradedGroup> graded_groups_from_presentation(const RingPresentation& pres) {
  const int top = pres.ambient_dimension;
  std::vector<GradedGroup> groups(static_cast<std::size_t>(top + 1));
  for (int d = 0; d <= top; ++d) groups[static_cast<std::size_t>(d)].degree = d;
  const std::size_t ngen = pres.generators.size();

  std::vector<int> exps(ngen, 0);
  auto visit = [&](auto&& self, std::size_t i, int degree) -> void {
    if (i == ngen) {
      std::int64_t order = 0;
      for (const auto& rel : pres.relations) {
        bool divides = true;
        for (std::size_t k = 0; k < ngen; ++k) divides = divides && rel.exponents[k] <= exps[k];
        if (divides) order = gcd64(order, rel.coefficient < 0 ? -rel.coefficient : rel.coefficient);
      }
      auto& g = groups[static_cast<std::size_t>(degree)];
      if (order == 0) {
        ++g.free_rank;
      } else if (order > 1) {
        g.torsion.push_back(order);
      }
      return;
    }
    const int step = pres.generators[i].degree;
    for (int e = 0; degree + e * step <= top; ++e) {
      exps[i] = e;
      self(self, i + 1, degree + e * step);
      if (step == 0) break;
    }
    exps[i] = 0;
  };
  visit(visit, 0, 0);
  for (auto& g : groups) std::sort(g.torsion.begin(), g.torsion.end());
  return groups;
}

inline std::vector<int> betti_numbers(const std::vector<GradedGroup>& groups) {
  std::vector<int> out;
  for (const auto& g : groups) out.push_back(g.free_rank);
  return out;
}

/// H^k_orb(CP^1[w], Z): Z for k = 0, 2; Z_{w1 w2} for even k > 2; 0 for odd k.
inline GradedGroup orb_cohomology_cp1w(const WeightVector& w, int degree) {
  if (degree < 0) throw Error(ErrorCode::PreconditionViolated, "degree must be >= 0");
  if (w.w1 <= 0 || w.w2 <= 0) throw Error(ErrorCode::NonPositiveInput, "weights must be positive");
  if (gcd64(w.w1, w.w2) != 1) throw Error(ErrorCode::WeightsNotCoprime, "gcd(w1, w2) != 1");
  GradedGroup g;
  g.degree = degree;
  if (degree % 2 == 1) return g;
  if (degree <= 2) {
    g.free_rank = 1;
  } else if (w.w1 * w.w2 > 1) {
    g.torsion.push_back(w.w1 * w.w2);
  }
  return g;
}

struct ManifoldProfile {
  bool simply_connected = true;
  int pi2_rank = 0;
  /// Free rank of pi_3(M), when known.
  std::optional<int> pi3_rank;
};

struct HomotopyReport {
  std::string pi1;
  std::optional<std::string> pi2;
  std::optional<std::string> pi3;
  std::optional<int> pi2_rank;
  std::optional<int> pi3_rank;
};

namespace detail {

inline std::string free_abelian(int rank) {
  if (rank == 0) return "0";
  if (rank == 1) return "Z";
  return "Z^" + std::to_string(rank);
}

}  // namespace detail

/// Homotopy of M *_{l1,l2} S^3_w from that of M: pi_1(M) surjects onto pi_1
/// of the join; for simply connected M, pi_2 = pi_2(M) + Z and
/// pi_3 = pi_3(M) + pi_3(S^3).
inline HomotopyReport homotopy_report(const JoinSpec& /*join*/, const ManifoldProfile& m) {
  HomotopyReport rep;
  if (!m.simply_connected) {
    rep.pi1 = "quotient of pi1(M) (pi1(M) surjects onto pi1 of the join)";
    return rep;
  }
  if (m.pi2_rank < 0) throw Error(ErrorCode::PreconditionViolated, "pi2_rank must be >= 0");
  rep.pi1 = "0";
  rep.pi2_rank = m.pi2_rank + 1;
  rep.pi2 = detail::free_abelian(*rep.pi2_rank);
  if (m.pi3_rank) {
    rep.pi3_rank = *m.pi3_rank + 1;
    rep.pi3 = detail::free_abelian(*rep.pi3_rank);
  } else {
    rep.pi3 = "pi3(M) + Z";
  }
  return rep;
}

enum class ContactVerdict { contactomorphic, distinct_chern, undetermined };

inline std::string to_string(ContactVerdict v) {
  switch (v) {
    case ContactVerdict::contactomorphic: return "contactomorphic";
    case ContactVerdict::distinct_chern: return "distinct_chern";
    case ContactVerdict::undetermined: return "undetermined";
  }
  return "unknown";
}

/// gcd(l2, l1 (w1 - w2)).
inline std::int64_t bouquet_invariant(const JoinSpec& j) {
  const std::int64_t d = j.l1 * (j.w.w1 - j.w.w2);
  return gcd64(j.l2, d < 0 ? -d : d);
}

struct ContactomorphismResult {
  ContactVerdict verdict = ContactVerdict::undetermined;
  std::optional<std::int64_t> c1_a;
  std::optional<std::int64_t> c1_b;
  std::int64_t invariant_a = 0;
  std::int64_t invariant_b = 0;
  std::vector<std::string> notes;
};

/// Sufficient test: equal l2, equal l1|w| and equal gcd(l2, l1(w1 - w2)) give
/// contactomorphic joins (an equivalence when l2 = 1). Different first Chern
/// classes separate; anything else is undetermined.
inline ContactomorphismResult contactomorphism_test(const JoinSpec& a, const JoinSpec& b) {
  if (!(a.base == b.base))
    throw Error(ErrorCode::BaseMismatch, "bases differ: '" + a.base.name + "' vs '" + b.base.name + "'");
  ContactomorphismResult res;
  res.invariant_a = bouquet_invariant(a);
  res.invariant_b = bouquet_invariant(b);
  if (a.base.quasi_monotone()) {
    res.c1_a = contact_invariants(a).c1_coefficient;
    res.c1_b = contact_invariants(b).c1_coefficient;
  }
  if (a.l2 == b.l2 && a.chern_key() == b.chern_key() && res.invariant_a == res.invariant_b) {
    res.verdict = ContactVerdict::contactomorphic;
    return res;
  }
  if (res.c1_a && *res.c1_a != *res.c1_b) {
    res.verdict = ContactVerdict::distinct_chern;
    return res;
  }
  if (a.l2 != b.l2) res.notes.push_back("l2 differs; the sufficient criterion needs equal l2");
  if (res.invariant_a != res.invariant_b)
    res.notes.push_back("gcd(l2, l1(w1-w2)) differs (" + std::to_string(res.invariant_a) + " vs " +
                        std::to_string(res.invariant_b) +
                        "); such joins are placed in different bouquets and expected to be distinct");
  return res;
}

struct BouquetMember {
  std::int64_t l1 = 1;
  WeightVector w;
  /// m = l1 (w1 - w2) / 2, the Hirzebruch index of the regular quotient.
  Rational m;
  /// w = (1,1); over a genus g > 0 base its Sasaki cone may be 1-dimensional.
  bool product_member = false;
};

struct BouquetRecord {
  std::int64_t l2 = 1;
  std::int64_t chern_key = 0;
  std::int64_t invariant = 1;  // gcd(l2, l1 (w1 - w2))
  bool regular = false;        // l2 | l1 (w1 - w2)
  std::vector<BouquetMember> members;
  std::vector<int> cone_dimensions;
  std::vector<std::string> notes;
};

/// All (l1, w) with l1 |w| = chern_key, gcd(w1, w2) = 1, w1 >= w2 and
/// gcd(l2, l1 w1 w2) = 1, grouped by gcd(l2, l1 (w1 - w2)). Groups are ordered
/// by that invariant, members lexicographically by (l1, w1, w2).
inline std::vector<BouquetRecord> enumerate_bouquet(std::int64_t chern_key, std::int64_t l2) {
  if (chern_key < 2) throw Error(ErrorCode::PreconditionViolated, "chern_key must be >= 2");
  if (l2 < 1) throw Error(ErrorCode::NonPositiveInput, "l2 must be positive");
  std::map<std::int64_t, BouquetRecord> groups;
  for (std::int64_t l1 = 1; l1 <= chern_key / 2; ++l1) {
    if (chern_key % l1 != 0) continue;
    const std::int64_t norm = chern_key / l1;
    for (std::int64_t w1 = (norm + 1) / 2; w1 < norm; ++w1) {
      const std::int64_t w2 = norm - w1;
      if (w2 < 1 || w1 < w2 || gcd64(w1, w2) != 1 || gcd64(l2, l1 * w1 * w2) != 1) continue;
      const std::int64_t diff = l1 * (w1 - w2);
      const std::int64_t inv = gcd64(l2, diff);
      auto& rec = groups[inv];
      rec.l2 = l2;
      rec.chern_key = chern_key;
      rec.invariant = inv;
      rec.regular = inv == l2;
      rec.members.push_back({l1, {w1, w2}, make_rational(diff, 2), w1 == 1 && w2 == 1});
      rec.cone_dimensions.push_back(2);
    }
  }
  std::vector<BouquetRecord> out;
  for (auto& [inv, rec] : groups) {
    std::sort(rec.members.begin(), rec.members.end(), [](const BouquetMember& x, const BouquetMember& y) {
      return std::tie(x.l1, x.w.w1, x.w.w2) < std::tie(y.l1, y.w.w1, y.w.w2);
    });
    if (l2 == 1) rec.notes.push_back("l2 = 1: each member has a unique regular ray");
    for (const auto& mem : rec.members)
      if (mem.product_member)
        rec.notes.push_back("w = (1,1) member: over a Riemann surface of genus > 0 its cone may be 1-dimensional");
    out.push_back(std::move(rec));
  }
  return out;
}

/// Text table of a bouquet, one row per member sorted by m.
inline std::string render_bouquet_table(const BouquetRecord& rec) {
  std::vector<BouquetMember> rows = rec.members;
  std::stable_sort(rows.begin(), rows.end(), [](const BouquetMember& x, const BouquetMember& y) { return x.m < y.m; });
  std::ostringstream os;
  os << rows.size() << "-bouquet (l1|w| = " << rec.chern_key << ", l2 = " << rec.l2 << ")\n";
  os << "m\tl1\tw\n";
  for (const auto& r : rows)
    os << sasaki::to_string(r.m) << "\t" << r.l1 << "\t(" << r.w.w1 << "," << r.w.w2 << ")\n";
  return os.str();
}

struct YpqJoin {
  std::int64_t l1 = 1;
  std::int64_t l2 = 1;
  WeightVector w;
};

/// Y^{p,q} as a join over CP^1: l2 = p, l1 w = (p + q, p - q).
inline YpqJoin ypq_map(std::int64_t p, std::int64_t q) {
  if (q < 1 || q >= p || gcd64(p, q) != 1)
    throw Error(ErrorCode::InvalidPQ, "need 1 <= q < p with gcd(p, q) = 1, got (p, q) = (" + std::to_string(p) +
                                          ", " + std::to_string(q) + ")");
  const std::int64_t l1 = gcd64(p + q, p - q);
  return {l1, p, {(p + q) / l1, (p - q) / l1}};
}

inline std::pair<std::int64_t, std::int64_t> ypq_inverse(const YpqJoin& j) {
  const std::int64_t a = j.l1 * j.w.w1;
  const std::int64_t b = j.l1 * j.w.w2;
  if ((a + b) != 2 * j.l2 || (a - b) % 2 != 0)
    throw Error(ErrorCode::InvalidPQ, "join is not of the form l2 = p, l1 w = (p + q, p - q)");
  const std::int64_t q = (a - b) / 2;
  ypq_map(j.l2, q);
  return {j.l2, q};
}

/// Members of the bouquet containing all Y^{p,q} for fixed p (chern key 2p,
/// l2 = p); equals phi(p).
inline std::size_t ypq_bouquet_count(std::int64_t p) {
  if (p < 2) throw Error(ErrorCode::InvalidPQ, "p must be >= 2");
  std::size_t count = 0;
  for (const auto& rec : enumerate_bouquet(2 * p, p)) count += rec.members.size();
  return count;
}

}  // namespace sasaki
