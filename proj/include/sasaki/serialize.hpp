#pragma once

// JSON and CSV output. Rationals are written as reduced "p/q" strings
// (integers as "p"); decimal approximations are annotations only.

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "sasaki/admissible.hpp"
#include "sasaki/cone_scan.hpp"
#include "sasaki/join.hpp"
#include "sasaki/topology.hpp"

namespace sasaki {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json rationals(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

inline Json integers(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.get_str());
  return out;
}

template <class T>
Json optional_json(const std::optional<T>& x) {
  return x ? Json(*x) : Json(nullptr);
}

}  // namespace detail

inline Json to_json(const Rational& x) { return to_string(x); }

inline Json to_json(const QPoly& p) { return to_strings(p); }

inline Json to_json(const BaseGeometry& b) {
  Json j;
  j["name"] = b.name;
  j["dN"] = b.dN;
  j["sigma"] = to_string(b.sigma);
  j["fano_index"] = detail::optional_json(b.fano_index);
  j["kahler_einstein"] = b.kahler_einstein;
  return j;
}

inline Json to_json(const WeightVector& w) { return Json::array({w.w1, w.w2}); }

inline Json to_json(const JoinSpec& js) {
  Json j;
  j["base"] = to_json(js.base);
  j["l1"] = js.l1;
  j["l2"] = js.l2;
  j["w"] = to_json(js.w);
  j["chern_key"] = js.chern_key();
  return j;
}

inline Json to_json(const RayVector& v) { return Json::array({to_string(v.v1), to_string(v.v2)}); }

inline Json to_json(const FiberQuotientData& f) {
  Json j;
  j["q"] = f.q;
  j["s"] = f.s;
  j["m"] = f.m;
  j["m1"] = f.m1;
  j["m2"] = f.m2;
  j["n"] = f.n;
  j["r"] = to_string(f.r);
  return j;
}

inline Json to_json(const AdmissibleData& d) {
  Json j;
  j["dN"] = d.dN;
  j["sNn"] = to_string(d.sNn);
  j["r"] = to_string(d.r);
  j["m1"] = to_string(d.m1);
  j["m2"] = to_string(d.m2);
  return j;
}

inline Json to_json(const IsolatingInterval& iv) { return Json::array({to_string(iv.lo), to_string(iv.hi)}); }

inline Json to_json(const PositivityReport& p) {
  Json j;
  j["status"] = to_string(p.status);
  j["interior_roots"] = p.interior_roots;
  j["witness"] = p.witness ? to_json(*p.witness) : Json(nullptr);
  j["certificate"] = {{"variations_at_minus_one", p.variations_at_minus_one},
                      {"variations_at_plus_one", p.variations_at_plus_one}};
  return j;
}

inline Json to_json(const ExtremalSolution& s) {
  Json j;
  j["F"] = to_json(s.F);
  j["F_display"] = to_display(s.F, "z");
  j["alpha"] = to_string(s.alpha);
  j["beta"] = to_string(s.beta);
  j["positivity"] = to_json(positivity(s.F));
  j["data"] = to_json(s.data);
  return j;
}

inline Json to_json(const CscClosedForm& c) {
  Json j;
  j["k"] = to_string(c.k);
  j["c"] = to_string(c.c);
  j["residual"] = to_string(c.residual);
  j["c_as_printed"] = to_string(c.c_as_printed);
  j["residual_as_printed"] = to_string(c.residual_as_printed);
  return j;
}

inline Json to_json(const KeResiduals& k) {
  return {{"fano_residual", to_string(k.fano_residual)}, {"integral_residual", to_string(k.integral_residual)}};
}

inline Json to_json(const RayFunction& f) {
  Json j;
  j["numerator"] = to_json(f.numerator);
  j["denominator"] = to_json(f.denominator);
  j["numerator_display"] = to_display(f.numerator, "t");
  j["denominator_display"] = to_display(f.denominator, "t");
  j["excluded_t"] = to_string(f.excluded_t);
  return j;
}

inline Json to_json(const RootRecord& r) {
  Json j;
  j["isolating_interval"] = to_json(r.interval);
  j["approx"] = r.approx;
  j["rational_value"] = r.rational_value ? Json(to_string(*r.rational_value)) : Json(nullptr);
  j["algebraic_degree"] = detail::optional_json(r.algebraic_degree);
  j["minimal_polynomial"] = r.minimal_polynomial ? detail::integers(*r.minimal_polynomial) : Json(nullptr);
  j["side"] = to_string(r.side);
  j["alpha_sign_change"] = r.alpha_sign_change;
  return j;
}

inline Json to_json(const ScanReport& s) {
  Json j;
  j["join"] = to_json(s.join);
  j["ray_function"] = to_json(s.ray_function);
  j["degree_bound"] = RayFunction::degree_bound(s.join.base.dN);
  j["precision_bits"] = s.precision_bits;
  j["root_count"] = s.roots.size();
  Json roots = Json::array();
  for (const auto& r : s.roots) roots.push_back(to_json(r));
  j["roots"] = roots;
  j["bound_check"] = s.bound_check;
  Json fails = Json::array();
  for (const auto& v : s.positivity_failures) fails.push_back(to_json(v));
  j["positivity_failures"] = fails;
  j["excluded_ray_is_root"] = s.excluded_ray_is_root;
  return j;
}

inline Json to_json(const ExhaustionEntry& e) {
  Json j;
  j["v"] = to_json(e.v);
  j["status"] = e.status ? Json(to_string(*e.status)) : Json(nullptr);
  j["alpha"] = e.alpha ? Json(to_string(*e.alpha)) : Json(nullptr);
  j["error"] = detail::optional_json(e.error);
  return j;
}

inline Json to_json(const NonexistenceCell& c) {
  Json j;
  j["genus"] = c.genus;
  j["l1"] = c.l1;
  j["w"] = to_json(c.w);
  j["data"] = to_json(c.data);
  j["positivity"] = to_json(c.report);
  return j;
}

inline Json to_json(const KeRaySolution& k) {
  Json j;
  j["join"] = to_json(k.join);
  j["root"] = to_json(k.root);
  j["integral_polynomial"] = to_json(k.integral_polynomial);
  j["fano_condition_identically_zero"] = k.fano_condition_identically_zero;
  j["fano_condition_at_root"] = k.fano_condition_at_root;
  j["fano_residual"] = k.fano_residual;
  j["integral_residual"] = k.integral_residual;
  j["in_csc_scan"] = k.in_csc_scan;
  j["on_excluded_ray"] = k.on_excluded_ray;
  j["candidate_count"] = k.candidate_count;
  return j;
}

inline Json to_json(const RingPresentation& p) {
  Json j;
  Json gens = Json::array();
  for (const auto& g : p.generators) gens.push_back({{"name", g.name}, {"degree", g.degree}});
  j["generators"] = gens;
  Json rels = Json::array();
  for (const auto& r : p.relations) rels.push_back({{"coefficient", r.coefficient}, {"exponents", r.exponents}});
  j["relations"] = rels;
  j["ambient_dimension"] = p.ambient_dimension;
  j["display"] = p.to_string();
  return j;
}

inline Json to_json(const GradedGroup& g) {
  return {{"degree", g.degree}, {"free_rank", g.free_rank}, {"torsion", g.torsion}, {"display", g.to_string()}};
}

inline Json to_json(const HomotopyReport& h) {
  Json j;
  j["pi1"] = h.pi1;
  j["pi2"] = detail::optional_json(h.pi2);
  j["pi3"] = detail::optional_json(h.pi3);
  j["pi2_rank"] = detail::optional_json(h.pi2_rank);
  j["pi3_rank"] = detail::optional_json(h.pi3_rank);
  return j;
}

inline Json to_json(const ContactomorphismResult& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["c1_a"] = detail::optional_json(c.c1_a);
  j["c1_b"] = detail::optional_json(c.c1_b);
  j["invariant_a"] = c.invariant_a;
  j["invariant_b"] = c.invariant_b;
  j["notes"] = c.notes;
  return j;
}

inline Json to_json(const BouquetRecord& b) {
  Json j;
  j["l2"] = b.l2;
  j["chern_key"] = b.chern_key;
  j["invariant"] = b.invariant;
  j["regular"] = b.regular;
  Json members = Json::array();
  for (const auto& m : b.members)
    members.push_back({{"l1", m.l1}, {"w", to_json(m.w)}, {"m", to_string(m.m)}, {"product_member", m.product_member}});
  j["members"] = members;
  j["cone_dimensions"] = b.cone_dimensions;
  j["notes"] = b.notes;
  return j;
}

inline Json to_json(const YpqJoin& y) { return {{"l1", y.l1}, {"l2", y.l2}, {"w", to_json(y.w)}}; }

inline constexpr const char* tool_version = "0.1.0";

/// Output wrapper: the payload is a pure function of input_echo and
/// tool_version.
struct ResultEnvelope {
  std::string command;
  Json input_echo;
  Json payload;
  std::vector<std::string> provenance;

  Json to_json() const {
    Json j;
    j["tool_version"] = tool_version;
    j["command"] = command;
    j["input_echo"] = input_echo;
    j["payload"] = payload;
    j["provenance"] = provenance;
    return j;
  }
};

/// Samples of the ray-function numerator at `samples` equally spaced
/// rationals t in (0, t_max], with t = excluded_t nudged left.
inline std::string emit_csv(const ScanReport& scan, std::size_t samples, const Rational& t_max = Rational(2)) {
  if (samples < 2) throw Error(ErrorCode::PreconditionViolated, "samples must be >= 2");
  if (sign(t_max) <= 0) throw Error(ErrorCode::PreconditionViolated, "t_max must be positive");
  const RayFunction& f = scan.ray_function;
  const Rational step = t_max / Rational(static_cast<long>(samples));
  std::ostringstream os;
  os << "t,sign,approx\n";
  for (std::size_t i = 1; i <= samples; ++i) {
    Rational t = step * Rational(static_cast<long>(i));
    if (t == f.excluded_t) t -= step / 1024;
    const Rational value = f.numerator(t);
    os << to_string(t) << "," << sign(value) << "," << to_decimal(value, 12) << "\n";
  }
  return os.str();
}

}  // namespace sasaki
