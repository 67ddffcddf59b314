#pragma once

// Command-line front end. run_command() is the whole program minus main(),
// so tests can drive it with argument vectors and string streams.
//
// Exit codes: 0 success, 1 usage, 2 validation, 3 mathematical error,
// 4 internal or I/O failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sasaki/admissible.hpp"
#include "sasaki/catalog.hpp"
#include "sasaki/census.hpp"
#include "sasaki/cone_scan.hpp"
#include "sasaki/join.hpp"
#include "sasaki/serialize.hpp"
#include "sasaki/topology.hpp"

namespace sasaki::cli {

enum ExitCode : int { ok = 0, usage = 1, validation = 2, mathematical = 3, internal = 4 };

inline unsigned precision_from_env(unsigned fallback = 64) {
  const char* v = std::getenv("SASAKI_PRECISION_BITS");
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const long bits = std::stol(v, &used);
    if (used != std::string(v).size() || bits < 1 || bits > 4096) throw std::invalid_argument(v);
    return static_cast<unsigned>(bits);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, std::string("SASAKI_PRECISION_BITS='") + v + "' is not a positive integer");
  }
}

namespace detail {

inline std::vector<std::int64_t> parse_int_list(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<std::int64_t> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, what + ": '" + text + "' is not a comma-separated integer list");
    }
  }
  if (out.size() != expected)
    throw Error(ErrorCode::ParseError, what + ": expected " + std::to_string(expected) + " integers, got '" + text + "'");
  return out;
}

inline WeightVector parse_weights(const std::string& text) {
  const auto v = parse_int_list(text, 2, "--w");
  return {v[0], v[1]};
}

inline RayVector parse_ray(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "--v: expected 'v1,v2', got '" + text + "'");
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

/// Options common to commands that take a join.
struct JoinArgs {
  std::string base = "cp1";
  std::string catalog;
  std::int64_t l1 = 0;
  std::int64_t l2 = 0;
  std::string w;

  void add(CLI::App* sub, bool required = true) {
    sub->add_option("--base", base, "base geometry (cp1, cp2, k3, genus<g>, RiemannSurface(<g>))")
        ->capture_default_str();
    sub->add_option("--catalog", catalog, "JSON base catalog to resolve --base against");
    auto* o1 = sub->add_option("--l1", l1, "join parameter l1");
    auto* o2 = sub->add_option("--l2", l2, "join parameter l2");
    auto* ow = sub->add_option("--w", w, "weight vector w1,w2");
    if (required) {
      o1->required();
      o2->required();
      ow->required();
    }
  }

  BaseGeometry resolve() const {
    return catalog.empty() ? resolve_base(base) : resolve_base(base, load_catalog_file(catalog));
  }

  JoinSpec join() const { return validate_join(resolve(), l1, l2, parse_weights(w)); }
};

/// Admissible data, either given directly or derived from a join and a ray.
struct DataArgs {
  JoinArgs join;
  std::string v;
  int dN = 1;
  std::string sNn, r, m1 = "1", m2 = "1";

  void add(CLI::App* sub) {
    join.add(sub, false);
    sub->add_option("--v", v, "ray v1,v2 (derive data from the join)");
    sub->add_option("--dN", dN, "complex dimension of the base")->capture_default_str();
    sub->add_option("--sNn", sNn, "normalized base scalar curvature s_{N_n}");
    sub->add_option("--r", r, "admissible parameter r, 0 < |r| < 1");
    sub->add_option("--m1", m1, "m1")->capture_default_str();
    sub->add_option("--m2", m2, "m2")->capture_default_str();
  }

  bool from_join() const { return !v.empty(); }

  AdmissibleData resolve() const {
    if (from_join()) return admissible_data_for_ray(join.join(), parse_ray(v));
    if (sNn.empty() || r.empty())
      throw Error(ErrorCode::PreconditionViolated, "give either --v with a join or both --sNn and --r");
    AdmissibleData d;
    d.dN = dN;
    d.sNn = parse_rational(sNn);
    d.r = parse_rational(r);
    d.m1 = parse_rational(m1);
    d.m2 = parse_rational(m2);
    check_admissible(d);
    return d;
  }
};

/// Canonical argv of the parsed leaf command: command words, then every
/// option that was given or has a default, in declaration order.
inline std::vector<std::string> canonical_argv(const std::vector<std::string>& words, const CLI::App* leaf) {
  std::vector<std::string> out = words;
  for (const CLI::Option* opt : leaf->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.rfind("--", 0) != 0 || name == "--help") continue;
    if (opt->get_type_size() == 0) {
      if (opt->count() > 0) out.push_back(name);
      continue;
    }
    std::string value;
    if (opt->count() > 0) {
      value = opt->results().back();
    } else if (!opt->get_default_str().empty()) {
      value = opt->get_default_str();
    } else {
      continue;
    }
    out.push_back(name);
    out.push_back(value);
  }
  return out;
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact classification tools for Sasakian joins M *_{l1,l2} S^3_w", "sasaki"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version));

  unsigned bits = 0;
  auto add_bits = [&](CLI::App* sub) {
    sub->add_option("--bits", bits, "root refinement precision in bits (default: $SASAKI_PRECISION_BITS or 64)");
  };

  std::function<ResultEnvelope()> action;
  std::vector<std::string> words;
  CLI::App* leaf = nullptr;
  auto leaf_cmd = [&](CLI::App* group, const std::string& name, const std::string& help) {
    CLI::App* sub = group->add_subcommand(name, help);
    sub->callback([&, group, sub, name] {
      words = {group->get_name(), name};
      leaf = sub;
    });
    return sub;
  };
  auto add_group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };

  // join
  auto* join_grp = add_group("join", "join parameters and quotient data");
  detail::JoinArgs ja;
  std::string ray;
  auto* jv = leaf_cmd(join_grp, "validate", "check the admissibility conditions");
  ja.add(jv);
  auto* jq = leaf_cmd(join_grp, "quotient", "quotient orbifold and admissible data of a ray");
  ja.add(jq);
  jq->add_option("--v", ray, "ray v1,v2")->required();
  auto* jc = leaf_cmd(join_grp, "classify", "regular / almost regular / quasi-regular");
  ja.add(jc);
  jc->add_option("--v", ray, "ray v1,v2")->required();

  // extremal
  auto* ext_grp = add_group("extremal", "extremal polynomial, CSC and Kähler-Einstein criteria");
  detail::DataArgs da;
  auto* es = leaf_cmd(ext_grp, "solve", "solve the boundary-value problem and certify positivity");
  da.add(es);
  auto* ec = leaf_cmd(ext_grp, "csc", "CSC residual and closed form");
  da.add(ec);
  auto* ee = leaf_cmd(ext_grp, "einstein", "Kähler-Einstein residuals, or the KE ray with --ray");
  da.add(ee);
  std::int64_t fano_index = 0;
  std::string n_text;
  bool ke_ray = false;
  ee->add_option("--fano-index", fano_index, "Fano index of the base");
  ee->add_option("--n", n_text, "n of the quotient");
  ee->add_flag("--ray", ke_ray, "solve for the KE ray of the join with relative Fano indices (needs --base, --w)");
  add_bits(ee);

  // cone
  auto* cone_grp = add_group("cone", "scans of the w-Sasaki cone");
  auto* cs = leaf_cmd(cone_grp, "scan", "isolate CSC rays");
  ja.add(cs);
  add_bits(cs);
  std::size_t csv_samples = 0;
  std::int64_t probe_max = 4;
  cs->add_option("--csv", csv_samples, "emit CSV samples of the ray-function numerator instead of JSON");
  cs->add_option("--probe-max", probe_max, "positivity probes on rays (a,b), a,b <= N")->capture_default_str();
  auto* cb = leaf_cmd(cone_grp, "bound", "multiplicity bound for three CSC rays");
  ja.add(cb);
  auto* cx = leaf_cmd(cone_grp, "exhaust", "positivity of the extremal polynomial over a ray grid");
  ja.add(cx);
  std::size_t grid_count = 50;
  cx->add_option("--count", grid_count, "number of grid rays")->capture_default_str();
  auto* cn = leaf_cmd(cone_grp, "nonexist", "regular rays with no extremal metric over genus-g joins");
  int genus_min = 1, genus_max = 1;
  std::int64_t l1_max = 1, w_max = 2;
  unsigned workers = 1;
  cn->add_option("--genus-min", genus_min)->required();
  cn->add_option("--genus-max", genus_max)->required();
  cn->add_option("--l1-max", l1_max)->required();
  cn->add_option("--w-max", w_max)->required();
  cn->add_option("--workers", workers, "worker threads (output does not depend on it)")->capture_default_str();

  // topology
  auto* top_grp = add_group("topology", "cohomology, homotopy and contact invariants");
  auto* tr = leaf_cmd(top_grp, "ring", "cohomology ring of S^{2p+1} *_{l1,l2} S^3_w");
  ja.add(tr);
  int p = 2;
  tr->add_option("--p", p, "sphere dimension parameter p >= 2")->required();
  auto* to = leaf_cmd(top_grp, "orb", "orbifold cohomology of CP^1[w]");
  std::string orb_w;
  int degree = 0;
  to->add_option("--w", orb_w, "weights w1,w2")->required();
  to->add_option("--degree", degree)->required();
  auto* th = leaf_cmd(top_grp, "homotopy", "homotopy groups from a profile of M");
  ja.add(th);
  bool not_simply_connected = false;
  int pi2_rank = 0;
  std::optional<int> pi3_rank;
  th->add_flag("--not-simply-connected", not_simply_connected);
  th->add_option("--pi2-rank", pi2_rank, "rank of pi_2(M)")->capture_default_str();
  th->add_option("--pi3-rank", pi3_rank, "free rank of pi_3(M), if known");
  auto* tc = leaf_cmd(top_grp, "contacto", "contactomorphism test for two joins");
  std::string base_name = "cp1", join_a, join_b;
  tc->add_option("--base", base_name)->capture_default_str();
  tc->add_option("--a", join_a, "l1,l2,w1,w2")->required();
  tc->add_option("--b", join_b, "l1,l2,w1,w2")->required();

  // bouquet
  auto* bq_grp = add_group("bouquet", "bouquets of Sasaki cones");
  auto* be = leaf_cmd(bq_grp, "enumerate", "joins with a fixed l1|w| and l2, grouped by bouquet");
  std::int64_t chern_key = 0, bl2 = 1;
  std::string format = "json";
  be->add_option("--chern-key", chern_key, "l1 |w|")->required();
  be->add_option("--l2", bl2)->required();
  be->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  auto* by = leaf_cmd(bq_grp, "ypq", "Y^{p,q} as a join, its inverse, and the bouquet count for p");
  std::int64_t yp = 0, yq = 0;
  std::string inverse;
  by->add_option("--p", yp);
  by->add_option("--q", yq);
  by->add_option("--inverse", inverse, "l1,l2,w1,w2 to map back to (p,q)");

  // census
  auto* cen_grp = add_group("census", "config-driven sweeps");
  auto* cr = leaf_cmd(cen_grp, "run", "run a census config");
  std::string config_path;
  unsigned census_workers = 1;
  cr->add_option("--config", config_path, "census config JSON")->required();
  cr->add_option("--workers", census_workers, "worker threads (output does not depend on it)")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::usage;
  }

  const std::string cmd = words.empty() ? "" : words[0] + " " + words[1];
  try {
    if (bits == 0) bits = precision_from_env();
    if (leaf->get_option_no_throw("--bits") != nullptr && leaf->get_option("--bits")->count() == 0) {
      // Resolved precision goes into the echo so the run is reproducible without the environment.
      words.push_back("--bits");
      words.push_back(std::to_string(bits));
    }
    Json payload;
    std::vector<std::string> provenance;
    bool text_output = false;
    std::string text;

    if (cmd == "join validate") {
      const JoinSpec j = ja.join();
      payload["valid"] = true;
      payload["join"] = to_json(j);
      provenance = {"admissibility: gcd(w1,w2) = 1, w1 >= w2, gcd(l2, l1 w1 w2) = 1"};
    } else if (cmd == "join quotient") {
      const JoinSpec j = ja.join();
      const RayVector v = detail::parse_ray(ray);
      payload["fiber_quotient"] = to_json(fiber_quotient(j, v));
      payload["admissible_data"] = to_json(admissible_data_for_ray(j, v));
      const auto f = fiber_quotient(j, v);
      payload["q"] = f.q;
      payload["s"] = f.s;
      payload["m"] = f.m;
      payload["m1"] = f.m1;
      payload["m2"] = f.m2;
      payload["n"] = f.n;
      payload["r"] = to_string(f.r);
      provenance = {"quotient: s = gcd(|q|, l2), m_i = v_i l2 / s, n = l1 q / s, r = q / (w1 v2 + w2 v1)"};
    } else if (cmd == "join classify") {
      const JoinSpec j = ja.join();
      payload["class"] = to_string(classify_ray(j, detail::parse_ray(ray)));
      provenance = {"regular iff v = (1,1) and s = l2"};
    } else if (cmd == "extremal solve") {
      const auto sol = solve_extremal(da.resolve());
      payload = to_json(sol);
      payload["existence"] = to_string(extremal_exists(sol.data));
      provenance = {"extremal polynomial with four endpoint conditions", "positivity on (-1, 1) by Sturm count"};
    } else if (cmd == "extremal csc") {
      const AdmissibleData d = da.resolve();
      payload["data"] = to_json(d);
      payload["csc_residual"] = to_string(csc_residual(d));
      payload["closed_form"] = to_json(csc_closed_form(d));
      provenance = {"csc: alpha = 0", "closed form cross-check with the 2 m1 m2 s r term"};
    } else if (cmd == "extremal einstein") {
      if (ke_ray) {
        const BaseGeometry base = da.join.resolve();
        if (da.join.w.empty()) throw Error(ErrorCode::PreconditionViolated, "--ray needs --w");
        payload = to_json(ke_ray_solve(base, detail::parse_weights(da.join.w), bits));
        provenance = {"KE ray: relative Fano indices, integral condition in t, contained in the CSC scan"};
      } else {
        const AdmissibleData d = da.resolve();
        std::int64_t fano = fano_index;
        Rational n;
        if (da.from_join()) {
          const JoinSpec j = da.join.join();
          if (!j.base.fano_index) throw Error(ErrorCode::NotQuasiMonotone, "base has no Fano index");
          fano = *j.base.fano_index;
          n = Rational(static_cast<long>(fiber_quotient(j, detail::parse_ray(da.v)).n));
        } else {
          if (n_text.empty() || fano_index == 0)
            throw Error(ErrorCode::PreconditionViolated, "give --fano-index and --n, or a join with --v");
          n = parse_rational(n_text);
        }
        payload["data"] = to_json(d);
        payload["residuals"] = to_json(ke_residuals(d, fano, n));
        provenance = {"KE: Fano-class condition and integral condition"};
      }
    } else if (cmd == "cone scan") {
      const ScanReport rep = find_csc_rays(ja.join(), ScanOptions{bits, probe_max});
      if (csv_samples > 0) {
        text_output = true;
        text = emit_csv(rep, csv_samples);
      }
      payload = to_json(rep);
      provenance = {"ray function alpha(t) in the s := 1 convention", "Sturm isolation on (0, w2/w1) and (w2/w1, inf)"};
    } else if (cmd == "cone bound") {
      const JoinSpec j = ja.join();
      payload["join"] = to_json(j);
      payload["bound_check"] = check_multiplicity_bound(j);
      payload["rule"] = j.w.is_unit() ? "2 l2 > 11 l1" : "2 l2 > 16 l1 w1 - 5 l1 w2";
      provenance = {"sufficient condition for three CSC rays"};
    } else if (cmd == "cone exhaust") {
      const JoinSpec j = ja.join();
      const auto entries = exhaustion_scan(j, nondegenerate_rays(j.w, grid_count));
      Json list = Json::array();
      std::size_t positive = 0;
      for (const auto& e : entries) {
        list.push_back(to_json(e));
        if (e.status == PositivityStatus::positive) ++positive;
      }
      payload["join"] = to_json(j);
      payload["rays"] = list;
      payload["positive"] = positive;
      payload["total"] = entries.size();
      provenance = {"extremal existence by positivity of F on (-1, 1)"};
    } else if (cmd == "cone nonexist") {
      const auto cells = nonexistence_search(genus_min, genus_max, l1_max, w_max, workers);
      Json list = Json::array();
      for (const auto& c : cells) list.push_back(to_json(c));
      payload["failing"] = list;
      payload["failing_count"] = cells.size();
      provenance = {"regular ray v = (1,1), l2 = 1, m1 = m2 = 1: non-positive F rules out extremal metrics"};
    } else if (cmd == "topology ring") {
      const auto pres = sphere_join_cohomology(p, ja.join());
      const auto groups = graded_groups_from_presentation(pres);
      Json gs = Json::array();
      for (const auto& g : groups) gs.push_back(to_json(g));
      payload["ring"] = to_json(pres);
      payload["groups"] = gs;
      payload["betti"] = betti_numbers(groups);
      provenance = {"sphere join cohomology Z[x,y]/(w1 w2 l1^2 x^2, x^{p+1}, x^2 y, y^2)"};
    } else if (cmd == "topology orb") {
      payload = to_json(orb_cohomology_cp1w(detail::parse_weights(orb_w), degree));
      provenance = {"orbifold cohomology of CP^1[w]"};
    } else if (cmd == "topology homotopy") {
      payload = to_json(homotopy_report(ja.join(), {!not_simply_connected, pi2_rank, pi3_rank}));
      provenance = {"pi_1 surjectivity; pi_2 and pi_3 of the join for simply connected M"};
    } else if (cmd == "topology contacto") {
      const BaseGeometry base = resolve_base(base_name);
      auto make = [&](const std::string& text, const std::string& what) {
        const auto v = detail::parse_int_list(text, 4, what);
        return validate_join(base, v[0], v[1], {v[2], v[3]});
      };
      const JoinSpec a = make(join_a, "--a");
      const JoinSpec b = make(join_b, "--b");
      payload = to_json(contactomorphism_test(a, b));
      payload["a"] = to_json(a);
      payload["b"] = to_json(b);
      provenance = {"sufficient: equal l2, l1|w| and gcd(l2, l1(w1-w2)); first Chern class separates"};
    } else if (cmd == "bouquet enumerate") {
      const auto groups = enumerate_bouquet(chern_key, bl2);
      Json list = Json::array();
      std::string tables;
      for (const auto& g : groups) {
        Json gj = to_json(g);
        gj["table"] = render_bouquet_table(g);
        tables += render_bouquet_table(g);
        list.push_back(gj);
      }
      payload["groups"] = list;
      if (format == "table") {
        text_output = true;
        text = tables;
      }
      provenance = {"bouquet grouping by gcd(l2, l1(w1-w2)) at fixed l1|w| and l2"};
    } else if (cmd == "bouquet ypq") {
      if (!inverse.empty()) {
        const auto v = detail::parse_int_list(inverse, 4, "--inverse");
        const auto [pp, qq] = ypq_inverse({v[0], v[1], {v[2], v[3]}});
        payload["p"] = pp;
        payload["q"] = qq;
      } else {
        if (yp == 0) throw Error(ErrorCode::PreconditionViolated, "give --p (and --q) or --inverse");
        if (yq != 0) {
          const YpqJoin y = ypq_map(yp, yq);
          payload["join"] = to_json(y);
          payload["c1_coefficient"] = contact_invariants(validate_join(bases::cp1(), y.l1, y.l2, y.w)).c1_coefficient;
        }
        payload["bouquet_count"] = ypq_bouquet_count(yp);
        payload["euler_phi"] = euler_phi(yp);
      }
      provenance = {"Y^{p,q}: l2 = p, l1 w = (p + q, p - q)"};
    } else if (cmd == "census run") {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorCode::ParseError, "cannot open census config '" + config_path + "'");
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("census config: ") + e.what());
      }
      const CensusConfig cfg = parse_census_config(doc);
      const CensusResult res = run_census(cfg, census_workers);
      std::map<std::string, std::size_t> statuses;
      std::optional<std::size_t> min_roots;
      Json failing = Json::array();
      for (const auto& row : res.rows) {
        ++statuses[row.status];
        if (row.root_count) min_roots = min_roots ? std::min(*min_roots, *row.root_count) : *row.root_count;
        if (row.positivity_failures && *row.positivity_failures > 0) failing.push_back(row.cell.key());
      }
      payload["config"] = cfg.to_json();
      payload["cells"] = res.rows.size();
      payload["statuses"] = statuses;
      payload["min_root_count"] = min_roots ? Json(*min_roots) : Json(nullptr);
      payload["positivity_failing_cells"] = failing;
      payload["summary_csv"] = (std::filesystem::path(cfg.output_dir) / "summary.csv").string();
      provenance = {"per-cell CSC scan, KE ray, bouquet and topology tasks"};
    }

    const auto argv = detail::canonical_argv(words, leaf);
    ResultEnvelope env{cmd, Json{{"argv", argv}}, payload, provenance};
    if (text_output) {
      out << text;
    } else {
      out << env.to_json().dump(2) << "\n";
    }
    return ExitCode::ok;
  } catch (const Error& e) {
    Json j{{"error", {{"code", to_string(e.code())}, {"message", e.what()}, {"command", cmd}}}};
    err << j.dump(2) << "\n";
    return is_mathematical(e.code()) ? ExitCode::mathematical : ExitCode::validation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return ExitCode::internal;
  }
}

}  // namespace sasaki::cli
