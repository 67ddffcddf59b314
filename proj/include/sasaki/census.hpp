#pragma once

// Config-driven sweeps over boxes of join parameters. Each cell is written
// to <output_dir>/cells/<key>.json and summarized in <output_dir>/summary.csv.
// Output depends only on the config, never on the worker count.

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "sasaki/catalog.hpp"
#include "sasaki/cone_scan.hpp"
#include "sasaki/parallel.hpp"
#include "sasaki/serialize.hpp"
#include "sasaki/topology.hpp"

namespace sasaki {

struct IntegerBox {
  std::vector<std::int64_t> values;
};

struct CensusConfig {
  BaseGeometry base = bases::cp1();
  Json base_echo = "cp1";
  IntegerBox l1, l2, w1, w2;
  std::set<std::string> tasks{"scan"};
  unsigned precision_bits = 64;
  std::string output_dir = "census_out";

  /// Canonical form, used as the input echo.
  Json to_json() const {
    Json j;
    j["base"] = base_echo;
    Json boxes;
    boxes["l1"] = {{"values", l1.values}};
    boxes["l2"] = {{"values", l2.values}};
    boxes["w1"] = {{"values", w1.values}};
    boxes["w2"] = {{"values", w2.values}};
    j["boxes"] = boxes;
    j["tasks"] = std::vector<std::string>(tasks.begin(), tasks.end());
    j["precision_bits"] = precision_bits;
    j["output_dir"] = output_dir;
    return j;
  }
};

namespace detail {

inline IntegerBox parse_box(const nlohmann::json& j, const std::string& name) {
  IntegerBox box;
  if (j.contains("values")) {
    for (const auto& v : j.at("values")) box.values.push_back(v.get<std::int64_t>());
    std::sort(box.values.begin(), box.values.end());
    box.values.erase(std::unique(box.values.begin(), box.values.end()), box.values.end());
  } else {
    const auto lo = j.at("min").get<std::int64_t>();
    const auto hi = j.at("max").get<std::int64_t>();
    if (hi < lo)
      throw Error(ErrorCode::PreconditionViolated,
                  "box '" + name + "': max " + std::to_string(hi) + " < min " + std::to_string(lo));
    if (hi - lo > 100000) throw Error(ErrorCode::PreconditionViolated, "box '" + name + "' is too large");
    for (auto v = lo; v <= hi; ++v) box.values.push_back(v);
  }
  for (auto v : box.values)
    if (v <= 0) throw Error(ErrorCode::NonPositiveInput, "box '" + name + "' contains a non-positive value");
  return box;
}

}  // namespace detail

/// Parses {base, boxes: {l1, l2, w1, w2}, tasks, precision_bits, output_dir}.
/// A box is {"min": a, "max": b} or {"values": [...]} (possibly empty).
inline CensusConfig parse_census_config(const nlohmann::json& j) {
  static const std::set<std::string> known_tasks{"scan", "einstein", "bouquet", "topology"};
  try {
    CensusConfig c;
    const auto& base = j.at("base");
    if (base.is_string()) {
      c.base = resolve_base(base.get<std::string>());
      c.base_echo = base.get<std::string>();
    } else {
      c.base = base_from_json(base);
      c.base_echo = to_json(c.base);
    }
    const auto& boxes = j.at("boxes");
    c.l1 = detail::parse_box(boxes.at("l1"), "l1");
    c.l2 = detail::parse_box(boxes.at("l2"), "l2");
    c.w1 = detail::parse_box(boxes.at("w1"), "w1");
    c.w2 = detail::parse_box(boxes.at("w2"), "w2");
    if (j.contains("tasks")) {
      c.tasks.clear();
      for (const auto& t : j.at("tasks")) {
        const auto name = t.get<std::string>();
        if (!known_tasks.count(name)) throw Error(ErrorCode::PreconditionViolated, "unknown census task '" + name + "'");
        c.tasks.insert(name);
      }
    }
    if (j.contains("precision_bits")) c.precision_bits = j.at("precision_bits").get<unsigned>();
    if (c.precision_bits < 32) throw Error(ErrorCode::PreconditionViolated, "precision_bits must be >= 32");
    c.output_dir = j.at("output_dir").get<std::string>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("census config: ") + e.what());
  }
}

struct CensusCell {
  std::int64_t l1, l2, w1, w2;

  std::string key() const {
    return "l1_" + std::to_string(l1) + "-l2_" + std::to_string(l2) + "-w_" + std::to_string(w1) + "_" +
           std::to_string(w2);
  }
};

struct CensusRow {
  CensusCell cell;
  std::string status;  // "ok", "invalid:<Code>" or "error:<Code>"
  std::optional<std::size_t> root_count;
  std::optional<bool> bound;
  std::optional<std::size_t> positivity_failures;
  Json payload;
};

namespace detail {

inline CensusRow run_cell(const CensusConfig& cfg, const CensusCell& cell) {
  CensusRow row{cell, "ok", std::nullopt, std::nullopt, std::nullopt, Json::object()};
  row.payload["cell"] = cell.key();
  try {
    const JoinSpec join = validate_join(cfg.base, cell.l1, cell.l2, {cell.w1, cell.w2});
    row.payload["join"] = to_json(join);
    if (cfg.tasks.count("scan")) {
      const ScanReport rep = find_csc_rays(join, ScanOptions{cfg.precision_bits, 4});
      row.root_count = rep.roots.size();
      row.bound = rep.bound_check;
      row.positivity_failures = rep.positivity_failures.size();
      row.payload["scan"] = to_json(rep);
    }
    if (cfg.tasks.count("einstein")) {
      Json ke;
      const auto& base = join.base;
      if (!base.positive_kahler_einstein()) {
        ke["applicable"] = false;
        ke["reason"] = "base is not positive Kähler-Einstein";
      } else if (const auto rel = relative_fano_indices(*base.fano_index, join.w);
                 rel.l1 != join.l1 || rel.l2 != join.l2) {
        ke["applicable"] = false;
        ke["reason"] = "l is not the pair of relative Fano indices";
      } else {
        ke["applicable"] = true;
        ke["solution"] = to_json(ke_ray_solve(base, join.w, cfg.precision_bits));
      }
      row.payload["einstein"] = ke;
    }
    if (cfg.tasks.count("bouquet")) {
      Json group = nullptr;
      const std::int64_t inv = bouquet_invariant(join);
      for (const auto& rec : enumerate_bouquet(join.chern_key(), join.l2))
        if (rec.invariant == inv) group = to_json(rec);
      row.payload["bouquet"] = group;
    }
    if (cfg.tasks.count("topology")) {
      Json topo;
      if (join.base.quasi_monotone()) {
        const auto ci = contact_invariants(join);
        topo["c1_coefficient"] = ci.c1_coefficient;
        topo["w2_class"] = ci.w2_class;
      }
      Json orb = Json::array();
      for (int k = 0; k <= 6; ++k) orb.push_back(to_json(orb_cohomology_cp1w(join.w, k)));
      topo["orb_cohomology_cp1w"] = orb;
      const auto pres = sphere_join_cohomology(2, join);
      Json groups = Json::array();
      for (const auto& g : graded_groups_from_presentation(pres)) groups.push_back(to_json(g));
      topo["sphere_join_p2"] = {{"ring", to_json(pres)}, {"groups", groups}};
      row.payload["topology"] = topo;
    }
  } catch (const Error& e) {
    row.status = std::string(is_mathematical(e.code()) ? "error:" : "invalid:") + std::string(to_string(e.code()));
    row.payload["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
  }
  row.payload["status"] = row.status;
  return row;
}

template <class T>
std::string csv_field(const std::optional<T>& x) {
  if (!x) return "";
  if constexpr (std::is_same_v<T, bool>) return *x ? "true" : "false";
  else return std::to_string(*x);
}

}  // namespace detail

struct CensusResult {
  std::vector<CensusRow> rows;
  std::string summary_csv;
};

inline std::vector<CensusCell> census_cells(const CensusConfig& cfg) {
  std::vector<CensusCell> cells;
  for (auto l1 : cfg.l1.values)
    for (auto l2 : cfg.l2.values)
      for (auto w1 : cfg.w1.values)
        for (auto w2 : cfg.w2.values) cells.push_back({l1, l2, w1, w2});
  return cells;
}

inline std::string census_summary_csv(const std::vector<CensusRow>& rows) {
  std::ostringstream os;
  os << "cell,l1,l2,w1,w2,status,root_count,bound,positivity_failures\n";
  for (const auto& r : rows)
    os << r.cell.key() << "," << r.cell.l1 << "," << r.cell.l2 << "," << r.cell.w1 << "," << r.cell.w2 << ","
       << r.status << "," << detail::csv_field(r.root_count) << "," << detail::csv_field(r.bound) << ","
       << detail::csv_field(r.positivity_failures) << "\n";
  return os.str();
}

/// Runs every cell and writes the result files. Cells are ordered
/// lexicographically by (l1, l2, w1, w2).
inline CensusResult run_census(const CensusConfig& cfg, unsigned workers = 1) {
  namespace fs = std::filesystem;
  CensusResult res;
  res.rows = parallel_map(census_cells(cfg), [&](const CensusCell& c) { return detail::run_cell(cfg, c); }, workers);
  res.summary_csv = census_summary_csv(res.rows);

  const fs::path root(cfg.output_dir);
  const fs::path cells_dir = root / "cells";
  fs::create_directories(cells_dir);
  for (const auto& entry : fs::directory_iterator(cells_dir))
    if (entry.path().extension() == ".json") fs::remove(entry.path());
  for (const auto& row : res.rows) {
    ResultEnvelope env{"census cell", cfg.to_json(), row.payload,
                       {"csc: alpha = 0 for the extremal polynomial", "positivity: Sturm count on (-1, 1)"}};
    env.input_echo["cell"] = row.cell.key();
    std::ofstream out(cells_dir / (row.cell.key() + ".json"), std::ios::binary);
    out << env.to_json().dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write census cell file");
  }
  std::ofstream summary(root / "summary.csv", std::ios::binary);
  summary << res.summary_csv;
  if (!summary) throw std::runtime_error("cannot write census summary");
  return res;
}

}  // namespace sasaki
