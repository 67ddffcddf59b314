#pragma once

// Base geometries by name, from the built-in list or a JSON catalog
// [{name, dN, sigma: "p/q", fano_index?, kahler_einstein}].

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <string>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/join.hpp"

namespace sasaki {

inline std::vector<BaseGeometry> builtin_catalog() { return {bases::cp1(), bases::cp2(), bases::k3()}; }

inline BaseGeometry base_from_json(const nlohmann::json& j) {
  try {
    BaseGeometry b;
    b.name = j.at("name").get<std::string>();
    b.dN = j.at("dN").get<int>();
    b.sigma = parse_rational(j.at("sigma").get<std::string>());
    if (j.contains("fano_index") && !j.at("fano_index").is_null()) b.fano_index = j.at("fano_index").get<std::int64_t>();
    b.kahler_einstein = j.at("kahler_einstein").get<bool>();
    check_base(b);
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("base catalog entry: ") + e.what());
  }
}

inline std::vector<BaseGeometry> load_catalog(const nlohmann::json& doc) {
  if (!doc.is_array()) throw Error(ErrorCode::ParseError, "base catalog must be a JSON array");
  std::vector<BaseGeometry> out;
  for (const auto& entry : doc) out.push_back(base_from_json(entry));
  return out;
}

inline std::vector<BaseGeometry> load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open base catalog '" + path + "'");
  try {
    return load_catalog(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "base catalog '" + path + "': " + e.what());
  }
}

namespace detail {

inline std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

inline std::optional<int> parse_genus(const std::string& text) {
  if (text.empty() || text.size() > 6) return std::nullopt;
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  return std::stoi(text);
}

}  // namespace detail

/// Case-insensitive lookup. Besides catalog names, "sigma<g>", "genus<g>"
/// and "RiemannSurface(<g>)" name the genus-g curve.
inline BaseGeometry resolve_base(const std::string& name, const std::vector<BaseGeometry>& catalog = builtin_catalog()) {
  const std::string key = detail::lowercase(name);
  for (const auto& b : catalog)
    if (detail::lowercase(b.name) == key) return b;
  for (const std::string prefix : {"sigma", "genus"}) {
    if (key.rfind(prefix, 0) == 0)
      if (auto g = detail::parse_genus(key.substr(prefix.size()))) return bases::riemann_surface(*g);
  }
  const std::string rs = "riemannsurface(";
  if (key.rfind(rs, 0) == 0 && key.back() == ')')
    if (auto g = detail::parse_genus(key.substr(rs.size(), key.size() - rs.size() - 1))) return bases::riemann_surface(*g);
  throw Error(ErrorCode::UnknownBase, "unknown base '" + name + "'");
}

}  // namespace sasaki
