#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nslen/constructions.hpp"
#include "nslen/errors.hpp"
#include "nslen/group.hpp"

namespace nslen {

// GroupFile schema (UTF-8 JSON):
//   {"name": string, "degree": int, "generators": [[int,...],...],
//    "metadata": object|null}
// Generators are 0-based image arrays. Orders are never stored; they are
// recomputed from the chain on load.

namespace detail {

inline nlohmann::json metadata_to_json(const StructureMetadata& m);
inline nlohmann::json group_to_json(const PermGroup& g);

inline nlohmann::json group_to_json(const PermGroup& g) {
  nlohmann::json j;
  j["name"] = g.name();
  j["degree"] = g.degree();
  auto gens = nlohmann::json::array();
  for (const auto& p : g.generators()) gens.push_back(p.images());
  j["generators"] = std::move(gens);
  j["metadata"] = g.metadata() ? metadata_to_json(*g.metadata()) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json metadata_to_json(const StructureMetadata& m) {
  nlohmann::json j;
  switch (m.kind) {
    case StructureMetadata::Kind::named: j["kind"] = "named"; break;
    case StructureMetadata::Kind::direct: j["kind"] = "direct"; break;
    case StructureMetadata::Kind::wreath: j["kind"] = "wreath"; break;
  }
  if (!m.family.empty()) {
    j["family"] = m.family;
    j["parameter"] = m.parameter;
  }
  if (!m.blocks.empty()) j["blocks"] = m.blocks;
  if (!m.sylow_recipe.empty()) j["sylow_recipe"] = m.sylow_recipe;
  if (!m.parts.empty()) {
    auto parts = nlohmann::json::array();
    for (const auto& p : m.parts) parts.push_back(group_to_json(p));
    j["parts"] = std::move(parts);
  }
  return j;
}

inline std::shared_ptr<const StructureMetadata> metadata_from_json(const nlohmann::json& j);
inline PermGroup group_from_json(const nlohmann::json& j, const std::string& where);

inline std::shared_ptr<const StructureMetadata> metadata_from_json(const nlohmann::json& j) {
  if (j.is_null()) return nullptr;
  if (!j.is_object()) throw MalformedFile("group file: metadata must be an object or null");
  auto m = std::make_shared<StructureMetadata>();
  std::string kind = j.value("kind", "named");
  if (kind == "named")
    m->kind = StructureMetadata::Kind::named;
  else if (kind == "direct")
    m->kind = StructureMetadata::Kind::direct;
  else if (kind == "wreath")
    m->kind = StructureMetadata::Kind::wreath;
  else
    throw MalformedFile("group file: unknown metadata kind '" + kind + "'");
  m->family = j.value("family", std::string{});
  m->parameter = j.value("parameter", 0);
  if (j.contains("blocks")) {
    if (!j["blocks"].is_array()) throw MalformedFile("group file: metadata.blocks must be an array");
    m->blocks = j["blocks"].get<std::vector<std::vector<int>>>();
  }
  m->sylow_recipe = j.value("sylow_recipe", std::string{});
  if (j.contains("parts")) {
    if (!j["parts"].is_array()) throw MalformedFile("group file: metadata.parts must be an array");
    int idx = 0;
    for (const auto& part : j["parts"])
      m->parts.push_back(group_from_json(part, "metadata.parts[" + std::to_string(idx++) + "]"));
  }
  return m;
}

inline PermGroup group_from_json(const nlohmann::json& j, const std::string& where) {
  auto fail = [&where](const std::string& msg) -> void {
    throw MalformedFile("group file (" + where + "): " + msg);
  };
  if (!j.is_object()) fail("expected a JSON object");
  if (!j.contains("degree") || !j["degree"].is_number_integer()) fail("missing integer field 'degree'");
  int degree = j["degree"].get<int>();
  if (degree < 1) fail("'degree' must be >= 1");
  if (!j.contains("generators") || !j["generators"].is_array()) fail("missing array field 'generators'");
  std::vector<Permutation> gens;
  int idx = 0;
  for (const auto& arr : j["generators"]) {
    if (!arr.is_array()) fail("generators[" + std::to_string(idx) + "] is not an array");
    std::vector<int> img;
    img.reserve(arr.size());
    for (const auto& v : arr) {
      if (!v.is_number_integer()) fail("generators[" + std::to_string(idx) + "] has a non-integer entry");
      img.push_back(v.get<int>());
    }
    if (static_cast<int>(img.size()) != degree)
      fail("generators[" + std::to_string(idx) + "] has length " + std::to_string(img.size()) +
           ", expected " + std::to_string(degree));
    try {
      gens.emplace_back(std::move(img));
    } catch (const Error& e) {
      fail("generators[" + std::to_string(idx) + "]: " + e.what());
    }
    ++idx;
  }
  std::string name = j.value("name", std::string{});
  std::shared_ptr<const StructureMetadata> meta;
  if (j.contains("metadata")) meta = metadata_from_json(j["metadata"]);
  return PermGroup(degree, std::move(gens), std::move(meta), std::move(name));
}

} // namespace detail

inline std::string group_to_json_string(const PermGroup& g) {
  return detail::group_to_json(g).dump(2) + "\n";
}

inline PermGroup group_from_json_string(const std::string& text, const std::string& where = "input") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedFile("group file (" + where + "): " + e.what());
  }
  return detail::group_from_json(j, where);
}

inline void save_group(const PermGroup& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << group_to_json_string(g);
  if (!out) throw Error("write to '" + path + "' failed");
}

inline PermGroup load_group(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedFile("cannot open group file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return group_from_json_string(ss.str(), path);
}

} // namespace nslen
