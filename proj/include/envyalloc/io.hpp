#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "kernel.hpp"
#include "solvers.hpp"

namespace envyalloc {

using json = nlohmann::json;

namespace detail {

inline long long as_index(const json& v, const char* what) {
  if (!v.is_number_integer()) throw InvalidInstance(std::string("malformed input: ") + what + " must be an integer");
  return v.get<long long>();
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInstance(std::string("malformed input: missing field '") + key + "'");
  return j.at(key);
}

}  // namespace detail

inline Instance instance_from_json(const json& j) {
  RawInstance raw;
  raw.n = detail::as_index(detail::field(j, "n"), "n");
  raw.m = detail::as_index(detail::field(j, "m"), "m");
  const json& prof = detail::field(j, "profile");
  const json& kind = detail::field(prof, "kind");
  if (!kind.is_string()) throw InvalidInstance("malformed input: profile kind must be a string");
  const auto k = kind.get<std::string>();
  auto array = [](const json& v, const char* what) -> const json& {
    if (!v.is_array()) throw InvalidInstance(std::string("malformed input: ") + what + " must be an array");
    return v;
  };
  if (k == "binary") {
    raw.kind = ProfileKind::binary;
    for (const auto& row : array(detail::field(prof, "matrix"), "matrix")) {
      auto& out = raw.matrix.emplace_back();
      for (const auto& v : array(row, "matrix row")) out.push_back(detail::as_index(v, "matrix entry"));
    }
  } else if (k == "strict") {
    raw.kind = ProfileKind::strict;
    for (const auto& r : array(detail::field(prof, "rankings"), "rankings")) {
      auto& out = raw.rankings.emplace_back();
      for (const auto& v : array(r, "ranking")) out.push_back(detail::as_index(v, "house"));
    }
  } else if (k == "weak") {
    raw.kind = ProfileKind::weak;
    for (const auto& r : array(detail::field(prof, "rankings"), "rankings")) {
      auto& out = raw.weak_rankings.emplace_back();
      for (const auto& g : array(r, "ranking")) {
        auto& grp = out.emplace_back();
        for (const auto& v : array(g, "tie group")) grp.push_back(detail::as_index(v, "house"));
      }
    }
  } else {
    throw InvalidInstance("malformed input: unknown profile kind '" + k + "'");
  }
  return validate_instance(raw);
}

inline json instance_to_json(const Instance& inst) {
  json prof;
  prof["kind"] = std::string(to_string(inst.kind()));
  switch (inst.kind()) {
    case ProfileKind::binary: prof["matrix"] = inst.binary_matrix(); break;
    case ProfileKind::strict: {
      json r = json::array();
      for (std::size_t a = 0; a < inst.n(); ++a) r.push_back(inst.ranking(a));
      prof["rankings"] = r;
      break;
    }
    case ProfileKind::weak: {
      json r = json::array();
      for (std::size_t a = 0; a < inst.n(); ++a) r.push_back(inst.tie_groups(a));
      prof["rankings"] = r;
      break;
    }
  }
  json j;
  j["n"] = inst.n();
  j["m"] = inst.m();
  j["profile"] = prof;
  return j;
}

inline json report_to_json(const EnvyReport& r) {
  json j;
  j["per_agent"] = r.per_agent;
  j["num_envious"] = r.num_envious;
  j["max_envy"] = r.max_envy;
  j["total_envy"] = r.total_envy;
  if (r.welfare) j["welfare"] = *r.welfare;
  return j;
}

inline json trace_to_json(const KernelTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    json js;
    js["rule"] = std::string(to_string(s.rule));
    js["x"] = s.x;
    js["y"] = s.y;
    json pairs = json::array();
    for (auto [a, h] : s.pairs) pairs.push_back({a, h});
    js["pairs"] = pairs;
    steps.push_back(js);
  }
  json j;
  j["original_n"] = t.original_n;
  j["original_m"] = t.original_m;
  j["trivial_yes"] = t.trivial_yes();
  j["steps"] = steps;
  j["agent_map"] = t.agent_map;
  j["house_map"] = t.house_map;
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline Instance load_instance(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InvalidInstance(std::string("malformed input: ") + e.what());
  }
  return instance_from_json(j);
}

}  // namespace envyalloc
