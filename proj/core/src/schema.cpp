// Copyright 2026 The Relay Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relay/schema.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relay/errors.hpp"

namespace relay {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(std::string("schema: missing field '") + key + "'");
  }
  return *it;
}

std::set<std::string> string_set(const json& j, const char* key) {
  std::set<std::string> out;
  for (const auto& v : require(j, key)) {
    out.insert(v.get<std::string>());
  }
  return out;
}

}  // namespace

DomainSchema load_schema(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("schema: ") + e.what());
  }

  DomainSchema schema;
  try {
    if (!j.is_object()) throw ParseError("schema: document must be a JSON object");
    schema.domain = require(j, "domain").get<std::string>();
    schema.slot_types = string_set(j, "slot_types");
    schema.relation_types = string_set(j, "relation_types");

    for (const auto& rule : require(j, "pair_relations")) {
      const auto& slots = require(rule, "slots");
      if (!slots.is_array() || slots.size() != 2) {
        throw ParseError("schema: pair rule 'slots' must hold exactly two slot types");
      }
      SlotPairKey key(slots[0].get<std::string>(), slots[1].get<std::string>());
      std::string relation = require(rule, "relation").get<std::string>();
      if (!schema.slot_types.count(key.first) || !schema.slot_types.count(key.second)) {
        throw ValidationError("schema: pair rule (" + key.first + ", " + key.second +
                              ") references an undeclared slot type");
      }
      if (!schema.relation_types.count(relation)) {
        throw ValidationError("schema: pair rule (" + key.first + ", " + key.second +
                              ") references undeclared relation '" + relation + "'");
      }
      auto [it, inserted] = schema.pair_rules.emplace(key, std::move(relation));
      if (!inserted) {
        throw ValidationError("schema: duplicate pair rule for (" + key.first + ", " +
                              key.second + ")");
      }
    }

    for (const auto& rule : require(j, "heuristic")) {
      HeuristicRule h;
      h.modifier = require(rule, "modifier").get<std::string>();
      if (!schema.slot_types.count(h.modifier)) {
        throw ValidationError("schema: heuristic modifier '" + h.modifier +
                              "' is not a declared slot type");
      }
      for (const auto& target : require(rule, "targets")) {
        HeuristicTarget t;
        t.modified = require(target, "modified").get<std::string>();
        t.relation = require(target, "relation").get<std::string>();
        if (!schema.slot_types.count(t.modified)) {
          throw ValidationError("schema: heuristic target '" + t.modified +
                                "' is not a declared slot type");
        }
        auto rule_it = schema.pair_rules.find(SlotPairKey(h.modifier, t.modified));
        if (rule_it == schema.pair_rules.end() || rule_it->second != t.relation) {
          throw ValidationError("schema: heuristic triple (" + h.modifier + ", " +
                                t.modified + ", " + t.relation +
                                ") does not match any pair rule");
        }
        h.targets.push_back(std::move(t));
      }
      schema.heuristic_rules.push_back(std::move(h));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("schema: ") + e.what());
  }
  return schema;
}

DomainSchema load_schema_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("schema: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_schema(buf.str());
}

std::string serialize(const DomainSchema& schema) {
  ordered_json j;
  j["domain"] = schema.domain;
  j["slot_types"] = schema.slot_types;
  j["relation_types"] = schema.relation_types;
  ordered_json rules = ordered_json::array();
  for (const auto& [key, relation] : schema.pair_rules) {
    ordered_json rule;
    rule["slots"] = {key.first, key.second};
    rule["relation"] = relation;
    rules.push_back(std::move(rule));
  }
  j["pair_relations"] = std::move(rules);
  ordered_json heuristics = ordered_json::array();
  for (const auto& h : schema.heuristic_rules) {
    ordered_json rule;
    rule["modifier"] = h.modifier;
    ordered_json targets = ordered_json::array();
    for (const auto& t : h.targets) {
      targets.push_back({{"modified", t.modified}, {"relation", t.relation}});
    }
    rule["targets"] = std::move(targets);
    heuristics.push_back(std::move(rule));
  }
  j["heuristic"] = std::move(heuristics);
  return j.dump(2) + "\n";
}

std::optional<std::string> relation_for_pair(const DomainSchema& schema,
                                             const std::string& a,
                                             const std::string& b) {
  if (!schema.slot_types.count(a)) {
    throw ValidationError("schema '" + schema.domain + "': unknown slot type '" + a + "'");
  }
  if (!schema.slot_types.count(b)) {
    throw ValidationError("schema '" + schema.domain + "': unknown slot type '" + b + "'");
  }
  auto it = schema.pair_rules.find(SlotPairKey(a, b));
  if (it == schema.pair_rules.end()) return std::nullopt;
  return it->second;
}

}  // namespace relay
