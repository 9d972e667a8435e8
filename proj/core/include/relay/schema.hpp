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
//
// Per-domain relation schemas: which slot-type pairs may carry which
// relation label, plus the rule set driving the heuristic extractor.
// A schema is immutable after load and safe to share across threads.

#ifndef RELAY_SCHEMA_HPP_
#define RELAY_SCHEMA_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace relay {

// Canonical form of an unordered slot-type pair: first <= second.
struct SlotPairKey {
  std::string first;
  std::string second;

  SlotPairKey() = default;
  SlotPairKey(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    first = std::move(a);
    second = std::move(b);
  }

  auto operator<=>(const SlotPairKey&) const = default;
};

struct HeuristicTarget {
  std::string modified;
  std::string relation;
  bool operator==(const HeuristicTarget&) const = default;
};

// One modifier slot type and the modified slot types it may attach to.
// Every (modifier, modified, relation) triple must agree with pair_rules.
struct HeuristicRule {
  std::string modifier;
  std::vector<HeuristicTarget> targets;
  bool operator==(const HeuristicRule&) const = default;
};

struct DomainSchema {
  std::string domain;
  std::set<std::string> slot_types;
  std::set<std::string> relation_types;
  // Non-directional: keyed by the canonical unordered pair. A pair has at
  // most one possible relation label; absent pairs mean None.
  std::map<SlotPairKey, std::string> pair_rules;
  std::vector<HeuristicRule> heuristic_rules;

  bool operator==(const DomainSchema&) const = default;

  bool has_slot_type(const std::string& s) const { return slot_types.count(s) > 0; }
};

// Parses and validates a schema document (see data/schemas/ for the format).
// Throws ParseError on malformed JSON, ValidationError on duplicate pair
// rules, undeclared identifiers, or heuristic rules inconsistent with the
// pair rules.
DomainSchema load_schema(const std::string& json_text);
DomainSchema load_schema_file(const std::string& path);

// Canonical JSON document; load_schema(serialize(s)) == s.
std::string serialize(const DomainSchema& schema);

// Relation label for the unordered pair (a, b), or nullopt for None.
// Symmetric in a/b. Throws ValidationError for undeclared slot types.
std::optional<std::string> relation_for_pair(const DomainSchema& schema,
                                             const std::string& a,
                                             const std::string& b);

}  // namespace relay

#endif  // RELAY_SCHEMA_HPP_
