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
// Compilation of stocks-domain annotations into back-end operation
// objects, from either labeling scheme: simplified slots plus relations
// (relation-based) or legacy contextual slots (slot-based). Operation sets
// are the unit of end-to-end scoring.

#ifndef RELAY_LOGIC_HPP_
#define RELAY_LOGIC_HPP_

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "relay/annotation.hpp"
#include "relay/relex.hpp"

namespace relay {

enum class Comparator { above, below, equal, at_least, at_most };

std::string to_string(Comparator c);
Comparator comparator_from_string(const std::string& s);

// One back-end action. A flat variant: unused fields stay empty. All
// values are normalized lowercase surface strings; amounts and dates are
// not parsed into numerics.
struct Operation {
  enum class Kind { metric_query, filter, location, sector };

  Kind kind = Kind::metric_query;
  std::string metric;                    // metric_query, filter
  Comparator cmp = Comparator::above;    // filter
  std::string amount;                    // filter
  std::string date;                      // metric_query, filter (optional)
  std::string value;                     // location, sector
  bool exclude = false;                  // location, sector polarity

  auto operator<=>(const Operation&) const = default;

  static Operation make_metric_query(std::string metric, std::string date = "");
  static Operation make_filter(std::string metric, Comparator cmp,
                               std::string amount, std::string date = "");
  static Operation make_location(std::string value, bool exclude);
  static Operation make_sector(std::string value, bool exclude);
};

// Modifier surface form -> comparator. Total over the generator's modifier
// vocabulary; unknown forms are an error, never a silent default.
struct ComparatorLexicon {
  std::map<std::string, Comparator> entries;

  Comparator at(const std::string& surface) const;  // throws ValidationError
};

ComparatorLexicon default_comparator_lexicon();
// Merges {"surface": "comparator"} entries from a JSON object into lex.
void extend_lexicon(ComparatorLexicon& lex, const std::string& json_text);

// Relation-based compile. location/sector slots with a negation relation to
// a negation_modifier become exclude constraints, otherwise include.
// metric_name linked to a filter_modifier that is itself linked to an
// amount yields a Filter (comparator from the lexicon); an incomplete
// filter chain degrades to a MetricQuery. A date_metric linked by
// date_relation attaches to the metric's operation. Throws ValidationError
// for lexicon-missing modifiers and relations whose endpoints the stocks
// schema does not allow.
std::set<Operation> compile_relation_based(const AnnotatedUtterance& u,
                                           const RelationAssignment& assignment,
                                           const ComparatorLexicon& lex);

// Slot-based compile over the legacy contextual labels
// (location_inside/outside, sector/sector_outside, query_metric,
// filter_metric, filter_amount_above/below, date). filter_metric pairs with
// the nearest following unconsumed amount slot; a leftover amount slot with
// no metric to attach to is an error. date attaches to the nearest metric.
std::set<Operation> compile_slot_based(const AnnotatedUtterance& u);

// Structural set equality; order-insensitive by construction.
bool operations_exact_match(const std::set<Operation>& gold,
                            const std::set<Operation>& pred);

// Operations JSONL: {"id": ..., "ops": [...]}, keys and operations sorted
// for byte-stable output.
std::string operations_to_json(const std::string& id, const std::set<Operation>& ops);
std::pair<std::string, std::set<Operation>> operations_from_json(const std::string& line);

void write_operations(std::ostream& out,
                      const std::vector<std::pair<std::string, std::set<Operation>>>& rows);
std::vector<std::pair<std::string, std::set<Operation>>> read_operations(std::istream& in);
std::vector<std::pair<std::string, std::set<Operation>>> read_operations_file(const std::string& path);

}  // namespace relay

#endif  // RELAY_LOGIC_HPP_
