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

#include "relay/logic.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "relay/errors.hpp"

namespace relay {

namespace {

using nlohmann::json;

int span_gap(const SlotSpan& x, const SlotSpan& y) {
  return y.start >= x.end ? y.start - x.end : x.start - y.end;
}

std::string kind_to_string(Operation::Kind kind) {
  switch (kind) {
    case Operation::Kind::metric_query: return "metric_query";
    case Operation::Kind::filter: return "filter";
    case Operation::Kind::location: return "location";
    case Operation::Kind::sector: return "sector";
  }
  return "";
}

Operation::Kind kind_from_string(const std::string& s) {
  if (s == "metric_query") return Operation::Kind::metric_query;
  if (s == "filter") return Operation::Kind::filter;
  if (s == "location") return Operation::Kind::location;
  if (s == "sector") return Operation::Kind::sector;
  throw ParseError("operations: unknown kind '" + s + "'");
}

}  // namespace

std::string to_string(Comparator c) {
  switch (c) {
    case Comparator::above: return "above";
    case Comparator::below: return "below";
    case Comparator::equal: return "equal";
    case Comparator::at_least: return "at_least";
    case Comparator::at_most: return "at_most";
  }
  return "";
}

Comparator comparator_from_string(const std::string& s) {
  if (s == "above") return Comparator::above;
  if (s == "below") return Comparator::below;
  if (s == "equal") return Comparator::equal;
  if (s == "at_least") return Comparator::at_least;
  if (s == "at_most") return Comparator::at_most;
  throw ParseError("unknown comparator '" + s + "'");
}

Operation Operation::make_metric_query(std::string metric, std::string date) {
  Operation op;
  op.kind = Kind::metric_query;
  op.metric = std::move(metric);
  op.date = std::move(date);
  return op;
}

Operation Operation::make_filter(std::string metric, Comparator cmp, std::string amount,
                                 std::string date) {
  Operation op;
  op.kind = Kind::filter;
  op.metric = std::move(metric);
  op.cmp = cmp;
  op.amount = std::move(amount);
  op.date = std::move(date);
  return op;
}

Operation Operation::make_location(std::string value, bool exclude) {
  Operation op;
  op.kind = Kind::location;
  op.value = std::move(value);
  op.exclude = exclude;
  return op;
}

Operation Operation::make_sector(std::string value, bool exclude) {
  Operation op;
  op.kind = Kind::sector;
  op.value = std::move(value);
  op.exclude = exclude;
  return op;
}

Comparator ComparatorLexicon::at(const std::string& surface) const {
  auto it = entries.find(surface);
  if (it == entries.end()) {
    throw ValidationError("comparator lexicon has no entry for modifier '" + surface + "'");
  }
  return it->second;
}

ComparatorLexicon default_comparator_lexicon() {
  ComparatorLexicon lex;
  lex.entries = {
      {"over", Comparator::above},      {"above", Comparator::above},
      {"more", Comparator::above},      {"greater", Comparator::above},
      {"under", Comparator::below},     {"below", Comparator::below},
      {"less", Comparator::below},      {"fewer", Comparator::below},
      {"equal", Comparator::equal},     {"equal to", Comparator::equal},
      {"exactly", Comparator::equal},   {"at least", Comparator::at_least},
      {"or more", Comparator::at_least},{"at most", Comparator::at_most},
      {"or less", Comparator::at_most},
  };
  return lex;
}

void extend_lexicon(ComparatorLexicon& lex, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("lexicon: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("lexicon: document must be a JSON object");
  for (const auto& [surface, value] : j.items()) {
    lex.entries[surface] = comparator_from_string(value.get<std::string>());
  }
}

std::set<Operation> compile_relation_based(const AnnotatedUtterance& u,
                                           const RelationAssignment& assignment,
                                           const ComparatorLexicon& lex) {
  int n = static_cast<int>(u.slots.size());
  auto label_of = [&](int i) -> const std::string& { return u.slots[i].label; };
  auto relation_between = [&](int i, int j) -> const std::string& {
    PairId pair = i < j ? PairId{i, j} : PairId{j, i};
    return assignment.at(pair);
  };

  // Reject relations whose endpoints the stocks schema cannot produce; the
  // schema mask makes these unreachable, so seeing one means bad input.
  for (const auto& [pair, label] : assignment.labels) {
    if (label == kNoRelation) continue;
    const std::string& la = label_of(pair.first);
    const std::string& lb = label_of(pair.second);
    SlotPairKey key(la, lb);
    bool ok = (label == "negation_relation" &&
               (key == SlotPairKey("location", "negation_modifier") ||
                key == SlotPairKey("sector_name", "negation_modifier"))) ||
              (label == "filter_metric_relation" &&
               key == SlotPairKey("filter_modifier", "metric_name")) ||
              (label == "filter_amount_relation" &&
               key == SlotPairKey("filter_modifier", "amount")) ||
              (label == "date_relation" && key == SlotPairKey("date_metric", "metric_name"));
    if (!ok) {
      throw ValidationError("compile_relation_based: relation '" + label +
                            "' between slot types (" + la + ", " + lb + ")");
    }
  }

  std::set<Operation> ops;
  for (int i = 0; i < n; ++i) {
    const std::string& label = label_of(i);
    if (label == "location" || label == "sector_name") {
      bool negated = false;
      for (int j = 0; j < n && !negated; ++j) {
        negated = j != i && label_of(j) == "negation_modifier" &&
                  relation_between(i, j) == "negation_relation";
      }
      if (label == "location") {
        ops.insert(Operation::make_location(u.slots[i].value, negated));
      } else {
        ops.insert(Operation::make_sector(u.slots[i].value, negated));
      }
    } else if (label == "metric_name") {
      std::string date;
      for (int j = 0; j < n && date.empty(); ++j) {
        if (j != i && label_of(j) == "date_metric" &&
            relation_between(i, j) == "date_relation") {
          date = u.slots[j].value;
        }
      }
      bool filtered = false;
      for (int j = 0; j < n; ++j) {
        if (j == i || label_of(j) != "filter_modifier" ||
            relation_between(i, j) != "filter_metric_relation") {
          continue;
        }
        // Complete the chain: the modifier must also link to an amount.
        for (int a = 0; a < n; ++a) {
          if (a != j && label_of(a) == "amount" &&
              relation_between(j, a) == "filter_amount_relation") {
            ops.insert(Operation::make_filter(u.slots[i].value, lex.at(u.slots[j].value),
                                              u.slots[a].value, date));
            filtered = true;
            break;
          }
        }
      }
      if (!filtered) {
        ops.insert(Operation::make_metric_query(u.slots[i].value, date));
      }
    }
    // filter_modifier, amount, negation_modifier, date_metric slots emit no
    // operations of their own.
  }
  return ops;
}

std::set<Operation> compile_slot_based(const AnnotatedUtterance& u) {
  int n = static_cast<int>(u.slots.size());
  auto label_of = [&](int i) -> const std::string& { return u.slots[i].label; };
  auto is_metric = [&](int i) {
    return label_of(i) == "query_metric" || label_of(i) == "filter_metric";
  };
  auto is_amount = [&](int i) {
    return label_of(i) == "filter_amount_above" || label_of(i) == "filter_amount_below";
  };

  // Pair each filter_metric with the nearest following unconsumed amount.
  std::vector<int> amount_of(n, -1);
  std::vector<bool> consumed(n, false);
  for (int i = 0; i < n; ++i) {
    if (label_of(i) != "filter_metric") continue;
    for (int j = i + 1; j < n; ++j) {
      if (is_amount(j) && !consumed[j]) {
        amount_of[i] = j;
        consumed[j] = true;
        break;
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    if (is_amount(j) && !consumed[j]) {
      throw ValidationError("compile_slot_based: amount slot '" + u.slots[j].value +
                            "' has no metric to attach to");
    }
  }

  // Dates attach to the nearest metric; exact ties go to the following one.
  std::vector<std::string> date_of(n);
  for (int d = 0; d < n; ++d) {
    if (label_of(d) != "date") continue;
    int best = -1;
    int best_gap = 0;
    for (int m = 0; m < n; ++m) {
      if (!is_metric(m)) continue;
      int gap = span_gap(u.slots[d], u.slots[m]);
      bool better = best < 0 || gap < best_gap ||
                    (gap == best_gap && u.slots[m].start > u.slots[d].start &&
                     u.slots[best].start < u.slots[d].start);
      if (better) {
        best = m;
        best_gap = gap;
      }
    }
    if (best >= 0 && date_of[best].empty()) date_of[best] = u.slots[d].value;
  }

  std::set<Operation> ops;
  for (int i = 0; i < n; ++i) {
    const std::string& label = label_of(i);
    if (label == "location_inside") {
      ops.insert(Operation::make_location(u.slots[i].value, false));
    } else if (label == "location_outside") {
      ops.insert(Operation::make_location(u.slots[i].value, true));
    } else if (label == "sector") {
      ops.insert(Operation::make_sector(u.slots[i].value, false));
    } else if (label == "sector_outside") {
      ops.insert(Operation::make_sector(u.slots[i].value, true));
    } else if (label == "query_metric") {
      ops.insert(Operation::make_metric_query(u.slots[i].value, date_of[i]));
    } else if (label == "filter_metric") {
      if (amount_of[i] >= 0) {
        int a = amount_of[i];
        Comparator cmp = label_of(a) == "filter_amount_above" ? Comparator::above
                                                              : Comparator::below;
        ops.insert(Operation::make_filter(u.slots[i].value, cmp, u.slots[a].value,
                                          date_of[i]));
      } else {
        ops.insert(Operation::make_metric_query(u.slots[i].value, date_of[i]));
      }
    }
  }
  return ops;
}

bool operations_exact_match(const std::set<Operation>& gold, const std::set<Operation>& pred) {
  return gold == pred;
}

std::string operations_to_json(const std::string& id, const std::set<Operation>& ops) {
  json line;  // std::map-backed: keys serialize sorted
  line["id"] = id;
  json arr = json::array();
  for (const Operation& op : ops) {
    json o;
    o["kind"] = kind_to_string(op.kind);
    switch (op.kind) {
      case Operation::Kind::metric_query:
        o["metric"] = op.metric;
        if (!op.date.empty()) o["date"] = op.date;
        break;
      case Operation::Kind::filter:
        o["metric"] = op.metric;
        o["cmp"] = to_string(op.cmp);
        o["amount"] = op.amount;
        if (!op.date.empty()) o["date"] = op.date;
        break;
      case Operation::Kind::location:
      case Operation::Kind::sector:
        o["value"] = op.value;
        o["polarity"] = op.exclude ? "exclude" : "include";
        break;
    }
    arr.push_back(std::move(o));
  }
  line["ops"] = std::move(arr);
  return line.dump();
}

std::pair<std::string, std::set<Operation>> operations_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("operations: ") + e.what());
  }
  std::pair<std::string, std::set<Operation>> row;
  try {
    row.first = j.at("id").get<std::string>();
    for (const auto& o : j.at("ops")) {
      Operation op;
      op.kind = kind_from_string(o.at("kind").get<std::string>());
      switch (op.kind) {
        case Operation::Kind::metric_query:
          op.metric = o.at("metric").get<std::string>();
          op.date = o.value("date", std::string());
          break;
        case Operation::Kind::filter:
          op.metric = o.at("metric").get<std::string>();
          op.cmp = comparator_from_string(o.at("cmp").get<std::string>());
          op.amount = o.at("amount").get<std::string>();
          op.date = o.value("date", std::string());
          break;
        case Operation::Kind::location:
        case Operation::Kind::sector:
          op.value = o.at("value").get<std::string>();
          op.exclude = o.at("polarity").get<std::string>() == "exclude";
          break;
      }
      row.second.insert(std::move(op));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("operations: ") + e.what());
  }
  return row;
}

void write_operations(std::ostream& out,
                      const std::vector<std::pair<std::string, std::set<Operation>>>& rows) {
  for (const auto& [id, ops] : rows) {
    out << operations_to_json(id, ops) << '\n';
  }
}

std::vector<std::pair<std::string, std::set<Operation>>> read_operations(std::istream& in) {
  std::vector<std::pair<std::string, std::set<Operation>>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(operations_from_json(line));
  }
  return rows;
}

std::vector<std::pair<std::string, std::set<Operation>>> read_operations_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("operations: cannot open " + path);
  return read_operations(in);
}

}  // namespace relay
