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

#include "relay/annotation.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relay/errors.hpp"

namespace relay {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kPunctuation = ".,?!';:";

std::string join_tokens(const std::vector<std::string>& tokens, int start, int end) {
  std::string out;
  for (int i = start; i < end; ++i) {
    if (!out.empty()) out += ' ';
    out += tokens[i];
  }
  return out;
}

// Slot value over a possibly malformed span; clamped so loading bad data
// never throws (validate() reports the range problem instead).
std::string clamped_value(const std::vector<std::string>& tokens, int start, int end) {
  int n = static_cast<int>(tokens.size());
  int s = std::clamp(start, 0, n);
  int e = std::clamp(end, 0, n);
  return s < e ? join_tokens(tokens, s, e) : std::string();
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      out.push_back(current);
      current.clear();
    }
  };
  for (unsigned char c : text) {
    if (c < 0x80 && std::isspace(c)) {
      flush();
    } else if (c < 0x80 && std::strchr(kPunctuation, static_cast<char>(c)) != nullptr) {
      flush();
      out.emplace_back(1, static_cast<char>(c));
    } else {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                                 : static_cast<char>(c));
    }
  }
  flush();
  return out;
}

std::optional<std::string> AnnotatedUtterance::relation_on(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (const auto& edge : relations) {
    if (edge.a == a && edge.b == b) return edge.label;
  }
  return std::nullopt;
}

std::vector<PairId> enumerate_slot_pairs(const AnnotatedUtterance& u) {
  std::vector<PairId> pairs;
  int n = static_cast<int>(u.slots.size());
  pairs.reserve(n > 1 ? static_cast<std::size_t>(n) * (n - 1) / 2 : 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

PairEncoding encode_pair(const AnnotatedUtterance& u, PairId pair) {
  int n_slots = static_cast<int>(u.slots.size());
  if (pair.first < 0 || pair.second >= n_slots || pair.first >= pair.second) {
    throw ValidationError("encode_pair: pair (" + std::to_string(pair.first) + ", " +
                          std::to_string(pair.second) + ") out of range for " +
                          std::to_string(n_slots) + " slots");
  }
  const SlotSpan& a = u.slots[pair.first];
  const SlotSpan& b = u.slots[pair.second];
  int n = static_cast<int>(u.tokens.size());

  PairEncoding enc;
  enc.pair = pair;
  enc.first_label = a.label;
  enc.second_label = b.label;
  enc.gap = b.start - a.end;
  enc.tokens.reserve(u.tokens.size() + 8);
  for (int t = 0; t <= n; ++t) {
    // Close before open so adjacent spans nest without overlap.
    if (t == a.end) {
      enc.tokens.push_back(kEndSlot);
      enc.tokens.push_back(a.label);
    }
    if (t == b.end) {
      enc.tokens.push_back(kEndSlot);
      enc.tokens.push_back(b.label);
    }
    if (t == a.start) {
      enc.tokens.push_back(a.label);
      enc.tokens.push_back(kBeginSlot);
    }
    if (t == b.start) {
      enc.tokens.push_back(b.label);
      enc.tokens.push_back(kBeginSlot);
    }
    if (t < n) enc.tokens.push_back(u.tokens[t]);
  }

  for (int t = a.end; t < b.start; ++t) enc.between.push_back(u.tokens[t]);
  enc.before_first = a.start > 0 ? u.tokens[a.start - 1] : "<s>";
  enc.after_first = a.end < n ? u.tokens[a.end] : "</s>";
  enc.before_second = b.start > 0 ? u.tokens[b.start - 1] : "<s>";
  enc.after_second = b.end < n ? u.tokens[b.end] : "</s>";
  enc.pattern = slot_pattern(u).labels;
  return enc;
}

std::string SlotPattern::key() const {
  std::string out;
  for (const auto& label : labels) {
    if (!out.empty()) out += '+';
    out += label;
  }
  return out;
}

SlotPattern slot_pattern(const AnnotatedUtterance& u) {
  SlotPattern pattern;
  pattern.labels.reserve(u.slots.size());
  for (const auto& slot : u.slots) pattern.labels.push_back(slot.label);
  return pattern;
}

std::vector<Violation> validate(const AnnotatedUtterance& u, const DomainSchema& schema) {
  std::vector<Violation> out;
  auto add = [&](std::string code, std::string detail) {
    out.push_back({std::move(code), std::move(detail)});
  };

  if (!u.domain.empty() && u.domain != schema.domain) {
    add("domain-mismatch", "utterance '" + u.id + "' is domain '" + u.domain +
                               "', schema is '" + schema.domain + "'");
  }

  int n = static_cast<int>(u.tokens.size());
  for (std::size_t i = 0; i < u.slots.size(); ++i) {
    const SlotSpan& s = u.slots[i];
    if (!schema.slot_types.count(s.label)) {
      add("unknown-slot-label", "slot " + std::to_string(i) + " label '" + s.label + "'");
    }
    if (s.start < 0 || s.end > n || s.start >= s.end) {
      add("span-out-of-range", "slot " + std::to_string(i) + " [" +
                                   std::to_string(s.start) + ", " + std::to_string(s.end) +
                                   ") over " + std::to_string(n) + " tokens");
    }
    if (i > 0) {
      const SlotSpan& prev = u.slots[i - 1];
      if (s.start < prev.start) {
        add("slots-unsorted", "slot " + std::to_string(i) + " starts before slot " +
                                  std::to_string(i - 1));
      } else if (s.start < prev.end) {
        add("span-overlap", "slots " + std::to_string(i - 1) + " and " +
                                std::to_string(i) + " overlap");
      }
    }
  }

  int n_slots = static_cast<int>(u.slots.size());
  std::set<PairId> seen;
  for (const auto& edge : u.relations) {
    if (edge.a < 0 || edge.b >= n_slots || edge.a >= edge.b) {
      add("relation-pair-malformed", "relation (" + std::to_string(edge.a) + ", " +
                                         std::to_string(edge.b) + ")");
      continue;
    }
    if (!seen.insert({edge.a, edge.b}).second) {
      add("relation-duplicate-pair", "pair (" + std::to_string(edge.a) + ", " +
                                         std::to_string(edge.b) + ") labeled twice");
      continue;
    }
    const std::string& la = u.slots[edge.a].label;
    const std::string& lb = u.slots[edge.b].label;
    if (!schema.slot_types.count(la) || !schema.slot_types.count(lb)) {
      continue;  // already reported as unknown-slot-label
    }
    auto expected = relation_for_pair(schema, la, lb);
    if (!expected.has_value()) {
      add("relation-pair-not-in-schema",
          "pair (" + la + ", " + lb + ") has no relation in schema, got '" + edge.label + "'");
    } else if (*expected != edge.label) {
      add("relation-label-mismatch", "pair (" + la + ", " + lb + ") must be '" + *expected +
                                         "', got '" + edge.label + "'");
    }
  }
  return out;
}

AnnotatedUtterance utterance_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(std::string("corpus: ") + e.what());
  }
  AnnotatedUtterance u;
  try {
    u.id = j.at("id").get<std::string>();
    u.domain = j.at("domain").get<std::string>();
    u.text = j.at("text").get<std::string>();
    if (j.contains("intent") && !j.at("intent").is_null()) {
      u.intent = j.at("intent").get<std::string>();
    }
    u.tokens = tokenize(u.text);
    for (const auto& s : j.at("slots")) {
      SlotSpan span;
      span.label = s.at("label").get<std::string>();
      span.start = s.at("start").get<int>();
      span.end = s.at("end").get<int>();
      span.value = clamped_value(u.tokens, span.start, span.end);
      u.slots.push_back(std::move(span));
    }
    for (const auto& r : j.at("relations")) {
      RelationEdge edge;
      edge.a = r.at("a").get<int>();
      edge.b = r.at("b").get<int>();
      edge.label = r.at("label").get<std::string>();
      u.relations.push_back(std::move(edge));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("corpus: ") + e.what());
  }
  return u;
}

std::string utterance_to_json(const AnnotatedUtterance& u) {
  ordered_json j;
  j["id"] = u.id;
  j["domain"] = u.domain;
  j["text"] = u.text;
  if (u.intent.has_value()) {
    j["intent"] = *u.intent;
  } else {
    j["intent"] = nullptr;
  }
  ordered_json slots = ordered_json::array();
  for (const auto& s : u.slots) {
    slots.push_back({{"label", s.label}, {"start", s.start}, {"end", s.end}});
  }
  j["slots"] = std::move(slots);
  ordered_json relations = ordered_json::array();
  for (const auto& r : u.relations) {
    relations.push_back({{"a", r.a}, {"b", r.b}, {"label", r.label}});
  }
  j["relations"] = std::move(relations);
  return j.dump();
}

std::vector<AnnotatedUtterance> read_corpus(std::istream& in) {
  std::vector<AnnotatedUtterance> corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      corpus.push_back(utterance_from_json(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return corpus;
}

std::vector<AnnotatedUtterance> read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("corpus: cannot open " + path);
  try {
    return read_corpus(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_corpus(std::ostream& out, const std::vector<AnnotatedUtterance>& corpus) {
  for (const auto& u : corpus) {
    out << utterance_to_json(u) << '\n';
  }
}

void write_corpus_file(const std::string& path, const std::vector<AnnotatedUtterance>& corpus) {
  std::ofstream out(path);
  if (!out) throw ParseError("corpus: cannot open " + path + " for writing");
  write_corpus(out, corpus);
}

}  // namespace relay
