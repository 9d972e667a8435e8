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
// Annotated-utterance data model: tokenization, slot spans, pairwise
// relation labels, slot-pair enumeration and encoding, slot patterns, and
// JSONL corpus I/O. All values are immutable once built.

#ifndef RELAY_ANNOTATION_HPP_
#define RELAY_ANNOTATION_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relay/schema.hpp"

namespace relay {

// Canonical slot-index pair, first < second.
using PairId = std::pair<int, int>;

// Fixed, versioned tokenizer: lowercase, whitespace-split, with the
// punctuation marks . , ? ! ' ; : emitted as separate tokens. Slot spans
// are defined over this token stream, so changing it is a format break.
std::vector<std::string> tokenize(const std::string& text);

// A labeled token range [start, end). value is tokens[start..end) joined
// with single spaces.
struct SlotSpan {
  std::string label;
  int start = 0;
  int end = 0;
  std::string value;

  bool operator==(const SlotSpan&) const = default;
};

// Stored relation edge between two slot indices; canonical form has a < b.
// Only non-None relations are stored or serialized.
struct RelationEdge {
  int a = 0;
  int b = 0;
  std::string label;

  bool operator==(const RelationEdge&) const = default;
};

struct AnnotatedUtterance {
  std::string id;
  std::string domain;
  std::string text;
  std::vector<std::string> tokens;  // recomputed from text on load
  std::optional<std::string> intent;  // pass-through metadata
  std::vector<SlotSpan> slots;        // sorted by start, non-overlapping
  std::vector<RelationEdge> relations;  // canonical (a < b), sorted, unique

  bool operator==(const AnnotatedUtterance&) const = default;

  // Gold label on the canonical pair (a, b), or nullopt for None.
  std::optional<std::string> relation_on(int a, int b) const;
};

// All C(n,2) index pairs (i, j) with i < j, in lexicographic order.
std::vector<PairId> enumerate_slot_pairs(const AnnotatedUtterance& u);

// Token sequence with the pair's two slots wrapped in marker tokens:
//   label BEGIN_SLOT <slot tokens> END_SLOT label
// for each slot, other tokens unchanged. Always 8 tokens longer than the
// original. Carries everything pair featurization needs so downstream code
// does not reach back into the utterance.
struct PairEncoding {
  std::vector<std::string> tokens;  // marked token sequence
  PairId pair;
  std::string first_label;   // label of the earlier slot
  std::string second_label;  // label of the later slot
  int gap = 0;               // tokens strictly between the two spans
  std::vector<std::string> between;   // those tokens, in order
  std::string before_first;  // token left of the earlier span, "<s>" at BOS
  std::string after_first;   // token right of the earlier span
  std::string before_second;
  std::string after_second;  // "</s>" at EOS
  std::vector<std::string> pattern;  // full utterance slot pattern
};

inline const std::string kBeginSlot = "BEGIN_SLOT";
inline const std::string kEndSlot = "END_SLOT";

// Throws ValidationError if either index is out of range or i >= j.
PairEncoding encode_pair(const AnnotatedUtterance& u, PairId pair);

// The ordered sequence of slot labels in an utterance; the unit of the
// query-split generalizability protocol.
struct SlotPattern {
  std::vector<std::string> labels;

  bool operator==(const SlotPattern&) const = default;
  std::string key() const;  // labels joined with '+'
};

SlotPattern slot_pattern(const AnnotatedUtterance& u);

struct Violation {
  std::string code;    // stable identifier, e.g. "span-overlap"
  std::string detail;  // human-readable context

  bool operator==(const Violation&) const = default;
};

// Checks an utterance against its domain schema. Violations are data, not
// failures: malformed spans, overlaps, unknown labels, relations absent
// from the schema, duplicate or non-canonical pair entries.
std::vector<Violation> validate(const AnnotatedUtterance& u, const DomainSchema& schema);

// JSONL corpus I/O. One object per line:
//   {"id","domain","text","intent","slots":[{"label","start","end"}],
//    "relations":[{"a","b","label"}]}
// Field and key order is fixed, so reading a canonical corpus and
// re-serializing it is byte-identical.
AnnotatedUtterance utterance_from_json(const std::string& line);
std::string utterance_to_json(const AnnotatedUtterance& u);

std::vector<AnnotatedUtterance> read_corpus(std::istream& in);
std::vector<AnnotatedUtterance> read_corpus_file(const std::string& path);
void write_corpus(std::ostream& out, const std::vector<AnnotatedUtterance>& corpus);
void write_corpus_file(const std::string& path, const std::vector<AnnotatedUtterance>& corpus);

}  // namespace relay

#endif  // RELAY_ANNOTATION_HPP_
