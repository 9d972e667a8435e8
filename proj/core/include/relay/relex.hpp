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
// Relation extractors: the rule-based nearest-candidate heuristic and a
// learned linear pairwise classifier over pair encodings. Both return a
// total assignment over all enumerated slot pairs.

#ifndef RELAY_RELEX_HPP_
#define RELAY_RELEX_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "relay/annotation.hpp"
#include "relay/schema.hpp"

namespace relay {

// The None relation. Kept as the empty string so assignment maps stay
// dense and comparisons stay cheap.
inline const std::string kNoRelation = "";

// Total map over enumerate_slot_pairs: every pair is present, non-relations
// hold kNoRelation.
struct RelationAssignment {
  std::map<PairId, std::string> labels;

  bool operator==(const RelationAssignment&) const = default;

  const std::string& at(PairId p) const { return labels.at(p); }
  bool has_relation(PairId p) const { return labels.at(p) != kNoRelation; }
};

// Builds the gold assignment of an utterance (stored edges expanded to a
// total map).
RelationAssignment gold_assignment(const AnnotatedUtterance& u);

// Rule-based extraction. For each slot whose label is a configured
// modifier, collects the slots with valid modified labels; a single
// candidate gets the configured relation, several candidates resolve to the
// nearest one by token distance between span boundaries. An exact distance
// tie is broken toward the candidate after the modifier. Each modifier
// contributes at most one relation; a modified slot may receive several.
// Depends only on slot labels and positions, never on token values.
// Throws ValidationError for slot labels missing from the schema.
RelationAssignment heuristic_extract(const std::vector<SlotSpan>& slots,
                                     const DomainSchema& schema);

// Deterministic featurization of one encoded pair: ordered label pair,
// distance bucket, bag of tokens strictly between the slots, boundary
// neighbor tokens, conjunction/article presence, and the utterance slot
// pattern. Returned as a multiset (duplicates meaningful).
std::vector<std::string> pair_features(const PairEncoding& enc, const DomainSchema& schema);

// Linear multiclass model over pair features. labels holds the schema
// relation types in sorted order with kNoRelation last; score ties resolve
// to the earliest label in that order.
struct PairClassifierModel {
  int version = 1;
  std::string kind = "pair_classifier";
  std::string domain;
  std::uint64_t seed = 0;
  int epochs = 0;
  std::vector<std::string> labels;
  std::vector<std::string> templates;
  std::unordered_map<std::string, std::vector<double>> weights;  // per label
  double train_accuracy = 0.0;
};

// One training instance per enumerated pair (gold label or None), averaged
// online multiclass training, schema-impossible labels masked out.
// Deterministic given (corpus, seed, epochs). Throws on an empty corpus.
PairClassifierModel train_pair_classifier(const std::vector<AnnotatedUtterance>& corpus,
                                          const DomainSchema& schema,
                                          std::uint64_t seed, int epochs);

// Classifies every enumerated pair independently over the utterance's
// current slots (gold or tagged). With schema_mask on (the default), labels
// impossible for a pair's slot types are excluded, so every non-None
// prediction is schema-valid.
RelationAssignment extract_learned(const PairClassifierModel& model,
                                   const AnnotatedUtterance& u,
                                   const DomainSchema& schema,
                                   bool schema_mask = true);

std::string serialize(const PairClassifierModel& model);
PairClassifierModel load_pair_classifier(const std::string& json_text);
PairClassifierModel load_pair_classifier_file(const std::string& path);

}  // namespace relay

#endif  // RELAY_RELEX_HPP_
