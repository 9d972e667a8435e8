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
// Metrics and experiment drivers: micro P/R/F1 over non-None relations,
// exact match over full assignments, slot-count buckets, pattern splits,
// zero-shot experiments, and end-to-end operations scoring.

#ifndef RELAY_EVAL_HPP_
#define RELAY_EVAL_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relay/annotation.hpp"
#include "relay/datagen.hpp"
#include "relay/logic.hpp"
#include "relay/relex.hpp"
#include "relay/schema.hpp"
#include "relay/slotfill.hpp"

namespace relay {

struct LabelScore {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  double p = 0.0;
  double r = 0.0;
  double f1 = 0.0;

  bool operator==(const LabelScore&) const = default;
};

struct BucketScore {
  double p = 0.0;
  double r = 0.0;
  double f1 = 0.0;
  double em = 0.0;
  long long utterances = 0;
  long long em_hits = 0;
  long long gold_relations = 0;
  long long predicted_relations = 0;

  bool operator==(const BucketScore&) const = default;
};

// Aggregation is over integer confusion counts, so it is independent of
// utterance order. f1 = 2PR/(P+R) when P+R > 0, else 0. Exact match counts
// every utterance, including relation-free ones.
struct MetricsReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double exact_match = 0.0;
  std::map<std::string, LabelScore> per_label;
  std::map<int, BucketScore> buckets;  // by slot count; empty buckets absent
  long long utterances = 0;
  long long em_hits = 0;
  long long gold_relations = 0;
  long long predicted_relations = 0;
  std::string split_descriptor;
  std::uint64_t seed = 0;

  bool operator==(const MetricsReport&) const = default;
};

using AssignmentsById = std::map<std::string, RelationAssignment>;

AssignmentsById gold_assignments(const std::vector<AnnotatedUtterance>& corpus);

// Micro precision/recall/F1 over non-None labels (a predicted non-None
// label is a TP iff it equals gold on that pair) plus exact match over the
// full assignment. Throws ValidationError if predictions do not cover
// exactly the gold utterance ids and pair sets. Includes per-slot-count
// buckets when with_buckets is set.
MetricsReport relation_scores(const std::vector<AnnotatedUtterance>& gold,
                              const AssignmentsById& pred,
                              bool with_buckets = false);

// Per-bucket full reports (bucket key: slot count). Buckets partition the
// corpus: their utterance counts sum to the corpus size.
std::map<int, MetricsReport> bucket_by_slot_count(const std::vector<AnnotatedUtterance>& gold,
                                                  const AssignmentsById& pred);

// Groups utterances by slot pattern and assigns whole groups to train or
// test (target test mass ~ test_frac, whole-group granularity), so train
// and test pattern sets are always disjoint. Throws ValidationError with
// fewer than two distinct patterns.
std::pair<std::vector<AnnotatedUtterance>, std::vector<AnnotatedUtterance>> pattern_split(
    const std::vector<AnnotatedUtterance>& corpus, std::uint64_t seed,
    double test_frac = 0.3);

enum class SplitStrategy { random, pattern, zero_shot_slot, zero_shot_pair };

std::string to_string(SplitStrategy s);

struct SplitSpec {
  SplitStrategy strategy = SplitStrategy::random;
  std::uint64_t seed = 42;
  double test_frac = 0.3;  // random, pattern
  HeldOut held_out;        // zero-shot strategies
  int k = 0;               // zero-shot: exhibitors kept in training
  int test_size = 0;       // zero-shot: 0 = default (90 slot / 50 pair)
};

enum class ExtractorKind { heuristic, learned };

std::string to_string(ExtractorKind k);

struct RunOptions {
  bool oracle_slots = true;  // false: tag text, score operations exact match
  bool schema_mask = true;
  int re_epochs = 10;
  int sf_epochs = 5;
};

// Splits the pool, trains the extractor (if learned), predicts on the test
// side, and scores. With oracle slots the report carries relation metrics
// and buckets; in end-to-end mode (stocks relation-based corpora only) the
// report's exact_match is the operations exact-match rate and the relation
// fields are zero. The report embeds the split descriptor and seed.
MetricsReport run_experiment(const SplitSpec& spec, ExtractorKind kind,
                             const std::vector<AnnotatedUtterance>& pool,
                             const DomainSchema& schema,
                             const RunOptions& options = {});

// End-to-end pipelines over a fixed train/test split, scored as operations
// exact match against operations compiled from gold annotations.
// Compilation errors on predicted annotations count as misses.
struct EndToEndScore {
  long long utterances = 0;
  long long exact = 0;
  double em = 0.0;
};

// tag -> extract (learned, masked) -> compile_relation_based.
EndToEndScore end_to_end_relation_based(const std::vector<AnnotatedUtterance>& test,
                                        const TaggerModel& tagger,
                                        const PairClassifierModel& re_model,
                                        const DomainSchema& schema,
                                        const ComparatorLexicon& lex);

// tag -> compile_slot_based (no relation extraction).
EndToEndScore end_to_end_slot_based(const std::vector<AnnotatedUtterance>& test,
                                    const TaggerModel& tagger);

// Report JSON: {"spec", "overall", "per_label", "buckets", "counts"}, byte
// stable. Optional CSV for the bucket table.
std::string report_to_json(const MetricsReport& report);
std::string buckets_to_csv(const MetricsReport& report);

}  // namespace relay

#endif  // RELAY_EVAL_HPP_
