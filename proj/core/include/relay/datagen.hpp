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
// Seeded synthetic corpus generation for the three bundled domains, with a
// controllable slot-count distribution and ambiguity rate, parallel
// dual-scheme stocks annotation, and held-out (zero-shot) splits.

#ifndef RELAY_DATAGEN_HPP_
#define RELAY_DATAGEN_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "relay/annotation.hpp"
#include "relay/schema.hpp"

namespace relay {

struct SplitCounts {
  int train = 0;
  int dev = 0;
  int test = 0;

  int total() const { return train + dev + test; }
};

struct GeneratorConfig {
  std::string domain;
  SplitCounts counts;          // default: bundled per-domain sizes
  std::uint64_t seed = 42;
  // Distribution over slot counts for unambiguous utterances. Ambiguous
  // utterances (whose gold relations contradict the nearest-candidate
  // heuristic) draw from the template pool's own count distribution, since
  // one- and two-slot utterances cannot be ambiguous.
  std::map<int, double> slot_count_dist;
  // Fraction of utterances per split whose gold relations the heuristic
  // cannot reproduce. Realized exactly (rounded per split).
  double ambiguity_rate = 0.0;
};

// Per-domain defaults: the bundled dataset sizes, slot-count distribution,
// and ambiguity rate (0.15 for food_order and gaming, 0.01 for stocks,
// which stays deliberately heuristic-friendly).
GeneratorConfig default_generator_config(const std::string& domain);

struct Corpus {
  std::vector<AnnotatedUtterance> train;
  std::vector<AnnotatedUtterance> dev;
  std::vector<AnnotatedUtterance> test;

  std::vector<AnnotatedUtterance> all() const;
};

// food_order and gaming produce one scheme ("default"); stocks produces
// parallel "relation_based" and "slot_based" corpora over identical texts
// and ids.
struct GeneratedCorpus {
  std::string domain;
  std::vector<std::pair<std::string, Corpus>> schemes;
  std::string manifest_json;  // config, seed, template hash, realized stats

  const Corpus& scheme(const std::string& name) const;
};

// Deterministic given (config, seed). Every emitted utterance passes
// validate() against its scheme's schema. Patterns are sampled first, then
// an utterance per pattern. Throws ValidationError when requested counts
// exceed template/gazetteer capacity. For stocks, `schema` is the
// relation-based schema.
GeneratedCorpus generate(const GeneratorConfig& config, const DomainSchema& schema);

// The published example sentences, annotated, as fixed fixtures. Recognized
// domains: "food_order", "gaming", "stocks" (relation-based), and
// "stocks_slot_based". Stocks fixtures share ids across schemes. These are
// also seeded at the head of every generated test split.
std::vector<AnnotatedUtterance> paper_fixtures(const std::string& domain);

// A held-out construct for zero-shot splits: either a slot type or an
// unordered slot-type pair (the relation between them).
struct HeldOut {
  enum class Kind { slot, pair };
  Kind kind = Kind::slot;
  std::string a;
  std::string b;  // pair only

  static HeldOut slot(std::string label);
  static HeldOut pair(std::string x, std::string y);
};

// True if the utterance exhibits the construct: carries the slot type, or
// carries a relation on the slot-type pair.
bool exhibits(const AnnotatedUtterance& u, const HeldOut& held_out);

struct ZeroShotSplit {
  std::vector<AnnotatedUtterance> train;  // all non-exhibitors + exactly k exhibitors
  std::vector<AnnotatedUtterance> test;   // test_size exhibitors, disjoint from train
};

// Deterministic given seed. Throws ValidationError when the pool holds
// fewer than k + test_size exhibitors.
ZeroShotSplit make_zero_shot_split(const std::vector<AnnotatedUtterance>& pool,
                                   const HeldOut& held_out, int k, int test_size,
                                   std::uint64_t seed);

}  // namespace relay

#endif  // RELAY_DATAGEN_HPP_
