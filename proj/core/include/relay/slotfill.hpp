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
// Slot filling: oracle pass-through of gold spans, and a trainable BIO
// sequence tagger (averaged linear model over window features) for the
// end-to-end experiments.

#ifndef RELAY_SLOTFILL_HPP_
#define RELAY_SLOTFILL_HPP_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "relay/annotation.hpp"

namespace relay {

// BIO tagger. tags holds "O" first, then the B-/I- tags in sorted order.
// Decoding constrains transitions so emitted sequences are always
// well-formed (no I-x after O or after B-y with y != x).
struct TaggerModel {
  int version = 1;
  std::string kind = "slot_tagger";
  std::string domain;
  std::uint64_t seed = 0;
  int epochs = 0;
  std::vector<std::string> tags;
  std::vector<std::string> templates;
  std::unordered_map<std::string, std::vector<double>> weights;  // per tag
  double train_accuracy = 0.0;  // held-in token accuracy after training
};

// Averaged online training over window features (current token, +/-2
// window, previous tag, token shape). Greedy left-to-right with predicted
// history. Deterministic given (corpus, seed, epochs); epochs == 0 leaves
// all weights zero, which decodes to all-O. Throws on an empty corpus.
TaggerModel train_tagger(const std::vector<AnnotatedUtterance>& corpus,
                         std::uint64_t seed, int epochs);

// Tags raw text. Output spans are non-overlapping, in range, and sorted.
std::vector<SlotSpan> tag(const TaggerModel& model, const std::string& text);

// Gold spans unchanged (relation extraction in isolation).
std::vector<SlotSpan> oracle_tag(const AnnotatedUtterance& u);

std::string serialize(const TaggerModel& model);
TaggerModel load_tagger(const std::string& json_text);
TaggerModel load_tagger_file(const std::string& path);

}  // namespace relay

#endif  // RELAY_SLOTFILL_HPP_
