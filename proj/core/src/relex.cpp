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

#include "relay/relex.hpp"

#include <algorithm>
#include <numeric>

#include "relay/errors.hpp"
#include "relay/rng.hpp"
#include "averaged_perceptron.hpp"
#include "model_io.hpp"

namespace relay {

namespace {

// Tokens strictly between two non-overlapping spans.
int span_gap(const SlotSpan& x, const SlotSpan& y) {
  return y.start >= x.end ? y.start - x.end : x.start - y.end;
}

const char* distance_bucket(int gap) {
  if (gap <= 0) return "0";
  if (gap == 1) return "1";
  if (gap == 2) return "2";
  if (gap <= 4) return "3-4";
  return "5+";
}

bool is_conjunction(const std::string& t) { return t == "and" || t == "or" || t == ","; }
bool is_article(const std::string& t) { return t == "a" || t == "an" || t == "the"; }

RelationAssignment empty_assignment(std::size_t n_slots) {
  RelationAssignment assignment;
  int n = static_cast<int>(n_slots);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      assignment.labels.emplace(PairId{i, j}, kNoRelation);
    }
  }
  return assignment;
}

struct TrainingInstance {
  std::vector<std::string> features;
  int gold = 0;
  std::vector<int> allowed;
};

std::vector<int> masked_labels(const DomainSchema& schema,
                               const std::vector<std::string>& labels,
                               const std::string& slot_a, const std::string& slot_b) {
  auto relation = relation_for_pair(schema, slot_a, slot_b);
  std::vector<int> allowed;
  if (relation.has_value()) {
    auto it = std::find(labels.begin(), labels.end(), *relation);
    if (it != labels.end()) allowed.push_back(static_cast<int>(it - labels.begin()));
  }
  allowed.push_back(static_cast<int>(labels.size()) - 1);  // None is last
  return allowed;
}

}  // namespace

RelationAssignment gold_assignment(const AnnotatedUtterance& u) {
  RelationAssignment assignment = empty_assignment(u.slots.size());
  for (const auto& edge : u.relations) {
    assignment.labels[{edge.a, edge.b}] = edge.label;
  }
  return assignment;
}

RelationAssignment heuristic_extract(const std::vector<SlotSpan>& slots,
                                     const DomainSchema& schema) {
  for (const auto& slot : slots) {
    if (!schema.has_slot_type(slot.label)) {
      throw ValidationError("heuristic_extract: unknown slot label '" + slot.label + "'");
    }
  }

  RelationAssignment assignment = empty_assignment(slots.size());
  int n = static_cast<int>(slots.size());
  for (const auto& rule : schema.heuristic_rules) {
    for (int x = 0; x < n; ++x) {
      if (slots[x].label != rule.modifier) continue;
      int best = -1;
      int best_gap = 0;
      const std::string* best_relation = nullptr;
      for (int y = 0; y < n; ++y) {
        if (y == x) continue;
        const HeuristicTarget* target = nullptr;
        for (const auto& t : rule.targets) {
          if (t.modified == slots[y].label) {
            target = &t;
            break;
          }
        }
        if (target == nullptr) continue;
        int gap = span_gap(slots[x], slots[y]);
        // Nearest candidate; an exact tie goes to the candidate after the
        // modifier.
        bool better = best < 0 || gap < best_gap ||
                      (gap == best_gap && slots[y].start > slots[x].start &&
                       slots[best].start < slots[x].start);
        if (better) {
          best = y;
          best_gap = gap;
          best_relation = &target->relation;
        }
      }
      if (best >= 0) {
        PairId pair = x < best ? PairId{x, best} : PairId{best, x};
        assignment.labels[pair] = *best_relation;
      }
    }
  }
  return assignment;
}

std::vector<std::string> pair_features(const PairEncoding& enc, const DomainSchema& schema) {
  (void)schema;  // featurization is schema-independent; masking happens at decode
  std::vector<std::string> feats;
  feats.reserve(enc.between.size() + enc.pattern.size() + 10);
  feats.push_back("pl=" + enc.first_label + "|" + enc.second_label);
  feats.push_back(std::string("d=") + distance_bucket(enc.gap));
  bool conj = false;
  bool art = false;
  for (const auto& t : enc.between) {
    feats.push_back("bt=" + t);
    conj = conj || is_conjunction(t);
    art = art || is_article(t);
  }
  if (conj) feats.push_back("conj");
  if (art) feats.push_back("art");
  feats.push_back("l<=" + enc.before_first);
  feats.push_back("l>=" + enc.after_first);
  feats.push_back("r<=" + enc.before_second);
  feats.push_back("r>=" + enc.after_second);
  std::string pattern;
  for (const auto& label : enc.pattern) {
    if (!pattern.empty()) pattern += '+';
    pattern += label;
  }
  feats.push_back("pat=" + pattern);
  return feats;
}

PairClassifierModel train_pair_classifier(const std::vector<AnnotatedUtterance>& corpus,
                                          const DomainSchema& schema,
                                          std::uint64_t seed, int epochs) {
  if (corpus.empty()) throw ValidationError("train_pair_classifier: empty corpus");

  PairClassifierModel model;
  model.seed = seed;
  model.epochs = epochs;
  model.domain = schema.domain;
  model.templates = {"pair_labels", "distance", "between_bag",
                     "boundary_tokens", "conj_art", "pattern"};
  for (const auto& r : schema.relation_types) model.labels.push_back(r);
  std::sort(model.labels.begin(), model.labels.end());
  model.labels.push_back(kNoRelation);  // None last; ties resolve away from it
  const int none_index = static_cast<int>(model.labels.size()) - 1;

  std::unordered_map<std::string, int> label_index;
  for (std::size_t k = 0; k < model.labels.size(); ++k) {
    label_index[model.labels[k]] = static_cast<int>(k);
  }

  std::vector<TrainingInstance> instances;
  for (const auto& u : corpus) {
    RelationAssignment gold = gold_assignment(u);
    for (const PairId& pair : enumerate_slot_pairs(u)) {
      TrainingInstance inst;
      inst.features = pair_features(encode_pair(u, pair), schema);
      auto it = label_index.find(gold.at(pair));
      if (it == label_index.end()) {
        throw ValidationError("train_pair_classifier: utterance '" + u.id +
                              "' carries relation '" + gold.at(pair) +
                              "' not in schema '" + schema.domain + "'");
      }
      inst.gold = it->second;
      inst.allowed = masked_labels(schema, model.labels,
                                   u.slots[pair.first].label, u.slots[pair.second].label);
      instances.push_back(std::move(inst));
    }
  }
  if (instances.empty()) {
    // Corpora of 0/1-slot utterances have nothing to learn from; the model
    // stays empty and predicts None everywhere under the mask.
    model.train_accuracy = 1.0;
    (void)none_index;
    return model;
  }

  detail::AveragedPerceptron trainer(model.labels.size());
  Rng rng(seed);
  std::vector<std::size_t> order(instances.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t idx : order) {
      const TrainingInstance& inst = instances[idx];
      int guess = trainer.predict(inst.features, inst.allowed);
      trainer.update(inst.features, inst.gold, guess);
      trainer.tick();
    }
  }
  model.weights = trainer.averaged();

  long long correct = 0;
  for (const auto& inst : instances) {
    if (detail::model_argmax(model.weights, inst.features, inst.allowed) == inst.gold) {
      ++correct;
    }
  }
  model.train_accuracy = static_cast<double>(correct) / static_cast<double>(instances.size());
  return model;
}

RelationAssignment extract_learned(const PairClassifierModel& model,
                                   const AnnotatedUtterance& u,
                                   const DomainSchema& schema, bool schema_mask) {
  if (model.labels.empty()) {
    throw ValidationError("extract_learned: untrained model");
  }
  RelationAssignment assignment = empty_assignment(u.slots.size());
  std::vector<int> all_labels(model.labels.size());
  std::iota(all_labels.begin(), all_labels.end(), 0);
  for (const PairId& pair : enumerate_slot_pairs(u)) {
    std::vector<std::string> feats = pair_features(encode_pair(u, pair), schema);
    std::vector<int> allowed =
        schema_mask ? masked_labels(schema, model.labels,
                                    u.slots[pair.first].label, u.slots[pair.second].label)
                    : all_labels;
    int guess = detail::model_argmax(model.weights, feats, allowed);
    assignment.labels[pair] = model.labels[guess];
  }
  return assignment;
}

std::string serialize(const PairClassifierModel& model) {
  detail::ModelHeader header{model.version, model.kind,   model.domain,
                             model.seed,    model.epochs, model.train_accuracy};
  return detail::model_to_json(header, model.labels, model.templates, model.weights).dump() +
         "\n";
}

PairClassifierModel load_pair_classifier(const std::string& json_text) {
  detail::ParsedModel parsed = detail::model_from_json(json_text, "pair_classifier");
  PairClassifierModel model;
  model.version = parsed.header.version;
  model.domain = parsed.header.domain;
  model.seed = parsed.header.seed;
  model.epochs = parsed.header.epochs;
  model.train_accuracy = parsed.header.train_accuracy;
  model.labels = std::move(parsed.labels);
  model.templates = std::move(parsed.templates);
  model.weights = std::move(parsed.weights);
  return model;
}

PairClassifierModel load_pair_classifier_file(const std::string& path) {
  return load_pair_classifier(detail::read_text_file(path));
}

}  // namespace relay
