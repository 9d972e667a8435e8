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

#include "relay/slotfill.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "relay/errors.hpp"
#include "relay/rng.hpp"
#include "averaged_perceptron.hpp"
#include "model_io.hpp"

namespace relay {

namespace {

constexpr const char* kOutside = "O";
constexpr const char* kStartTag = "-";  // previous-tag feature at position 0

const std::vector<std::string> kTemplates = {
    "bias", "w0", "w-1", "w-2", "w+1", "w+2", "prev_tag", "shape0"};

// Character-class shape with runs collapsed: "2018" -> "d", "a4" -> "xd".
std::string shape(const std::string& token) {
  std::string out;
  char prev = 0;
  for (unsigned char c : token) {
    char cls;
    if (std::isdigit(c)) {
      cls = 'd';
    } else if (std::isalpha(c)) {
      cls = 'x';
    } else {
      cls = static_cast<char>(c);
    }
    if (cls != prev) out.push_back(cls);
    prev = cls;
  }
  return out;
}

void token_features(const std::vector<std::string>& tokens, std::size_t i,
                    const std::string& prev_tag, std::vector<std::string>& out) {
  out.clear();
  auto at = [&](long k) -> const std::string& {
    static const std::string bos = "<s>";
    static const std::string eos = "</s>";
    if (k < 0) return bos;
    if (k >= static_cast<long>(tokens.size())) return eos;
    return tokens[k];
  };
  long idx = static_cast<long>(i);
  out.push_back("b");
  out.push_back("w0=" + tokens[i]);
  out.push_back("w-1=" + at(idx - 1));
  out.push_back("w-2=" + at(idx - 2));
  out.push_back("w+1=" + at(idx + 1));
  out.push_back("w+2=" + at(idx + 2));
  out.push_back("p=" + prev_tag);
  out.push_back("sh=" + shape(tokens[i]));
}

std::vector<std::string> gold_tags(const AnnotatedUtterance& u) {
  std::vector<std::string> tags(u.tokens.size(), kOutside);
  for (const auto& slot : u.slots) {
    for (int t = slot.start; t < slot.end && t < static_cast<int>(tags.size()); ++t) {
      tags[t] = (t == slot.start ? "B-" : "I-") + slot.label;
    }
  }
  return tags;
}

// Tag indices reachable from prev: O and every B-x always, I-x only when it
// continues the same slot label. This is what keeps decodes well-formed.
std::vector<int> allowed_tags(const std::vector<std::string>& tags, const std::string& prev) {
  std::vector<int> allowed;
  std::string continuing;
  if (prev.size() > 2 && (prev[0] == 'B' || prev[0] == 'I') && prev[1] == '-') {
    continuing = "I-" + prev.substr(2);
  }
  for (std::size_t k = 0; k < tags.size(); ++k) {
    const std::string& t = tags[k];
    if (t.rfind("I-", 0) == 0) {
      if (t == continuing) allowed.push_back(static_cast<int>(k));
    } else {
      allowed.push_back(static_cast<int>(k));
    }
  }
  return allowed;
}

std::vector<std::string> decode(const TaggerModel& model,
                                const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  std::string prev = kStartTag;
  std::vector<std::string> feats;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    token_features(tokens, i, prev, feats);
    int guess = detail::model_argmax(model.weights, feats, allowed_tags(model.tags, prev));
    prev = model.tags[guess];
    out.push_back(prev);
  }
  return out;
}

std::vector<SlotSpan> spans_from_tags(const std::vector<std::string>& tokens,
                                      const std::vector<std::string>& tags) {
  std::vector<SlotSpan> spans;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i].rfind("B-", 0) != 0) continue;
    SlotSpan span;
    span.label = tags[i].substr(2);
    span.start = static_cast<int>(i);
    std::size_t j = i + 1;
    while (j < tags.size() && tags[j] == "I-" + span.label) ++j;
    span.end = static_cast<int>(j);
    std::string value;
    for (int t = span.start; t < span.end; ++t) {
      if (!value.empty()) value += ' ';
      value += tokens[t];
    }
    span.value = std::move(value);
    spans.push_back(std::move(span));
    i = j - 1;
  }
  return spans;
}

double token_accuracy(const TaggerModel& model,
                      const std::vector<AnnotatedUtterance>& corpus) {
  long long correct = 0, total = 0;
  for (const auto& u : corpus) {
    std::vector<std::string> gold = gold_tags(u);
    std::vector<std::string> pred = decode(model, u.tokens);
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (gold[i] == pred[i]) ++correct;
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace

TaggerModel train_tagger(const std::vector<AnnotatedUtterance>& corpus,
                         std::uint64_t seed, int epochs) {
  if (corpus.empty()) throw ValidationError("train_tagger: empty corpus");

  TaggerModel model;
  model.seed = seed;
  model.epochs = epochs;
  model.domain = corpus.front().domain;
  model.templates = kTemplates;

  std::set<std::string> labels;
  for (const auto& u : corpus) {
    for (const auto& slot : u.slots) labels.insert(slot.label);
  }
  model.tags.push_back(kOutside);
  for (const auto& label : labels) model.tags.push_back("B-" + label);
  for (const auto& label : labels) model.tags.push_back("I-" + label);
  std::sort(model.tags.begin() + 1, model.tags.end());

  std::unordered_map<std::string, int> tag_index;
  for (std::size_t k = 0; k < model.tags.size(); ++k) {
    tag_index[model.tags[k]] = static_cast<int>(k);
  }

  detail::AveragedPerceptron trainer(model.tags.size());
  Rng rng(seed);
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);

  std::vector<std::string> feats;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t idx : order) {
      const AnnotatedUtterance& u = corpus[idx];
      std::vector<std::string> gold = gold_tags(u);
      std::string prev = kStartTag;
      for (std::size_t i = 0; i < u.tokens.size(); ++i) {
        token_features(u.tokens, i, prev, feats);
        int guess = trainer.predict(feats, allowed_tags(model.tags, prev));
        int target = tag_index.at(gold[i]);
        trainer.update(feats, target, guess);
        trainer.tick();
        prev = model.tags[guess];  // predicted history, as at inference
      }
    }
  }

  model.weights = trainer.averaged();
  model.train_accuracy = token_accuracy(model, corpus);
  return model;
}

std::vector<SlotSpan> tag(const TaggerModel& model, const std::string& text) {
  std::vector<std::string> tokens = tokenize(text);
  if (tokens.empty()) return {};
  return spans_from_tags(tokens, decode(model, tokens));
}

std::vector<SlotSpan> oracle_tag(const AnnotatedUtterance& u) { return u.slots; }

std::string serialize(const TaggerModel& model) {
  detail::ModelHeader header{model.version, model.kind,   model.domain,
                             model.seed,    model.epochs, model.train_accuracy};
  return detail::model_to_json(header, model.tags, model.templates, model.weights).dump() +
         "\n";
}

TaggerModel load_tagger(const std::string& json_text) {
  detail::ParsedModel parsed = detail::model_from_json(json_text, "slot_tagger");
  TaggerModel model;
  model.version = parsed.header.version;
  model.domain = parsed.header.domain;
  model.seed = parsed.header.seed;
  model.epochs = parsed.header.epochs;
  model.train_accuracy = parsed.header.train_accuracy;
  model.tags = std::move(parsed.labels);
  model.templates = std::move(parsed.templates);
  model.weights = std::move(parsed.weights);
  return model;
}

TaggerModel load_tagger_file(const std::string& path) {
  return load_tagger(detail::read_text_file(path));
}

}  // namespace relay
