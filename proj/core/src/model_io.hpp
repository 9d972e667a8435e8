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
// Internal: shared JSON weight-map persistence for the tagger and the pair
// classifier. Weights serialize as [feature, label, weight] triples sorted
// by (feature, label) so identical models are byte-identical on disk.

#ifndef RELAY_SRC_MODEL_IO_HPP_
#define RELAY_SRC_MODEL_IO_HPP_

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "relay/errors.hpp"

namespace relay::detail {

struct ModelHeader {
  int version;
  std::string kind;
  std::string domain;
  std::uint64_t seed;
  int epochs;
  double train_accuracy;
};

inline nlohmann::ordered_json model_to_json(
    const ModelHeader& header, const std::vector<std::string>& labels,
    const std::vector<std::string>& templates,
    const std::unordered_map<std::string, std::vector<double>>& weights) {
  nlohmann::ordered_json j;
  j["version"] = header.version;
  j["kind"] = header.kind;
  j["domain"] = header.domain;
  j["seed"] = header.seed;
  j["epochs"] = header.epochs;
  j["templates"] = templates;
  j["labels"] = labels;
  j["train_accuracy"] = header.train_accuracy;

  std::vector<std::pair<std::string, int>> keys;
  for (const auto& [feat, row] : weights) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] != 0.0) keys.emplace_back(feat, static_cast<int>(k));
    }
  }
  std::sort(keys.begin(), keys.end());
  nlohmann::ordered_json triples = nlohmann::ordered_json::array();
  for (const auto& [feat, k] : keys) {
    triples.push_back({feat, labels[k], weights.at(feat)[k]});
  }
  j["weights"] = std::move(triples);
  return j;
}

struct ParsedModel {
  ModelHeader header;
  std::vector<std::string> labels;
  std::vector<std::string> templates;
  std::unordered_map<std::string, std::vector<double>> weights;
};

inline ParsedModel model_from_json(const std::string& text, const std::string& expected_kind) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  ParsedModel m;
  try {
    m.header.version = j.at("version").get<int>();
    m.header.kind = j.at("kind").get<std::string>();
    if (m.header.kind != expected_kind) {
      throw ValidationError("model: expected kind '" + expected_kind + "', found '" +
                            m.header.kind + "'");
    }
    m.header.domain = j.value("domain", std::string());
    m.header.seed = j.at("seed").get<std::uint64_t>();
    m.header.epochs = j.value("epochs", 0);
    m.header.train_accuracy = j.value("train_accuracy", 0.0);
    m.labels = j.at("labels").get<std::vector<std::string>>();
    m.templates = j.value("templates", std::vector<std::string>());

    std::unordered_map<std::string, int> label_index;
    for (std::size_t k = 0; k < m.labels.size(); ++k) {
      label_index[m.labels[k]] = static_cast<int>(k);
    }
    for (const auto& triple : j.at("weights")) {
      const std::string feat = triple.at(0).get<std::string>();
      const std::string label = triple.at(1).get<std::string>();
      double w = triple.at(2).get<double>();
      auto it = label_index.find(label);
      if (it == label_index.end()) {
        throw ValidationError("model: weight references unknown label '" + label + "'");
      }
      auto [row_it, inserted] = m.weights.try_emplace(feat, m.labels.size(), 0.0);
      row_it->second[it->second] = w;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  return m;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace relay::detail

#endif  // RELAY_SRC_MODEL_IO_HPP_
