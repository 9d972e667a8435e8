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
// Internal: averaged multiclass linear training shared by the BIO tagger
// and the pairwise relation classifier. Single-threaded and fully
// deterministic; final weights are the running average over update steps.

#ifndef RELAY_SRC_AVERAGED_PERCEPTRON_HPP_
#define RELAY_SRC_AVERAGED_PERCEPTRON_HPP_

#include <cmath>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace relay::detail {

class AveragedPerceptron {
 public:
  explicit AveragedPerceptron(std::size_t n_labels) : n_labels_(n_labels) {}

  // Argmax over the allowed label indices using current (non-averaged)
  // weights; ties resolve to the earliest allowed index.
  int predict(const std::vector<std::string>& feats, const std::vector<int>& allowed) const {
    int best = allowed.front();
    double best_score = score(feats, best);
    for (std::size_t i = 1; i < allowed.size(); ++i) {
      double s = score(feats, allowed[i]);
      if (s > best_score) {
        best = allowed[i];
        best_score = s;
      }
    }
    return best;
  }

  double score(const std::vector<std::string>& feats, int label) const {
    double s = 0.0;
    for (const auto& f : feats) {
      auto it = table_.find(f);
      if (it != table_.end()) s += it->second[label].weight;
    }
    return s;
  }

  void update(const std::vector<std::string>& feats, int gold, int guess) {
    if (gold == guess) return;
    for (const auto& f : feats) {
      bump(f, gold, +1.0);
      bump(f, guess, -1.0);
    }
  }

  // Advance the instance clock; call once per training instance.
  void tick() { ++steps_; }

  // Averaged weights, zeros pruned.
  std::unordered_map<std::string, std::vector<double>> averaged() const {
    std::unordered_map<std::string, std::vector<double>> out;
    for (const auto& [feat, cells] : table_) {
      std::vector<double> row(n_labels_, 0.0);
      bool any = false;
      for (std::size_t k = 0; k < n_labels_; ++k) {
        const Cell& c = cells[k];
        double total = c.total + c.weight * static_cast<double>(steps_ - c.stamp);
        double avg = total / static_cast<double>(steps_);
        if (std::fabs(avg) > 1e-12) {
          row[k] = avg;
          any = true;
        }
      }
      if (any) out.emplace(feat, std::move(row));
    }
    return out;
  }

 private:
  struct Cell {
    double weight = 0.0;
    double total = 0.0;   // weight integrated over steps up to `stamp`
    long long stamp = 0;
  };

  void bump(const std::string& feat, int label, double delta) {
    auto [it, inserted] = table_.try_emplace(feat, n_labels_);
    Cell& c = it->second[label];
    c.total += c.weight * static_cast<double>(steps_ - c.stamp);
    c.stamp = steps_;
    c.weight += delta;
  }

  std::size_t n_labels_;
  long long steps_ = 1;
  std::unordered_map<std::string, std::vector<Cell>> table_;
};

// Inference-side scoring over an averaged weight table.
inline double model_score(const std::unordered_map<std::string, std::vector<double>>& weights,
                          const std::vector<std::string>& feats, int label) {
  double s = 0.0;
  for (const auto& f : feats) {
    auto it = weights.find(f);
    if (it != weights.end()) s += it->second[label];
  }
  return s;
}

inline int model_argmax(const std::unordered_map<std::string, std::vector<double>>& weights,
                        const std::vector<std::string>& feats,
                        const std::vector<int>& allowed) {
  int best = allowed.front();
  double best_score = model_score(weights, feats, best);
  for (std::size_t i = 1; i < allowed.size(); ++i) {
    double s = model_score(weights, feats, allowed[i]);
    if (s > best_score) {
      best = allowed[i];
      best_score = s;
    }
  }
  return best;
}

}  // namespace relay::detail

#endif  // RELAY_SRC_AVERAGED_PERCEPTRON_HPP_
