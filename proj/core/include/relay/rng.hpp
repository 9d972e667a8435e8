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

#ifndef RELAY_RNG_HPP_
#define RELAY_RNG_HPP_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace relay {

// Seeded RNG with explicit draw arithmetic. std::mt19937_64's output stream
// is pinned by the standard, but the standard distributions are not, so all
// derived draws (indices, reals, shuffles) are implemented here to keep
// corpora and models byte-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform index in [0, n). n must be > 0.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

  // Uniform real in [0, 1), 53-bit resolution.
  double real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

  // Fisher-Yates.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace relay

#endif  // RELAY_RNG_HPP_
