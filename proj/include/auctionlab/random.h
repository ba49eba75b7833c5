// Copyright 2026 The AuctionLab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AUCTIONLAB_RANDOM_H_
#define AUCTIONLAB_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace auctionlab {

// Mixes a list of integers into a 64-bit stream key (SplitMix64 finalizer
// chained over the inputs). Used to give every simulation task its own
// reproducible stream, independent of scheduling.
uint64_t DeriveStreamKey(std::initializer_list<uint64_t> parts);

// A seeded random stream. Draws are a pure function of the seed and the
// sequence of calls made on the stream.
class Stream {
 public:
  explicit Stream(uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double Uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }
  double Normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  bool Bernoulli(double p) { return Uniform() < p; }
  // Uniform on {0, ..., n - 1}; n must be positive.
  uint64_t UniformIndex(uint64_t n) {
    return std::uniform_int_distribution<uint64_t>(0, n - 1)(engine_);
  }

  // Moves a uniformly random k-subset of `items` to the front (partial
  // Fisher-Yates). The first k entries are the sample; order is random.
  template <typename T>
  void ShuffleFront(std::span<T> items, size_t k) {
    for (size_t i = 0; i < k && i + 1 < items.size(); ++i) {
      const size_t j = i + UniformIndex(items.size() - i);
      std::swap(items[i], items[j]);
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace auctionlab

#endif  // AUCTIONLAB_RANDOM_H_
