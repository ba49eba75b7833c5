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

#ifndef AUCTIONLAB_RANDOMIZATION_H_
#define AUCTIONLAB_RANDOMIZATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "auctionlab/instance.h"
#include "auctionlab/random.h"

namespace auctionlab {

enum class SchemeKind {
  kQueryBalanced,
  kQueryBernoulli,
  kPairBalanced,
  kPairBernoulli,
};

// How units are assigned to treatment. Query-level kinds assign every pair
// of a query to the query's arm; pair-level kinds assign pairs on their own.
// Balanced kinds treat exactly floor(pool / 2) units of the pool.
struct RandomizationScheme {
  SchemeKind kind = SchemeKind::kQueryBalanced;
  double p = 0.5;  // Bernoulli kinds only.

  static RandomizationScheme QueryBalanced() { return {SchemeKind::kQueryBalanced}; }
  static RandomizationScheme PairBalanced() { return {SchemeKind::kPairBalanced}; }
  static RandomizationScheme QueryBernoulli(double p) {
    return {SchemeKind::kQueryBernoulli, p};
  }
  static RandomizationScheme PairBernoulli(double p) {
    return {SchemeKind::kPairBernoulli, p};
  }

  bool query_level() const {
    return kind == SchemeKind::kQueryBalanced || kind == SchemeKind::kQueryBernoulli;
  }
  bool balanced() const {
    return kind == SchemeKind::kQueryBalanced || kind == SchemeKind::kPairBalanced;
  }
  // "query_balanced", "pair_bernoulli(0.3)", ...
  std::string Name() const;

  friend bool operator==(const RandomizationScheme&, const RandomizationScheme&) = default;
};

// Z together with the per-pair marginal inclusion probabilities p_i.
struct Assignment {
  std::vector<uint8_t> z;
  std::vector<double> p;
  RandomizationScheme scheme;

  int size() const { return static_cast<int>(z.size()); }
};

absl::Status ValidateScheme(const RandomizationScheme& scheme);

// Accepts the Name() forms; Bernoulli kinds default to p = 0.5 when the
// parenthesised probability is omitted.
absl::StatusOr<RandomizationScheme> ParseScheme(absl::string_view text);

// Number of randomization units the scheme draws over.
int PoolSize(const RandomizationScheme& scheme, const ExperimentInstance& instance);

// Marginal P(Z_i = 1) for every pair under the scheme.
absl::StatusOr<double> MarginalProbability(const RandomizationScheme& scheme,
                                           const ExperimentInstance& instance);

absl::StatusOr<Assignment> DrawAssignment(const RandomizationScheme& scheme,
                                          const ExperimentInstance& instance,
                                          Stream& stream);

// Expands a per-query arm vector to pairs.
Assignment QueryLevelAssignment(const ExperimentInstance& instance,
                                const std::vector<uint8_t>& query_arms,
                                const RandomizationScheme& scheme, double p);

// Every pair assigned to one arm (Z = all-one or all-zero).
Assignment UniformAssignment(const ExperimentInstance& instance, bool treated);

}  // namespace auctionlab

#endif  // AUCTIONLAB_RANDOMIZATION_H_
