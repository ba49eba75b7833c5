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

#ifndef AUCTIONLAB_INSTANCE_H_
#define AUCTIONLAB_INSTANCE_H_

#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "auctionlab/auction.h"
#include "json.hpp"

namespace auctionlab {

// One eligible (query, advertiser) pair with its potential bids under
// control (b0) and treatment (b1) and a binary covariate x.
struct Pair {
  int query = 0;
  int advertiser = 0;
  Money b0 = 0.0;
  Money b1 = 0.0;
  int x = 1;
};

// The fixed world an experiment runs on. Pairs keep their input order; the
// instance adds per-query and per-advertiser indexes over them.
//
// Invariants: every (query, advertiser) is unique, bids are finite and
// non-negative, x is 0 or 1 and every query has at least one pair.
// Advertiser ids are dense: num_advertisers() is one past the largest id,
// and an advertiser may have no pairs.
class ExperimentInstance {
 public:
  static absl::StatusOr<ExperimentInstance> Create(int num_queries,
                                                   std::vector<Pair> pairs);

  // Every advertiser eligible for every query; bids zero, x all one.
  static ExperimentInstance FullyEligible(int num_queries, int num_advertisers);

  int num_queries() const { return num_queries_; }
  int num_pairs() const { return static_cast<int>(pairs_.size()); }
  int num_advertisers() const { return num_advertisers_; }
  const std::vector<Pair>& pairs() const { return pairs_; }
  const Pair& pair(int i) const { return pairs_[i]; }

  std::span<const int> pairs_of_query(int q) const {
    return Slice(query_index_, query_offsets_, q);
  }
  std::span<const int> pairs_of_advertiser(int a) const {
    return Slice(advertiser_index_, advertiser_offsets_, a);
  }
  // N_q[a].
  int eligible_queries(int a) const {
    return static_cast<int>(pairs_of_advertiser(a).size());
  }
  // N(x=1).
  int covariate_count() const;

  absl::Status SetPotentialBids(std::span<const Money> b0,
                                std::span<const Money> b1);
  absl::Status SetCovariates(std::span<const int> x);

 private:
  static std::span<const int> Slice(const std::vector<int>& index,
                                    const std::vector<int>& offsets, int k) {
    return std::span<const int>(index).subspan(offsets[k],
                                               offsets[k + 1] - offsets[k]);
  }

  int num_queries_ = 0;
  int num_advertisers_ = 0;
  std::vector<Pair> pairs_;
  std::vector<int> query_offsets_, query_index_;
  std::vector<int> advertiser_offsets_, advertiser_index_;
};

// Single query, K identical bidders: b0 = R0 and b1 = R1 for all, R1 > R0 > 0.
absl::StatusOr<ExperimentInstance> BuildIdenticalBidders(int k, Money r0,
                                                         Money r1);

// Single query where every treated bid beats every control bid and treated
// bids are strictly decreasing in the bidder index.
absl::StatusOr<ExperimentInstance> BuildDominatingTreatment(
    std::span<const Money> b0, std::span<const Money> b1);

// JSON document: {"queries": N_q, "pairs": [{"q","a","b0","b1","x"}, ...]}.
// Doubles are written with round-trip precision so fixtures are bit-exact.
nlohmann::json InstanceToJson(const ExperimentInstance& instance);
absl::StatusOr<ExperimentInstance> InstanceFromJson(const nlohmann::json& j);

}  // namespace auctionlab

#endif  // AUCTIONLAB_INSTANCE_H_
