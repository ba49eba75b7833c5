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

#ifndef AUCTIONLAB_POTENTIAL_BIDS_H_
#define AUCTIONLAB_POTENTIAL_BIDS_H_

#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "auctionlab/auction.h"
#include "auctionlab/random.h"

namespace auctionlab {

// kCommonDraw reuses one standard normal for both potential bids of a pair
// (common random numbers); kIndependent draws them separately.
enum class BidCoupling { kCommonDraw, kIndependent };

// Lognormal potential bids: log B(0) ~ N(mu0, v) and log B(1) ~ N(mu1, v).
// `v` is the variance of the log bid, not its standard deviation.
struct BidDistributionConfig {
  double mu0 = 1.0;
  double mu1 = 1.0;
  double v = 0.1;
  BidCoupling coupling = BidCoupling::kCommonDraw;
};

struct PotentialBids {
  std::vector<Money> b0;
  std::vector<Money> b1;
};

absl::StatusOr<PotentialBids> DrawPotentialBids(const BidDistributionConfig& config,
                                                int n_pairs, Stream& stream);

absl::string_view CouplingName(BidCoupling c);
absl::StatusOr<BidCoupling> ParseCoupling(absl::string_view name);

}  // namespace auctionlab

#endif  // AUCTIONLAB_POTENTIAL_BIDS_H_
