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

#include "auctionlab/potential_bids.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace auctionlab {

absl::StatusOr<PotentialBids> DrawPotentialBids(const BidDistributionConfig& config,
                                                int n_pairs, Stream& stream) {
  if (!(config.v > 0.0) || !std::isfinite(config.v)) {
    return absl::InvalidArgumentError(
        absl::StrCat("log-bid variance v must be > 0, got ", config.v));
  }
  if (n_pairs < 1) return absl::InvalidArgumentError("need at least one pair");
  const double sd = std::sqrt(config.v);
  PotentialBids out;
  out.b0.resize(n_pairs);
  out.b1.resize(n_pairs);
  for (int i = 0; i < n_pairs; ++i) {
    const double g0 = stream.Normal();
    const double g1 =
        config.coupling == BidCoupling::kCommonDraw ? g0 : stream.Normal();
    out.b0[i] = std::exp(config.mu0 + sd * g0);
    out.b1[i] = std::exp(config.mu1 + sd * g1);
  }
  return out;
}

absl::string_view CouplingName(BidCoupling c) {
  return c == BidCoupling::kCommonDraw ? "common_draw" : "independent";
}

absl::StatusOr<BidCoupling> ParseCoupling(absl::string_view name) {
  if (name == "common_draw") return BidCoupling::kCommonDraw;
  if (name == "independent") return BidCoupling::kIndependent;
  return absl::InvalidArgumentError(absl::StrCat("unknown coupling '", name, "'"));
}

}  // namespace auctionlab
