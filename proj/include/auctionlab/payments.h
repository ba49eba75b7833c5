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

#ifndef AUCTIONLAB_PAYMENTS_H_
#define AUCTIONLAB_PAYMENTS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "auctionlab/auction.h"
#include "auctionlab/instance.h"

namespace auctionlab {

// Realized payments Y_i(Z) for every pair. Each query runs its own auction
// among the pairs that survived throttling (w_i = 1); a surviving pair bids
// b1 when z_i = 1 and b0 otherwise. Throttled pairs pay nothing.
absl::StatusOr<std::vector<Money>> RealizePayments(
    const ExperimentInstance& instance, std::span<const uint8_t> z,
    std::span<const uint8_t> w, Mechanism mechanism, TieRule tie,
    Stream* stream = nullptr);

// Same as RealizePayments but writes into `out`, reusing its storage.
absl::Status RealizePaymentsInto(const ExperimentInstance& instance,
                                 std::span<const uint8_t> z,
                                 std::span<const uint8_t> w, Mechanism mechanism,
                                 TieRule tie, Stream* stream,
                                 std::vector<Money>& out);

// Total payments of all pairs, or of one advertiser's pairs.
Money TotalRevenue(std::span<const Money> payments);
Money AdvertiserRevenue(const ExperimentInstance& instance,
                        std::span<const Money> payments, int advertiser);

}  // namespace auctionlab

#endif  // AUCTIONLAB_PAYMENTS_H_
