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

#ifndef AUCTIONLAB_AUCTION_H_
#define AUCTIONLAB_AUCTION_H_

#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "auctionlab/random.h"

namespace auctionlab {

using Money = double;

enum class Mechanism { kFirstPrice, kSecondPrice };

// How equal top bids are resolved. kSeededRandom picks uniformly among the
// tied bidders using the caller's stream.
enum class TieRule { kLowestId, kSeededRandom };

struct Bid {
  int pair = 0;
  Money amount = 0.0;
};

// Result of a single sealed-bid auction. `payments` is aligned with the
// input bids: only the winner's entry may be nonzero and it equals `price`.
struct AuctionOutcome {
  std::optional<int> winner;
  Money price = 0.0;
  std::vector<Money> payments;
};

// Runs one auction. The winner holds a maximal bid; a first-price winner
// pays its bid, a second-price winner pays the highest other bid (its own
// bid when it is the only bidder). Zero bids participate. `stream` is
// required for TieRule::kSeededRandom.
absl::StatusOr<AuctionOutcome> RunAuction(std::span<const Bid> bids,
                                          Mechanism mechanism, TieRule tie,
                                          Stream* stream = nullptr);

absl::string_view MechanismName(Mechanism m);
absl::string_view TieRuleName(TieRule t);
absl::StatusOr<Mechanism> ParseMechanism(absl::string_view name);
absl::StatusOr<TieRule> ParseTieRule(absl::string_view name);

}  // namespace auctionlab

#endif  // AUCTIONLAB_AUCTION_H_
