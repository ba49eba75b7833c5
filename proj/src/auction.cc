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

#include "auctionlab/auction.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace auctionlab {

absl::StatusOr<AuctionOutcome> RunAuction(std::span<const Bid> bids,
                                          Mechanism mechanism, TieRule tie,
                                          Stream* stream) {
  for (const Bid& b : bids) {
    if (!std::isfinite(b.amount) || b.amount < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("bid for pair ", b.pair, " must be finite and >= 0, got ",
                       b.amount));
    }
  }
  if (tie == TieRule::kSeededRandom && stream == nullptr) {
    return absl::InvalidArgumentError("seeded_random tie rule needs a stream");
  }

  AuctionOutcome out;
  out.payments.assign(bids.size(), 0.0);
  if (bids.empty()) return out;

  size_t best = 0;
  int ties = 1;
  for (size_t i = 1; i < bids.size(); ++i) {
    if (bids[i].amount > bids[best].amount) {
      best = i;
      ties = 1;
    } else if (bids[i].amount == bids[best].amount) {
      ++ties;
      if (tie == TieRule::kLowestId) {
        if (bids[i].pair < bids[best].pair) best = i;
      } else if (stream->UniformIndex(ties) == 0) {
        // Reservoir choice keeps every tied bidder equally likely.
        best = i;
      }
    }
  }

  Money price = bids[best].amount;
  if (mechanism == Mechanism::kSecondPrice && bids.size() > 1) {
    Money second = 0.0;
    for (size_t i = 0; i < bids.size(); ++i) {
      if (i != best) second = std::max(second, bids[i].amount);
    }
    price = second;
  }
  out.winner = bids[best].pair;
  out.price = price;
  out.payments[best] = price;
  return out;
}

absl::string_view MechanismName(Mechanism m) {
  return m == Mechanism::kFirstPrice ? "first_price" : "second_price";
}

absl::string_view TieRuleName(TieRule t) {
  return t == TieRule::kLowestId ? "lowest_id" : "seeded_random";
}

absl::StatusOr<Mechanism> ParseMechanism(absl::string_view name) {
  if (name == "first_price") return Mechanism::kFirstPrice;
  if (name == "second_price") return Mechanism::kSecondPrice;
  return absl::InvalidArgumentError(absl::StrCat("unknown mechanism '", name, "'"));
}

absl::StatusOr<TieRule> ParseTieRule(absl::string_view name) {
  if (name == "lowest_id") return TieRule::kLowestId;
  if (name == "seeded_random") return TieRule::kSeededRandom;
  return absl::InvalidArgumentError(absl::StrCat("unknown tie rule '", name, "'"));
}

}  // namespace auctionlab
