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

#include "auctionlab/payments.h"

#include <algorithm>

#include "absl/strings/str_cat.h"

namespace auctionlab {

absl::Status RealizePaymentsInto(const ExperimentInstance& instance,
                                 std::span<const uint8_t> z,
                                 std::span<const uint8_t> w, Mechanism mechanism,
                                 TieRule tie, Stream* stream,
                                 std::vector<Money>& out) {
  const size_t n = instance.num_pairs();
  if (z.size() != n || w.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "assignment and mask need ", n, " entries, got ", z.size(), " and ",
        w.size()));
  }
  if (tie == TieRule::kSeededRandom && stream == nullptr) {
    return absl::InvalidArgumentError("seeded_random tie rule needs a stream");
  }
  out.assign(n, 0.0);
  for (int q = 0; q < instance.num_queries(); ++q) {
    int best = -1;
    int ties = 0;
    Money best_bid = 0.0;
    Money second_bid = 0.0;
    int bidders = 0;
    for (int i : instance.pairs_of_query(q)) {
      if (!w[i]) continue;
      const Pair& p = instance.pair(i);
      const Money bid = z[i] ? p.b1 : p.b0;
      ++bidders;
      if (best < 0 || bid > best_bid) {
        if (best >= 0) second_bid = best_bid;
        best = i;
        best_bid = bid;
        ties = 1;
      } else if (bid == best_bid) {
        second_bid = bid;
        ++ties;
        if (tie == TieRule::kLowestId) {
          best = std::min(best, i);
        } else if (stream->UniformIndex(ties) == 0) {
          best = i;
        }
      } else {
        second_bid = std::max(second_bid, bid);
      }
    }
    if (best < 0) continue;
    out[best] = (mechanism == Mechanism::kSecondPrice && bidders > 1) ? second_bid
                                                                      : best_bid;
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<Money>> RealizePayments(
    const ExperimentInstance& instance, std::span<const uint8_t> z,
    std::span<const uint8_t> w, Mechanism mechanism, TieRule tie,
    Stream* stream) {
  std::vector<Money> out;
  if (auto s = RealizePaymentsInto(instance, z, w, mechanism, tie, stream, out);
      !s.ok()) {
    return s;
  }
  return out;
}

Money TotalRevenue(std::span<const Money> payments) {
  Money total = 0.0;
  for (Money y : payments) total += y;
  return total;
}

Money AdvertiserRevenue(const ExperimentInstance& instance,
                        std::span<const Money> payments, int advertiser) {
  Money total = 0.0;
  for (int i : instance.pairs_of_advertiser(advertiser)) total += payments[i];
  return total;
}

}  // namespace auctionlab
