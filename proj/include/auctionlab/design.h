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

#ifndef AUCTIONLAB_DESIGN_H_
#define AUCTIONLAB_DESIGN_H_

#include "absl/status/statusor.h"
#include "auctionlab/auction.h"
#include "auctionlab/estimation.h"
#include "auctionlab/instance.h"
#include "auctionlab/randomization.h"
#include "auctionlab/throttling.h"
#include "json.hpp"

namespace auctionlab {

// Everything that defines one experiment on a fixed instance.
struct ExperimentDesign {
  RandomizationScheme scheme = RandomizationScheme::QueryBalanced();
  QuotaConfig quota;
  ThrottleKind throttle = ThrottleKind::kStandard;
  Mechanism mechanism = Mechanism::kFirstPrice;
  TieRule tie = TieRule::kLowestId;
  WeightingConvention convention = WeightingConvention::kHorvitzThompson;
};

// {"scheme": "query_balanced", "quota": {...}, "throttle": "standard",
//  "mechanism": "first_price", "tie": "lowest_id",
//  "convention": "horvitz_thompson"}; every key is optional.
absl::StatusOr<ExperimentDesign> DesignFromJson(const nlohmann::json& j,
                                                const ExperimentInstance& instance);
nlohmann::json DesignToJson(const ExperimentDesign& design);

}  // namespace auctionlab

#endif  // AUCTIONLAB_DESIGN_H_
