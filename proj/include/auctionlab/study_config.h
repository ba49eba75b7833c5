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

#ifndef AUCTIONLAB_STUDY_CONFIG_H_
#define AUCTIONLAB_STUDY_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "auctionlab/auction.h"
#include "auctionlab/estimation.h"
#include "auctionlab/fraction.h"
#include "auctionlab/potential_bids.h"
#include "auctionlab/randomization.h"
#include "auctionlab/throttling.h"
#include "json.hpp"

namespace auctionlab {

inline constexpr int kStudySchemaVersion = 1;

// Bid treatments shift the treated bid distribution. Quota treatments leave
// bids alone (b1 = b0) and drop treated pairs whose covariate is 0.
enum class TreatmentType { kBid, kQuota };

// Where the quota-treatment covariate x is drawn: once per query (shared by
// its pairs) or independently per pair.
enum class CovariateLevel { kQuery, kPair };

// A grid of simulation scenarios. Every advertiser is eligible for every
// query. Bid scenarios span n_queries x quota_fractions x mu1; quota
// scenarios span n_queries x quota_fractions x p_x.
struct StudyConfig {
  int schema_version = kStudySchemaVersion;
  uint64_t master_seed = 1;
  int n_advertisers = 3;
  std::vector<int> n_queries = {90, 120, 150};
  std::vector<Fraction> quota_fractions = {{1, 3}, {2, 3}};
  double mu0 = 1.0;
  double v = 0.1;
  std::vector<double> mu1 = {1.05, 1.1, 2.0};
  std::vector<double> p_x = {0.1, 0.5, 0.9};
  std::vector<TreatmentType> treatment_types = {TreatmentType::kBid};
  std::vector<RandomizationScheme> schemes = {RandomizationScheme::QueryBalanced(),
                                              RandomizationScheme::PairBalanced()};
  std::vector<QuotaMode> throttle_modes = {QuotaMode::kJoint};
  Mechanism mechanism = Mechanism::kFirstPrice;
  TieRule tie_rule = TieRule::kLowestId;
  WeightingConvention convention = WeightingConvention::kHorvitzThompson;
  BidCoupling coupling = BidCoupling::kCommonDraw;
  CovariateLevel covariate_level = CovariateLevel::kQuery;
  int n_bid_draws = 200;
  int n_assignments_per_draw = 100;
  int n_mc_tau_star = 2000;
  bool coupled_tau_star_masks = false;

  friend bool operator==(const StudyConfig&, const StudyConfig&) = default;
};

// Checks ranges and that every quota fraction times every N_q is an
// integer (and even when split throttling is requested).
absl::Status ValidateStudyConfig(const StudyConfig& config);

// Missing keys take the defaults above. Unknown keys are rejected.
absl::StatusOr<StudyConfig> StudyConfigFromJson(const nlohmann::json& j);
nlohmann::json StudyConfigToJson(const StudyConfig& config);

absl::string_view TreatmentTypeName(TreatmentType t);
absl::StatusOr<TreatmentType> ParseTreatmentType(absl::string_view name);
absl::string_view CovariateLevelName(CovariateLevel c);
absl::StatusOr<CovariateLevel> ParseCovariateLevel(absl::string_view name);

}  // namespace auctionlab

#endif  // AUCTIONLAB_STUDY_CONFIG_H_
