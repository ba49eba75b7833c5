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

#include "auctionlab/study_config.h"

#include "gtest/gtest.h"

namespace auctionlab {
namespace {

TEST(StudyConfigTest, DefaultsAreValid) {
  StudyConfig c;
  EXPECT_TRUE(ValidateStudyConfig(c).ok());
  EXPECT_EQ(c.n_bid_draws * c.n_assignments_per_draw, 20000);
}

TEST(StudyConfigTest, JsonRoundTrip) {
  StudyConfig c;
  c.master_seed = 42;
  c.treatment_types = {TreatmentType::kBid, TreatmentType::kQuota};
  c.schemes = {RandomizationScheme::QueryBernoulli(0.3), RandomizationScheme::PairBalanced()};
  c.throttle_modes = {QuotaMode::kJoint, QuotaMode::kSplit};
  c.mechanism = Mechanism::kSecondPrice;
  c.covariate_level = CovariateLevel::kPair;
  c.coupled_tau_star_masks = true;
  auto back = StudyConfigFromJson(StudyConfigToJson(c));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, c);
  auto again = StudyConfigFromJson(nlohmann::json::parse(StudyConfigToJson(*back).dump()));
  EXPECT_EQ(*again, c);
}

TEST(StudyConfigTest, MissingKeysTakeDefaults) {
  auto c = StudyConfigFromJson(nlohmann::json::object());
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(*c, StudyConfig());
}

TEST(StudyConfigTest, RejectsBadConfigs) {
  EXPECT_FALSE(StudyConfigFromJson({{"n_queries", {100}}}).ok());  // 100/3
  EXPECT_FALSE(StudyConfigFromJson({{"typo_key", 1}}).ok());
  EXPECT_FALSE(StudyConfigFromJson({{"schema_version", 2}}).ok());
  EXPECT_FALSE(StudyConfigFromJson({{"v", 0}}).ok());
  EXPECT_FALSE(StudyConfigFromJson({{"p_x", {1.5}}}).ok());
  EXPECT_FALSE(StudyConfigFromJson({{"schemes", {"cluster"}}}).ok());
  EXPECT_FALSE(StudyConfigFromJson({{"n_bid_draws", 0}}).ok());
  // Split needs an even quota: 1/3 of 9 is 3.
  EXPECT_FALSE(StudyConfigFromJson({{"n_queries", {9}}, {"throttle_modes", {"split"}}}).ok());
  EXPECT_TRUE(StudyConfigFromJson({{"n_queries", {9}}, {"throttle_modes", {"joint"}}}).ok());
  EXPECT_FALSE(StudyConfigFromJson({{"throttle_modes", {"none"}}}).ok());
  EXPECT_FALSE(StudyConfigFromJson({{"mu0", "one"}}).ok());
}

}  // namespace
}  // namespace auctionlab
