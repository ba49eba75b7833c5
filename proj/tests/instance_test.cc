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

#include "auctionlab/instance.h"

#include <vector>

#include "gtest/gtest.h"

namespace auctionlab {
namespace {

TEST(InstanceTest, CreateBuildsIndexes) {
  auto instance = ExperimentInstance::Create(
      2, {{0, 0, 1, 2, 1}, {0, 2, 3, 4, 0}, {1, 0, 5, 6, 1}});
  ASSERT_TRUE(instance.ok()) << instance.status();
  EXPECT_EQ(instance->num_queries(), 2);
  EXPECT_EQ(instance->num_pairs(), 3);
  EXPECT_EQ(instance->num_advertisers(), 3);
  EXPECT_EQ(instance->eligible_queries(0), 2);
  EXPECT_EQ(instance->eligible_queries(1), 0);
  EXPECT_EQ(instance->eligible_queries(2), 1);
  EXPECT_EQ(instance->covariate_count(), 2);
  auto q0 = instance->pairs_of_query(0);
  EXPECT_EQ(std::vector<int>(q0.begin(), q0.end()), (std::vector<int>{0, 1}));
}

TEST(InstanceTest, CreateRejectsBadInput) {
  EXPECT_FALSE(ExperimentInstance::Create(1, {{0, 0, 1, 1}, {0, 0, 2, 2}}).ok());
  EXPECT_FALSE(ExperimentInstance::Create(2, {{0, 0, 1, 1}}).ok());
  EXPECT_FALSE(ExperimentInstance::Create(1, {{0, 0, -1, 1}}).ok());
  EXPECT_FALSE(ExperimentInstance::Create(1, {{0, 0, 1, 1, 2}}).ok());
  EXPECT_FALSE(ExperimentInstance::Create(1, {{1, 0, 1, 1}}).ok());
}

TEST(InstanceTest, IdenticalBidders) {
  auto instance = BuildIdenticalBidders(4, 5, 6);
  ASSERT_TRUE(instance.ok());
  EXPECT_EQ(instance->num_queries(), 1);
  EXPECT_EQ(instance->num_pairs(), 4);
  for (const Pair& p : instance->pairs()) {
    EXPECT_EQ(p.b0, 5);
    EXPECT_EQ(p.b1, 6);
    EXPECT_EQ(p.x, 1);
  }
  EXPECT_FALSE(BuildIdenticalBidders(4, 6, 5).ok());
  EXPECT_FALSE(BuildIdenticalBidders(4, 0, 5).ok());
}

TEST(InstanceTest, DominatingTreatment) {
  const std::vector<double> b0 = {4, 4.25, 4.5, 4.75}, b1 = {6, 5.5, 5.25, 5};
  EXPECT_TRUE(BuildDominatingTreatment(b0, b1).ok());
  const std::vector<double> c0 = {1, 2}, c1 = {5, 6};
  auto bad = BuildDominatingTreatment(c0, c1);
  ASSERT_FALSE(bad.ok());
  EXPECT_EQ(bad.status().message(), "ordering \"B_i(1) > B_j(1) if i < j\" violated");
  const std::vector<double> d0 = {1, 5.5}, d1 = {6, 5};
  EXPECT_FALSE(BuildDominatingTreatment(d0, d1).ok());
}

TEST(InstanceTest, JsonRoundTripIsBitExact) {
  ExperimentInstance instance = ExperimentInstance::FullyEligible(3, 2);
  std::vector<double> b0, b1;
  for (int i = 0; i < instance.num_pairs(); ++i) {
    b0.push_back(0.1 * i + 1.0 / 3.0);
    b1.push_back(b0.back() * 1.1);
  }
  ASSERT_TRUE(instance.SetPotentialBids(b0, b1).ok());
  std::vector<int> x = {1, 0, 1, 1, 0, 1};
  ASSERT_TRUE(instance.SetCovariates(x).ok());
  auto back = InstanceFromJson(nlohmann::json::parse(InstanceToJson(instance).dump()));
  ASSERT_TRUE(back.ok()) << back.status();
  ASSERT_EQ(back->num_pairs(), instance.num_pairs());
  for (int i = 0; i < instance.num_pairs(); ++i) {
    EXPECT_EQ(back->pair(i).b0, instance.pair(i).b0);
    EXPECT_EQ(back->pair(i).b1, instance.pair(i).b1);
    EXPECT_EQ(back->pair(i).x, instance.pair(i).x);
    EXPECT_EQ(back->pair(i).query, instance.pair(i).query);
  }
}

TEST(InstanceTest, SettersValidate) {
  ExperimentInstance instance = ExperimentInstance::FullyEligible(2, 2);
  const std::vector<double> short_bids = {1, 2};
  EXPECT_FALSE(instance.SetPotentialBids(short_bids, short_bids).ok());
  const std::vector<int> bad_x = {1, 1, 3, 0};
  EXPECT_FALSE(instance.SetCovariates(bad_x).ok());
}

}  // namespace
}  // namespace auctionlab
