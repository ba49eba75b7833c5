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

#include <vector>

#include "auctionlab/instance.h"
#include "auctionlab/random.h"
#include "gtest/gtest.h"

namespace auctionlab {
namespace {

// Three advertisers on one query: B(1) = (5, 4, 3), B(0) = (2, 4, 1).
ExperimentInstance ThreeBidders() {
  return *ExperimentInstance::Create(1, {{0, 0, 2, 5}, {0, 1, 4, 4}, {0, 2, 1, 3}});
}

TEST(PaymentsTest, InterferenceExample) {
  ExperimentInstance instance = ThreeBidders();
  const std::vector<uint8_t> all(3, 1);
  auto y = RealizePayments(instance, std::vector<uint8_t>{1, 1, 0}, all,
                           Mechanism::kFirstPrice, TieRule::kLowestId);
  ASSERT_TRUE(y.ok());
  EXPECT_EQ(*y, (std::vector<Money>{5, 0, 0}));
  y = RealizePayments(instance, std::vector<uint8_t>{0, 1, 0}, all,
                      Mechanism::kFirstPrice, TieRule::kLowestId);
  EXPECT_EQ(*y, (std::vector<Money>{0, 4, 0}));
}

TEST(PaymentsTest, ThrottledPairsPayNothing) {
  ExperimentInstance instance = ThreeBidders();
  auto y = RealizePayments(instance, std::vector<uint8_t>{1, 1, 1},
                           std::vector<uint8_t>{0, 0, 0}, Mechanism::kFirstPrice,
                           TieRule::kLowestId);
  ASSERT_TRUE(y.ok());
  EXPECT_EQ(*y, (std::vector<Money>{0, 0, 0}));
  y = RealizePayments(instance, std::vector<uint8_t>{1, 1, 1},
                      std::vector<uint8_t>{0, 1, 1}, Mechanism::kFirstPrice,
                      TieRule::kLowestId);
  EXPECT_EQ(*y, (std::vector<Money>{0, 4, 0}));
}

TEST(PaymentsTest, AllTreatedIdenticalBidders) {
  auto instance = BuildIdenticalBidders(4, 5, 6);
  const std::vector<uint8_t> ones(4, 1);
  auto y = RealizePayments(*instance, ones, ones, Mechanism::kFirstPrice, TieRule::kLowestId);
  ASSERT_TRUE(y.ok());
  int payers = 0;
  for (Money m : *y) {
    if (m != 0) {
      ++payers;
      EXPECT_EQ(m, 6);
    }
  }
  EXPECT_EQ(payers, 1);
}

TEST(PaymentsTest, LengthMismatchIsAnError) {
  ExperimentInstance instance = ThreeBidders();
  EXPECT_FALSE(RealizePayments(instance, std::vector<uint8_t>{1, 1},
                               std::vector<uint8_t>{1, 1, 1}, Mechanism::kFirstPrice,
                               TieRule::kLowestId)
                   .ok());
}

TEST(PaymentsTest, QueriesAreIndependent) {
  Stream s(1);
  ExperimentInstance instance = ExperimentInstance::FullyEligible(4, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> b0(12), b1(12);
    for (int i = 0; i < 12; ++i) {
      b0[i] = s.Uniform();
      b1[i] = s.Uniform();
    }
    ASSERT_TRUE(instance.SetPotentialBids(b0, b1).ok());
    std::vector<uint8_t> z(12), w(12);
    for (int i = 0; i < 12; ++i) {
      z[i] = s.Bernoulli(0.5);
      w[i] = s.Bernoulli(0.8);
    }
    auto before = RealizePayments(instance, z, w, Mechanism::kSecondPrice, TieRule::kLowestId);
    // Change every bid in query 0 only.
    for (int i : instance.pairs_of_query(0)) {
      b0[i] *= 3;
      b1[i] *= 3;
    }
    ASSERT_TRUE(instance.SetPotentialBids(b0, b1).ok());
    auto after = RealizePayments(instance, z, w, Mechanism::kSecondPrice, TieRule::kLowestId);
    for (int i = 0; i < 12; ++i) {
      if (instance.pair(i).query != 0) EXPECT_EQ((*before)[i], (*after)[i]);
    }
    // At most one payer per query, paying at most the max surviving bid.
    for (int q = 0; q < 4; ++q) {
      int payers = 0;
      for (int i : instance.pairs_of_query(q)) payers += (*after)[i] != 0;
      EXPECT_LE(payers, 1);
    }
  }
}

TEST(PaymentsTest, RevenueHelpers) {
  ExperimentInstance instance = ExperimentInstance::FullyEligible(2, 2);
  const std::vector<Money> y = {1, 0, 0, 2.5};
  EXPECT_EQ(TotalRevenue(y), 3.5);
  EXPECT_EQ(AdvertiserRevenue(instance, y, 0), 1);
  EXPECT_EQ(AdvertiserRevenue(instance, y, 1), 2.5);
}

}  // namespace
}  // namespace auctionlab
