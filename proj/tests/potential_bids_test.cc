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

#include "auctionlab/random.h"
#include "gtest/gtest.h"

namespace auctionlab {
namespace {

TEST(PotentialBidsTest, SharedDrawWithEqualMeansGivesEqualBids) {
  Stream s(1);
  auto bids = DrawPotentialBids({1.0, 1.0, 0.1, BidCoupling::kCommonDraw}, 1000, s);
  ASSERT_TRUE(bids.ok());
  EXPECT_EQ(bids->b0, bids->b1);
}

TEST(PotentialBidsTest, ControlMeanMatchesLognormal) {
  Stream s(2);
  constexpr int kN = 100000;
  auto bids = DrawPotentialBids({1.0, 1.1, 0.1, BidCoupling::kCommonDraw}, kN, s);
  ASSERT_TRUE(bids.ok());
  double sum = 0, sum2 = 0;
  for (double b : bids->b0) {
    sum += b;
    sum2 += b * b;
  }
  const double mean = sum / kN;
  const double sd = std::sqrt(sum2 / kN - mean * mean);
  EXPECT_NEAR(mean, std::exp(1.05), 3 * sd / std::sqrt(kN));
}

double LogCorrelation(const PotentialBids& bids) {
  const int n = bids.b0.size();
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += std::log(bids.b0[i]) / n;
    my += std::log(bids.b1[i]) / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    const double dx = std::log(bids.b0[i]) - mx, dy = std::log(bids.b1[i]) - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

TEST(PotentialBidsTest, CouplingControlsCorrelation) {
  Stream s(3);
  auto common = DrawPotentialBids({1.0, 2.0, 0.1, BidCoupling::kCommonDraw}, 10000, s);
  auto independent = DrawPotentialBids({1.0, 2.0, 0.1, BidCoupling::kIndependent}, 10000, s);
  ASSERT_TRUE(common.ok() && independent.ok());
  EXPECT_GT(LogCorrelation(*common), 0.999);
  EXPECT_LT(std::abs(LogCorrelation(*independent)), 0.05);
}

TEST(PotentialBidsTest, RejectsNonPositiveVariance) {
  Stream s(4);
  EXPECT_FALSE(DrawPotentialBids({1.0, 1.0, 0.0, BidCoupling::kCommonDraw}, 10, s).ok());
  EXPECT_FALSE(DrawPotentialBids({1.0, 1.0, -1.0, BidCoupling::kCommonDraw}, 10, s).ok());
}

TEST(PotentialBidsTest, DeterministicGivenSeed) {
  Stream a(5), b(5);
  BidDistributionConfig c{1.0, 1.5, 0.1, BidCoupling::kIndependent};
  auto x = DrawPotentialBids(c, 50, a);
  auto y = DrawPotentialBids(c, 50, b);
  EXPECT_EQ(x->b0, y->b0);
  EXPECT_EQ(x->b1, y->b1);
}

TEST(PotentialBidsTest, CouplingNamesRoundTrip) {
  for (BidCoupling c : {BidCoupling::kCommonDraw, BidCoupling::kIndependent}) {
    EXPECT_EQ(*ParseCoupling(CouplingName(c)), c);
  }
}

}  // namespace
}  // namespace auctionlab
