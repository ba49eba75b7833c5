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

#include "auctionlab/estimation.h"

#include <cmath>
#include <vector>

#include "auctionlab/instance.h"
#include "auctionlab/payments.h"
#include "auctionlab/random.h"
#include "auctionlab/randomization.h"
#include "gtest/gtest.h"

namespace auctionlab {
namespace {

Assignment Fixed(std::vector<uint8_t> z, double p) {
  Assignment a;
  a.z = std::move(z);
  a.p.assign(a.z.size(), p);
  a.scheme = RandomizationScheme::PairBernoulli(p);
  return a;
}

TEST(EstimationTest, HtTotalArithmetic) {
  const std::vector<Money> win6 = {6, 0, 0, 0}, win5 = {5, 0, 0, 0}, none(4, 0.0);
  const Assignment ones = Fixed({1, 1, 1, 1}, 0.5), zeros = Fixed({0, 0, 0, 0}, 0.5);
  EXPECT_EQ(*HtTotal(ones, win6, WeightingConvention::kHorvitzThompson), 12);
  EXPECT_EQ(*HtTotal(ones, win6, WeightingConvention::kUnweighted), 6);
  EXPECT_EQ(*HtTotal(zeros, win5, WeightingConvention::kUnweighted), -5);
  EXPECT_EQ(*HtTotal(zeros, win5, WeightingConvention::kHorvitzThompson), -10);
  EXPECT_EQ(*HtTotal(ones, none, WeightingConvention::kHorvitzThompson), 0);
  EXPECT_EQ(*HtTotal(zeros, none, WeightingConvention::kUnweighted), 0);
}

TEST(EstimationTest, HtRejectsDegenerateProbabilities) {
  const std::vector<Money> y = {1, 2};
  EXPECT_FALSE(HtTotal(Fixed({1, 0}, 1.0), y, WeightingConvention::kHorvitzThompson).ok());
  EXPECT_FALSE(HtTotal(Fixed({1, 0}, 0.0), y, WeightingConvention::kHorvitzThompson).ok());
  EXPECT_TRUE(HtTotal(Fixed({1, 0}, 1.0), y, WeightingConvention::kUnweighted).ok());
  EXPECT_FALSE(HtTotal(Fixed({1, 0, 1}, 0.5), y, WeightingConvention::kUnweighted).ok());
}

TEST(EstimationTest, AdvertiserEstimatesSumToTotal) {
  ExperimentInstance instance = ExperimentInstance::FullyEligible(5, 3);
  Stream s(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto z = DrawAssignment(RandomizationScheme::PairBernoulli(0.3), instance, s);
    std::vector<Money> y(instance.num_pairs());
    for (Money& m : y) m = s.Uniform();
    for (auto conv : {WeightingConvention::kHorvitzThompson, WeightingConvention::kUnweighted}) {
      double sum = 0;
      for (int a = 0; a < 3; ++a) sum += *HtAdvertiser(instance, *z, y, a, conv);
      EXPECT_NEAR(sum, *HtTotal(*z, y, conv), 1e-12);
    }
  }
}

TEST(EstimationTest, AdvertiserEstimateOfLoser) {
  auto instance = *ExperimentInstance::Create(1, {{0, 0, 2, 5}, {0, 1, 4, 4}, {0, 2, 1, 3}});
  const Assignment z = Fixed({1, 1, 0}, 0.5);
  auto y = RealizePayments(instance, z.z, std::vector<uint8_t>(3, 1),
                           Mechanism::kFirstPrice, TieRule::kLowestId);
  EXPECT_EQ(*HtAdvertiser(instance, z, *y, 1, WeightingConvention::kUnweighted), 0);
  auto single = BuildIdenticalBidders(1, 1, 2);
  const Assignment one = Fixed({1}, 0.5);
  const std::vector<Money> pay = {2};
  EXPECT_EQ(*HtAdvertiser(*single, one, pay, 0, WeightingConvention::kHorvitzThompson),
            *HtTotal(one, pay, WeightingConvention::kHorvitzThompson));
}

TEST(EstimationTest, TrueEffectsOfToyInstances) {
  Stream s(2);
  auto identical = BuildIdenticalBidders(4, 5, 6);
  auto r = TrueEffects(*identical, QuotaConfig::None(), {}, s);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->tau, 1);
  EXPECT_EQ(r->tau_star, 1);
  EXPECT_EQ(r->tau_star_se, 0);
  const std::vector<double> b0 = {4, 4.25, 4.5, 4.75}, b1 = {6, 5.5, 5.25, 5};
  auto dominating = BuildDominatingTreatment(b0, b1);
  r = TrueEffects(*dominating, QuotaConfig::None(), {}, s);
  EXPECT_EQ(r->tau, 1.25);
  double sum = 0;
  for (Money t : r->tau_a) sum += t;
  EXPECT_EQ(sum, r->tau);
}

TEST(EstimationTest, SingleQueryBernoulliIsUnbiased) {
  auto instance = BuildIdenticalBidders(4, 5, 6);
  for (double p : {0.3, 0.5, 0.7}) {
    // Two-point expectation: all treated with probability p, else all control.
    const Assignment one = Fixed({1, 1, 1, 1}, p), zero = Fixed({0, 0, 0, 0}, p);
    const std::vector<Money> y1 = {6, 0, 0, 0}, y0 = {5, 0, 0, 0};
    const double e = p * *HtTotal(one, y1, WeightingConvention::kHorvitzThompson) +
                     (1 - p) * *HtTotal(zero, y0, WeightingConvention::kHorvitzThompson);
    EXPECT_NEAR(e, 1.0, 1e-12);
  }
}

TEST(EstimationTest, ScaleEquivariance) {
  ExperimentInstance instance = ExperimentInstance::FullyEligible(6, 3);
  Stream bids(3);
  std::vector<double> b0(18), b1(18), c0(18), c1(18);
  for (int i = 0; i < 18; ++i) {
    b0[i] = 1 + bids.Uniform();
    b1[i] = b0[i] * 1.2;
    c0[i] = b0[i] * 4;
    c1[i] = b1[i] * 4;
  }
  ExperimentInstance scaled = instance;
  ASSERT_TRUE(instance.SetPotentialBids(b0, b1).ok());
  ASSERT_TRUE(scaled.SetPotentialBids(c0, c1).ok());
  const QuotaConfig quota = QuotaConfig::UniformJoint(3, 3);
  Stream a(4), b(4);
  auto r = TrueEffects(instance, quota, {}, a);
  auto q = TrueEffects(scaled, quota, {}, b);
  EXPECT_EQ(q->tau, 4 * r->tau);
  EXPECT_NEAR(q->tau_star, 4 * r->tau_star, 1e-9);
}

TEST(EstimationTest, TauStarStandardErrorShrinks) {
  ExperimentInstance instance = ExperimentInstance::FullyEligible(12, 3);
  Stream bids(5);
  std::vector<double> b0(36), b1(36);
  for (int i = 0; i < 36; ++i) {
    b0[i] = std::exp(bids.Normal() * 0.3);
    b1[i] = b0[i] * 1.1;
  }
  ASSERT_TRUE(instance.SetPotentialBids(b0, b1).ok());
  EffectOptions small, large;
  small.n_mc = 1000;
  large.n_mc = 4000;
  Stream a(6), b(7);
  auto r1 = TrueEffects(instance, QuotaConfig::UniformJoint(3, 4), small, a);
  auto r4 = TrueEffects(instance, QuotaConfig::UniformJoint(3, 4), large, b);
  ASSERT_TRUE(r1.ok() && r4.ok());
  EXPECT_NEAR(r4->tau_star_se / r1->tau_star_se, 0.5, 0.1);
  EXPECT_NEAR(r1->tau_star, r4->tau_star, 4 * std::hypot(r1->tau_star_se, r4->tau_star_se));
}

TEST(EstimationTest, CoupledMasksKeepTheExpectation) {
  ExperimentInstance instance = ExperimentInstance::FullyEligible(8, 3);
  Stream bids(8);
  std::vector<double> b0(24), b1(24);
  for (int i = 0; i < 24; ++i) {
    b0[i] = std::exp(bids.Normal() * 0.3);
    b1[i] = b0[i] * 1.3;
  }
  ASSERT_TRUE(instance.SetPotentialBids(b0, b1).ok());
  EffectOptions coupled;
  coupled.coupled_masks = true;
  coupled.n_mc = 4000;
  EffectOptions independent;
  independent.n_mc = 4000;
  Stream a(9), b(10);
  auto c = TrueEffects(instance, QuotaConfig::UniformJoint(3, 3), coupled, a);
  auto i = TrueEffects(instance, QuotaConfig::UniformJoint(3, 3), independent, b);
  EXPECT_NEAR(c->tau_star, i->tau_star, 4 * std::hypot(c->tau_star_se, i->tau_star_se));
}

TEST(EstimationTest, SummarizeExamples) {
  const std::vector<double> ones = {1, 1, 1, 1};
  auto s = Summarize(ones, 1, 0);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->bias, 0);
  EXPECT_EQ(s->relative_bias, 0);
  EXPECT_EQ(s->variance, 0);
  const std::vector<double> two = {0, 2};
  s = Summarize(two, 1, 0);
  EXPECT_EQ(s->bias, 0);
  EXPECT_EQ(s->variance, 2);
  EXPECT_EQ(s->se_of_mean, 1);
  const std::vector<double> zeros = {0, 0, 0};
  s = Summarize(zeros, 1, 0);
  EXPECT_EQ(s->relative_bias, -1);
  s = Summarize(zeros, 0, 0);
  EXPECT_FALSE(s->relative_bias.has_value());
  const std::vector<double> one = {1};
  EXPECT_FALSE(Summarize(one, 1, 0).ok());
}

TEST(EstimationTest, VarianceRatio) {
  EXPECT_EQ(VarianceRatio(6, 2), 3);
  EXPECT_EQ(VarianceRatio(2.5, 2.5), 1);
  EXPECT_FALSE(VarianceRatio(1, 0).has_value());
  EXPECT_FALSE(VarianceRatio(NAN, 1).has_value());
}

}  // namespace
}  // namespace auctionlab
