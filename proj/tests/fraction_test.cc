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

#include "auctionlab/fraction.h"

#include "gtest/gtest.h"

namespace auctionlab {
namespace {

TEST(FractionTest, ParsesForms) {
  EXPECT_EQ(*ParseFraction("1/3"), (Fraction{1, 3}));
  EXPECT_EQ(*ParseFraction("4/6"), (Fraction{2, 3}));
  EXPECT_EQ(*ParseFraction("2"), (Fraction{2, 1}));
  EXPECT_EQ(*ParseFraction("0.25"), (Fraction{1, 4}));
  EXPECT_FALSE(ParseFraction("1/0").ok());
  EXPECT_FALSE(ParseFraction("-1/3").ok());
  EXPECT_FALSE(ParseFraction("third").ok());
  EXPECT_FALSE(ParseFraction("").ok());
}

TEST(FractionTest, ToStringRoundTrips) {
  EXPECT_EQ((Fraction{1, 3}).ToString(), "1/3");
  EXPECT_EQ((Fraction{2, 1}).ToString(), "2");
  EXPECT_EQ(*ParseFraction((Fraction{2, 3}).ToString()), (Fraction{2, 3}));
}

TEST(FractionTest, TimesIntegerRequiresIntegralResult) {
  EXPECT_EQ(*(Fraction{1, 3}).TimesInteger(90), 30);
  EXPECT_EQ(*(Fraction{2, 3}).TimesInteger(150), 100);
  EXPECT_FALSE((Fraction{1, 3}).TimesInteger(100).ok());
}

}  // namespace
}  // namespace auctionlab
