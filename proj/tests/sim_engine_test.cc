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

#include "auctionlab/sim_engine.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "auctionlab/exact_oracle.h"
#include "auctionlab/instance.h"
#include "gtest/gtest.h"

namespace auctionlab {
namespace {

StudyConfig Tiny() {
  StudyConfig c;
  c.n_queries = {6};
  c.quota_fractions = {Fraction{1, 3}};
  c.mu1 = {1.1};
  c.n_bid_draws = 3;
  c.n_assignments_per_draw = 4;
  c.n_mc_tau_star = 20;
  return c;
}

std::string ReadFile(const std::string& name) {
  std::ifstream in(std::string(AUCTIONLAB_TESTDATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(SimEngineTest, ScenarioOrder) {
  StudyConfig c;
  c.treatment_types = {TreatmentType::kBid, TreatmentType::kQuota};
  const std::vector<Scenario> s = EnumerateScenarios(c);
  ASSERT_EQ(s.size(), 3u * 2 * 3 * 2);
  EXPECT_EQ(s[0].n_queries, 90);
  EXPECT_EQ(s[0].quota, 30);
  EXPECT_EQ(s[1].mu1, 1.1);
  EXPECT_EQ(s[3].quota, 60);
  EXPECT_FALSE(s[0].p_x.has_value());
  EXPECT_EQ(s[18].treatment, TreatmentType::kQuota);
  EXPECT_EQ(s[18].p_x, 0.1);
  EXPECT_EQ(s[18].mu1, c.mu0);
  for (size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i].id, static_cast<int>(i));
}

TEST(SimEngineTest, SameSeedSameRows) {
  auto a = RunStudy(Tiny());
  auto b = RunStudy(Tiny());
  ASSERT_TRUE(a.ok() && b.ok());
  ASSERT_EQ(a->size(), 2u);
  for (size_t i = 0; i < a->size(); ++i) EXPECT_TRUE((*a)[i].SameValues((*b)[i]));
  StudyConfig other = Tiny();
  other.master_seed = 2;
  auto c = RunStudy(other);
  EXPECT_NE((*a)[0].mean_est, (*c)[0].mean_est);
}

TEST(SimEngineTest, WorkerCountDoesNotChangeValues) {
  StudyConfig c = Tiny();
  c.treatment_types = {TreatmentType::kBid, TreatmentType::kQuota};
  c.throttle_modes = {QuotaMode::kJoint, QuotaMode::kSplit};
  auto one = RunStudy(c, {1});
  auto four = RunStudy(c, {4});
  ASSERT_TRUE(one.ok() && four.ok());
  ASSERT_EQ(one->size(), four->size());
  for (size_t i = 0; i < one->size(); ++i) {
    EXPECT_TRUE((*one)[i].SameValues((*four)[i])) << i;
  }
}

TEST(SimEngineTest, DuplicateSchemeHasUnitRatio) {
  StudyConfig c = Tiny();
  c.schemes = {RandomizationScheme::QueryBalanced(), RandomizationScheme::QueryBalanced()};
  auto rows = RunStudy(c);
  ASSERT_TRUE(rows.ok());
  for (const StudyRow& r : *rows) EXPECT_EQ(r.var_ratio, 1.0);
}

TEST(SimEngineTest, SchemeOrderDoesNotChangeValues) {
  StudyConfig c = Tiny();
  auto a = RunStudy(c);
  std::swap(c.schemes[0], c.schemes[1]);
  auto b = RunStudy(c);
  EXPECT_TRUE((*a)[0].SameValues((*b)[1]));
  EXPECT_TRUE((*a)[1].SameValues((*b)[0]));
}

TEST(SimEngineTest, VarianceRatioStudyNeedsBothBalancedSchemes) {
  StudyConfig c = Tiny();
  auto rows = VarianceRatioStudy(c);
  ASSERT_TRUE(rows.ok());
  ASSERT_EQ(rows->size(), 1u);
  EXPECT_EQ((*rows)[0].scheme, "pair_balanced");
  c.schemes = {RandomizationScheme::PairBalanced()};
  EXPECT_FALSE(VarianceRatioStudy(c).ok());
}

TEST(SimEngineTest, CsvRoundTrip) {
  StudyConfig c = Tiny();
  c.treatment_types = {TreatmentType::kBid, TreatmentType::kQuota};
  auto rows = RunStudy(c);
  ASSERT_TRUE(rows.ok());
  const std::string csv = StudyRowsToCsv(*rows);
  EXPECT_EQ(csv.substr(0, kStudyCsvHeader.size()), kStudyCsvHeader);
  auto back = StudyRowsFromCsv(csv);
  ASSERT_TRUE(back.ok()) << back.status();
  ASSERT_EQ(back->size(), rows->size());
  for (size_t i = 0; i < rows->size(); ++i) EXPECT_TRUE((*rows)[i].SameValues((*back)[i]));
  EXPECT_EQ(StudyRowsToCsv(*back), csv);
}

TEST(SimEngineTest, CsvQuotesFieldsWithCommas) {
  StudyRow r;
  r.quota_frac = "1/3";
  r.scheme = "query_bernoulli(0.3),\"x\"";
  r.treatment_type = "bid";
  r.throttle_mode = "joint";
  r.convention = "unweighted";
  const std::string csv = StudyRowsToCsv({r});
  EXPECT_NE(csv.find("\"query_bernoulli(0.3),\"\"x\"\"\""), std::string::npos);
  auto back = StudyRowsFromCsv(csv);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ((*back)[0].scheme, r.scheme);
  EXPECT_FALSE((*back)[0].rel_bias.has_value());
}

TEST(SimEngineTest, CsvRejectsWrongHeader) {
  EXPECT_FALSE(StudyRowsFromCsv("scenario_id,n_queries\n1,2\n").ok());
  const std::string short_row = std::string(kStudyCsvHeader) + "\n1,2\n";
  EXPECT_FALSE(StudyRowsFromCsv(short_row).ok());
}

TEST(SimEngineTest, GoldenSmallStudy) {
  auto config = StudyConfigFromJson(nlohmann::json::parse(ReadFile("small_study.json")));
  ASSERT_TRUE(config.ok());
  auto rows = RunStudy(*config, {2});
  ASSERT_TRUE(rows.ok());
  EXPECT_EQ(StudyRowsToCsv(*rows), ReadFile("golden/small_study.csv"));
}

TEST(SimEngineTest, JsonOutputCarriesConfig) {
  auto rows = RunStudy(Tiny());
  const nlohmann::json j = StudyRowsToJson(Tiny(), *rows);
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(*StudyConfigFromJson(j["config"]), Tiny());
}

TEST(SimEngineTest, MonteCarloAgreesWithEnumeration) {
  auto instance = InstanceFromJson(nlohmann::json::parse(ReadFile("joint_quota_fixture.json")));
  ASSERT_TRUE(instance.ok());
  ExperimentDesign design;
  design.scheme = RandomizationScheme::PairBernoulli(0.5);
  design.quota = QuotaConfig::UniformJoint(instance->num_advertisers(), 2);
  auto exact = ExactExpectedEstimate(*instance, design);
  ASSERT_TRUE(exact.ok()) << exact.status();
  auto mc = MonteCarloExpectedEstimate(*instance, design, 200000, 99, 2);
  ASSERT_TRUE(mc.ok());
  EXPECT_EQ(mc->n, 200000);
  EXPECT_NEAR(mc->mean, exact->expected_estimate.value, 4 * mc->se);
}

}  // namespace
}  // namespace auctionlab
