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

#ifndef AUCTIONLAB_EXACT_ORACLE_H_
#define AUCTIONLAB_EXACT_ORACLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "auctionlab/design.h"
#include "auctionlab/instance.h"

namespace auctionlab {

// Bounds on how much the oracle may enumerate. Exceeding either bound is a
// ResourceExhausted error; the oracle never falls back to sampling.
struct EnumerationBudget {
  uint64_t max_assignments = uint64_t{1} << 20;
  uint64_t max_masks_per_assignment = 1'000'000;
  // Enumerations with at most this many (assignment, mask) states are
  // accumulated in exact rational arithmetic.
  uint64_t max_exact_states = uint64_t{1} << 16;
};

// A value computed by the oracle, with its exact rational form ("69/16")
// when the rational path was used. Inputs are taken as the exact values of
// their doubles.
struct OracleValue {
  double value = 0.0;
  std::optional<std::string> exact;
};

struct OracleReport {
  OracleValue expected_estimate;  // E[estimate] over assignments and masks
  OracleValue tau;                // no throttling
  OracleValue tau_star;           // expectation over the throttle
  OracleValue bias;               // E[estimate] - tau
  OracleValue bias_vs_tau_star;   // E[estimate] - tau_star
  uint64_t n_assignments = 0;
  uint64_t n_states = 0;
  double probability_mass = 0.0;
};

// Exact expectation of the estimator by enumerating every assignment the
// scheme can produce and, for each, every mask the throttle can produce.
absl::StatusOr<OracleReport> ExactExpectedEstimate(
    const ExperimentInstance& instance, const ExperimentDesign& design,
    const EnumerationBudget& budget = {});

// Bias of the unweighted estimate for K identical bidders with control bid
// R0 and treatment bid R1 under independent fair-coin assignment:
//   (2^-K - 1) (R1 - R0) + (1 - 2^(1-K)) R1.
absl::StatusOr<double> ClosedFormBiasIdentical(int k, double r0, double r1);

struct GapReport {
  double expected_estimate = 0.0;
  double tau_star = 0.0;
  double gap = 0.0;  // expected_estimate - tau_star
  OracleReport oracle;
};

// Exact E[estimate] - tau_star for a bid treatment under joint quotas and
// query randomization with inverse-probability weights. Refuses unless every
// advertiser is saturated (N_q[a] > Q[a]) or every advertiser is
// unconstrained (Q[a] >= N_q[a]).
absl::StatusOr<GapReport> VerifyJointQuotaUnbiasedness(
    const ExperimentInstance& instance, const QuotaConfig& quota,
    Mechanism mechanism,
    const RandomizationScheme& scheme = RandomizationScheme::QueryBalanced(),
    const EnumerationBudget& budget = {});

struct AdvertiserConditionRecord {
  int advertiser = 0;
  int n_pairs = 0;            // N_a
  int n_covariate = 0;        // N_a(x=1)
  int min_control = 0;        // min over Z of N_a^(0)(Z)
  int max_control = 0;
  int min_treated_covariate = 0;  // min over Z of N_a^(1)(x=1)(Z)
  int max_treated_covariate = 0;
  bool control_proportional = true;
  bool treated_proportional = true;
};

// Conditions under which the split-quota estimate of a quota treatment is
// unbiased, evaluated for every query-randomized assignment the scheme
// allows. Ratios are compared exactly by cross-multiplication.
struct ConditionReport {
  std::string interpretation;
  bool bid_zero_when_x0 = true;
  std::optional<int> offending_pair;
  bool control_proportionality = true;
  bool treated_proportionality = true;
  bool all_hold = true;
  uint64_t n_assignments = 0;
  std::vector<AdvertiserConditionRecord> advertisers;
  // Per-query arms of the first assignment that broke a proportionality
  // condition, and the advertiser it broke for.
  std::optional<std::vector<uint8_t>> counterexample;
  std::optional<int> counterexample_advertiser;
};

absl::StatusOr<ConditionReport> CheckSplitQuotaConditions(
    const ExperimentInstance& instance, const QuotaConfig& quota,
    const RandomizationScheme& scheme = RandomizationScheme::QueryBalanced(),
    const EnumerationBudget& budget = {});

// Exact E[estimate] - tau_star for a quota treatment under split quotas and
// query randomization with inverse-probability weights.
absl::StatusOr<GapReport> VerifySplitQuotaUnbiasedness(
    const ExperimentInstance& instance, const QuotaConfig& quota,
    Mechanism mechanism,
    const RandomizationScheme& scheme = RandomizationScheme::QueryBalanced(),
    const EnumerationBudget& budget = {});

}  // namespace auctionlab

#endif  // AUCTIONLAB_EXACT_ORACLE_H_
