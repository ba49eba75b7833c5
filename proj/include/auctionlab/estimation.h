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

#ifndef AUCTIONLAB_ESTIMATION_H_
#define AUCTIONLAB_ESTIMATION_H_

#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "auctionlab/auction.h"
#include "auctionlab/instance.h"
#include "auctionlab/random.h"
#include "auctionlab/randomization.h"
#include "auctionlab/throttling.h"

namespace auctionlab {

// kHorvitzThompson weights treated payments by 1/p_i and control payments by
// 1/(1 - p_i). kUnweighted takes the plain difference of arm totals.
enum class WeightingConvention { kHorvitzThompson, kUnweighted };

// Estimated effect on total revenue:
//   sum_{z_i = 1} y_i / p_i  -  sum_{z_i = 0} y_i / (1 - p_i).
absl::StatusOr<Money> HtTotal(const Assignment& z, std::span<const Money> y,
                              WeightingConvention convention);

// The same estimate restricted to one advertiser's pairs.
absl::StatusOr<Money> HtAdvertiser(const ExperimentInstance& instance,
                                   const Assignment& z, std::span<const Money> y,
                                   int advertiser, WeightingConvention convention);

struct EffectOptions {
  ThrottleKind throttle = ThrottleKind::kStandard;
  Mechanism mechanism = Mechanism::kFirstPrice;
  TieRule tie = TieRule::kLowestId;
  // Mask pairs used to estimate tau_star when throttling is random.
  int n_mc = 2000;
  // Draw the all-treated and all-control masks from one shared stream
  // state instead of independent ones. Leaves every expectation unchanged.
  bool coupled_masks = false;
};

// True effects of treating every pair versus treating none.
//   tau, tau_a:           no throttling at all.
//   tau_star, tau_star_a: expectation over the throttling distribution, with
//                         the whole quota available to the single arm.
// tau_star_se is the Monte Carlo standard error of tau_star; it is zero when
// the throttle is deterministic and NaN when n_mc = 1.
struct EffectReport {
  Money tau = 0.0;
  std::vector<Money> tau_a;
  Money tau_star = 0.0;
  std::vector<Money> tau_star_a;
  Money tau_star_se = 0.0;
  int n_mc = 0;
};

absl::StatusOr<EffectReport> TrueEffects(const ExperimentInstance& instance,
                                         const QuotaConfig& quota,
                                         const EffectOptions& options,
                                         Stream& stream);

struct SummaryStats {
  int n = 0;
  double mean_est = 0.0;
  double bias = 0.0;
  // bias / tau_star; empty when tau_star is zero.
  std::optional<double> relative_bias;
  double variance = 0.0;    // sample variance (n - 1 denominator)
  double se_of_mean = 0.0;  // sd / sqrt(n)
  // sqrt(se_of_mean^2 + tau_star_se^2).
  double bias_se = 0.0;
};

absl::StatusOr<SummaryStats> Summarize(std::span<const double> estimates,
                                       Money tau_star, Money tau_star_se);

// numerator / denominator, empty when the denominator is zero or either
// side is not finite.
std::optional<double> VarianceRatio(double numerator, double denominator);

absl::string_view ConventionName(WeightingConvention c);
absl::StatusOr<WeightingConvention> ParseConvention(absl::string_view name);

}  // namespace auctionlab

#endif  // AUCTIONLAB_ESTIMATION_H_
