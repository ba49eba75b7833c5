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

#ifndef AUCTIONLAB_SIM_ENGINE_H_
#define AUCTIONLAB_SIM_ENGINE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "auctionlab/design.h"
#include "auctionlab/fraction.h"
#include "auctionlab/instance.h"
#include "auctionlab/study_config.h"
#include "json.hpp"

namespace auctionlab {

// One point of the study grid. p_x is set for quota treatments only; mu1 is
// mu0 for them.
struct Scenario {
  int id = 0;
  TreatmentType treatment = TreatmentType::kBid;
  int n_queries = 0;
  Fraction quota_frac;
  int quota = 0;  // per advertiser, quota_frac * n_queries
  double mu1 = 0.0;
  std::optional<double> p_x;
};

std::vector<Scenario> EnumerateScenarios(const StudyConfig& config);

// One (scenario, throttle mode, scheme) cell. Statistics are over n_outer
// bid draws with n_inner experiments each:
//   tau_star     mean over bid draws of the per-draw tau_star.
//   mean_est     mean of all n_outer * n_inner estimates.
//   rel_bias     bias / tau_star.
//   rel_bias_se  delta-method standard error across bid draws.
//   variance     mean over bid draws of the within-draw sample variance.
//   var_ratio    variance / variance of the query_balanced row of the same
//                scenario and throttle mode.
// Undefined quantities are empty.
struct StudyRow {
  int scenario_id = 0;
  int n_queries = 0;
  int n_advertisers = 0;
  std::string quota_frac;
  double mu0 = 0.0;
  double mu1 = 0.0;
  double v = 0.0;
  std::optional<double> p_x;
  std::string treatment_type;
  std::string scheme;
  std::string throttle_mode;
  std::string convention;
  int n_outer = 0;
  int n_inner = 0;
  double tau_star = 0.0;
  std::optional<double> tau_star_se;
  double mean_est = 0.0;
  double bias = 0.0;
  std::optional<double> rel_bias;
  std::optional<double> rel_bias_se;
  std::optional<double> variance;
  std::optional<double> var_ratio;
  uint64_t seed = 0;
  // Summed task time of the scenario; not part of the CSV.
  double runtime_seconds = 0.0;

  // Equality over the CSV fields.
  bool SameValues(const StudyRow& other) const;
};

struct RunOptions {
  int workers = 1;
};

// Runs every scenario of the grid. Results depend only on the config; the
// worker count changes speed, never values.
absl::StatusOr<std::vector<StudyRow>> RunStudy(const StudyConfig& config,
                                               const RunOptions& options = {});

// RunStudy restricted to the pair_balanced rows, whose var_ratio compares
// them with query_balanced on the same bid draws. Both schemes must be in
// the config.
absl::StatusOr<std::vector<StudyRow>> VarianceRatioStudy(const StudyConfig& config,
                                                         const RunOptions& options = {});

struct MonteCarloEstimate {
  double mean = 0.0;
  double se = 0.0;
  int64_t n = 0;
};

// Mean of the estimator over n_draws independent (assignment, mask) draws.
absl::StatusOr<MonteCarloEstimate> MonteCarloExpectedEstimate(
    const ExperimentInstance& instance, const ExperimentDesign& design,
    int64_t n_draws, uint64_t seed, int workers = 1);

inline constexpr absl::string_view kStudyCsvHeader =
    "scenario_id,n_queries,n_advertisers,quota_frac,mu0,mu1,v,p_x,"
    "treatment_type,scheme,throttle_mode,convention,n_outer,n_inner,tau_star,"
    "tau_star_se,mean_est,bias,rel_bias,rel_bias_se,variance,var_ratio,seed";

// Header line plus one line per row, RFC 4180 quoting, "\n" line ends.
// Doubles use the shortest representation that round-trips.
std::string StudyRowsToCsv(const std::vector<StudyRow>& rows);
absl::StatusOr<std::vector<StudyRow>> StudyRowsFromCsv(absl::string_view text);

nlohmann::json StudyRowsToJson(const StudyConfig& config,
                               const std::vector<StudyRow>& rows);

}  // namespace auctionlab

#endif  // AUCTIONLAB_SIM_ENGINE_H_
