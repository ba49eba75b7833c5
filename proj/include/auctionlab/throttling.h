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

#ifndef AUCTIONLAB_THROTTLING_H_
#define AUCTIONLAB_THROTTLING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "auctionlab/instance.h"
#include "auctionlab/random.h"
#include "auctionlab/randomization.h"
#include "json.hpp"

namespace auctionlab {

enum class QuotaMode { kNone, kJoint, kSplit };

// Per-advertiser quotas, counted in (query, advertiser) pairs. In split mode
// treated and control pairs draw on separate budgets that sum to the total.
struct QuotaConfig {
  QuotaMode mode = QuotaMode::kNone;
  std::vector<int> total;    // Q[a]
  std::vector<int> treated;  // Q1[a], split mode only
  std::vector<int> control;  // Q0[a], split mode only

  static QuotaConfig None() { return {}; }
  static QuotaConfig Joint(std::vector<int> total);
  static QuotaConfig UniformJoint(int num_advertisers, int quota);
  static QuotaConfig Split(std::vector<int> treated, std::vector<int> control);
  // Q1 = Q0 = Q / 2 for every advertiser; Q must be even.
  static absl::StatusOr<QuotaConfig> EvenSplit(int num_advertisers, int quota);

  absl::Status Validate(int num_advertisers) const;
  friend bool operator==(const QuotaConfig&, const QuotaConfig&) = default;
};

// kQuotaTreatment adds the treatment filter in front of the standard
// throttle: a treated pair with x = 0 is always dropped.
enum class ThrottleKind { kStandard, kQuotaTreatment };

struct ThrottleMask {
  std::vector<uint8_t> w;
};

// Joint quotas: each advertiser keeps a uniformly random subset of its
// eligible pairs of size min(Q[a], N_q[a]), independently across
// advertisers. The distribution does not depend on z.
absl::StatusOr<ThrottleMask> ThrottleJoint(const ExperimentInstance& instance,
                                           const Assignment& z,
                                           const QuotaConfig& quota, Stream& stream);

// Split quotas: the same, separately for each advertiser's treated pairs
// (budget Q1[a]) and control pairs (budget Q0[a]).
absl::StatusOr<ThrottleMask> ThrottleSplit(const ExperimentInstance& instance,
                                           const Assignment& z,
                                           const QuotaConfig& quota, Stream& stream);

// Drops treated pairs with x = 0, then applies the configured standard
// throttle to the survivors. On the control side nothing changes.
absl::StatusOr<ThrottleMask> ThrottleQuotaTreatment(
    const ExperimentInstance& instance, const Assignment& z,
    const QuotaConfig& quota, Stream& stream);

absl::StatusOr<ThrottleMask> DrawThrottleMask(const ExperimentInstance& instance,
                                              const Assignment& z,
                                              const QuotaConfig& quota,
                                              ThrottleKind kind, Stream& stream);

// Reusable sampler for hot loops. Holds scratch buffers, so one instance per
// thread. The config must already be validated against the instance.
class MaskSampler {
 public:
  MaskSampler(const ExperimentInstance& instance, const QuotaConfig& quota);

  void Draw(std::span<const uint8_t> z, ThrottleKind kind, Stream& stream,
            std::vector<uint8_t>& w);

 private:
  void KeepSubset(std::vector<int>& pool, int quota, Stream& stream,
                  std::vector<uint8_t>& w);

  const ExperimentInstance& instance_;
  const QuotaConfig& quota_;
  std::vector<int> pool_treated_;
  std::vector<int> pool_control_;
};

// The quota that applies when every pair sits in one arm: the whole budget
// Q[a] in joint form (or no throttling for kNone).
QuotaConfig CounterfactualQuota(const QuotaConfig& quota);

// Checks the joint or split survivor bounds for one drawn mask, and the
// treatment filter when kind is kQuotaTreatment.
absl::Status CheckMask(const ExperimentInstance& instance,
                       std::span<const uint8_t> z, const QuotaConfig& quota,
                       ThrottleKind kind, std::span<const uint8_t> w);

absl::string_view QuotaModeName(QuotaMode m);
absl::StatusOr<QuotaMode> ParseQuotaMode(absl::string_view name);
absl::string_view ThrottleKindName(ThrottleKind k);
absl::StatusOr<ThrottleKind> ParseThrottleKind(absl::string_view name);

// {"mode": "joint", "quota": 2 | [2, 2, 2] | "1/3"} where a string is a
// fraction of each advertiser's eligible-query count; split mode also takes
// "treated"/"control" (defaulting to an even split of "quota").
absl::StatusOr<QuotaConfig> QuotaConfigFromJson(const nlohmann::json& j,
                                                const ExperimentInstance& instance);
nlohmann::json QuotaConfigToJson(const QuotaConfig& quota);

}  // namespace auctionlab

#endif  // AUCTIONLAB_THROTTLING_H_
