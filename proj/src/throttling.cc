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

#include "auctionlab/throttling.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "auctionlab/fraction.h"

namespace auctionlab {

QuotaConfig QuotaConfig::Joint(std::vector<int> total) {
  QuotaConfig q;
  q.mode = QuotaMode::kJoint;
  q.total = std::move(total);
  return q;
}

QuotaConfig QuotaConfig::UniformJoint(int num_advertisers, int quota) {
  return Joint(std::vector<int>(num_advertisers, quota));
}

QuotaConfig QuotaConfig::Split(std::vector<int> treated, std::vector<int> control) {
  QuotaConfig q;
  q.mode = QuotaMode::kSplit;
  q.total.resize(treated.size());
  for (size_t a = 0; a < treated.size() && a < control.size(); ++a) {
    q.total[a] = treated[a] + control[a];
  }
  q.treated = std::move(treated);
  q.control = std::move(control);
  return q;
}

absl::StatusOr<QuotaConfig> QuotaConfig::EvenSplit(int num_advertisers, int quota) {
  if (quota % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("even split needs an even quota, got ", quota));
  }
  return Split(std::vector<int>(num_advertisers, quota / 2),
               std::vector<int>(num_advertisers, quota / 2));
}

absl::Status QuotaConfig::Validate(int num_advertisers) const {
  if (mode == QuotaMode::kNone) return absl::OkStatus();
  if (static_cast<int>(total.size()) != num_advertisers) {
    return absl::InvalidArgumentError(absl::StrCat(
        "quota needs one entry per advertiser (", num_advertisers, "), got ",
        total.size()));
  }
  for (int a = 0; a < num_advertisers; ++a) {
    if (total[a] < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("advertiser ", a, ": negative quota"));
    }
  }
  if (mode == QuotaMode::kSplit) {
    if (static_cast<int>(treated.size()) != num_advertisers ||
        static_cast<int>(control.size()) != num_advertisers) {
      return absl::InvalidArgumentError("split quota needs Q1 and Q0 per advertiser");
    }
    for (int a = 0; a < num_advertisers; ++a) {
      if (treated[a] < 0 || control[a] < 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("advertiser ", a, ": negative split quota"));
      }
      if (treated[a] + control[a] != total[a]) {
        return absl::InvalidArgumentError(absl::StrCat(
            "advertiser ", a, ": Q1 + Q0 = ", treated[a] + control[a],
            " differs from Q = ", total[a]));
      }
    }
  }
  return absl::OkStatus();
}

MaskSampler::MaskSampler(const ExperimentInstance& instance,
                         const QuotaConfig& quota)
    : instance_(instance), quota_(quota) {}

void MaskSampler::KeepSubset(std::vector<int>& pool, int quota, Stream& stream,
                             std::vector<uint8_t>& w) {
  const size_t keep = std::min<size_t>(quota, pool.size());
  stream.ShuffleFront(std::span<int>(pool), keep);
  for (size_t i = 0; i < keep; ++i) w[pool[i]] = 1;
}

void MaskSampler::Draw(std::span<const uint8_t> z, ThrottleKind kind,
                       Stream& stream, std::vector<uint8_t>& w) {
  const int n = instance_.num_pairs();
  const bool filter = kind == ThrottleKind::kQuotaTreatment;
  auto survives_filter = [&](int i) {
    return !(filter && z[i] && instance_.pair(i).x == 0);
  };

  if (quota_.mode == QuotaMode::kNone) {
    w.resize(n);
    for (int i = 0; i < n; ++i) w[i] = survives_filter(i) ? 1 : 0;
    return;
  }

  w.assign(n, 0);
  for (int a = 0; a < instance_.num_advertisers(); ++a) {
    pool_treated_.clear();
    pool_control_.clear();
    for (int i : instance_.pairs_of_advertiser(a)) {
      if (!survives_filter(i)) continue;
      if (quota_.mode == QuotaMode::kSplit && !z[i]) {
        pool_control_.push_back(i);
      } else {
        pool_treated_.push_back(i);
      }
    }
    if (quota_.mode == QuotaMode::kJoint) {
      KeepSubset(pool_treated_, quota_.total[a], stream, w);
    } else {
      KeepSubset(pool_treated_, quota_.treated[a], stream, w);
      KeepSubset(pool_control_, quota_.control[a], stream, w);
    }
  }
}

namespace {

absl::StatusOr<ThrottleMask> DrawChecked(const ExperimentInstance& instance,
                                         const Assignment& z,
                                         const QuotaConfig& quota,
                                         ThrottleKind kind, Stream& stream) {
  if (auto s = quota.Validate(instance.num_advertisers()); !s.ok()) return s;
  if (z.size() != instance.num_pairs()) {
    return absl::InvalidArgumentError("assignment length differs from pair count");
  }
  ThrottleMask mask;
  MaskSampler(instance, quota).Draw(z.z, kind, stream, mask.w);
  return mask;
}

}  // namespace

absl::StatusOr<ThrottleMask> ThrottleJoint(const ExperimentInstance& instance,
                                           const Assignment& z,
                                           const QuotaConfig& quota,
                                           Stream& stream) {
  if (quota.mode != QuotaMode::kJoint) {
    return absl::InvalidArgumentError("ThrottleJoint needs a joint quota");
  }
  return DrawChecked(instance, z, quota, ThrottleKind::kStandard, stream);
}

absl::StatusOr<ThrottleMask> ThrottleSplit(const ExperimentInstance& instance,
                                           const Assignment& z,
                                           const QuotaConfig& quota,
                                           Stream& stream) {
  if (quota.mode != QuotaMode::kSplit) {
    return absl::InvalidArgumentError("ThrottleSplit needs a split quota");
  }
  return DrawChecked(instance, z, quota, ThrottleKind::kStandard, stream);
}

absl::StatusOr<ThrottleMask> ThrottleQuotaTreatment(
    const ExperimentInstance& instance, const Assignment& z,
    const QuotaConfig& quota, Stream& stream) {
  return DrawChecked(instance, z, quota, ThrottleKind::kQuotaTreatment, stream);
}

absl::StatusOr<ThrottleMask> DrawThrottleMask(const ExperimentInstance& instance,
                                              const Assignment& z,
                                              const QuotaConfig& quota,
                                              ThrottleKind kind, Stream& stream) {
  return DrawChecked(instance, z, quota, kind, stream);
}

QuotaConfig CounterfactualQuota(const QuotaConfig& quota) {
  if (quota.mode == QuotaMode::kNone) return QuotaConfig::None();
  return QuotaConfig::Joint(quota.total);
}

absl::Status CheckMask(const ExperimentInstance& instance,
                       std::span<const uint8_t> z, const QuotaConfig& quota,
                       ThrottleKind kind, std::span<const uint8_t> w) {
  const int n = instance.num_pairs();
  if (static_cast<int>(z.size()) != n || static_cast<int>(w.size()) != n) {
    return absl::InvalidArgumentError("mask length differs from pair count");
  }
  for (int i = 0; i < n; ++i) {
    if (kind == ThrottleKind::kQuotaTreatment && z[i] && instance.pair(i).x == 0 &&
        w[i]) {
      return absl::InternalError(
          absl::StrCat("pair ", i, " is treated with x = 0 but survived"));
    }
  }
  if (quota.mode == QuotaMode::kNone) return absl::OkStatus();
  for (int a = 0; a < instance.num_advertisers(); ++a) {
    int kept = 0, kept_treated = 0, kept_control = 0;
    for (int i : instance.pairs_of_advertiser(a)) {
      if (!w[i]) continue;
      ++kept;
      (z[i] ? kept_treated : kept_control) += 1;
    }
    if (quota.mode == QuotaMode::kJoint && kept > quota.total[a]) {
      return absl::InternalError(absl::StrCat(
          "advertiser ", a, " kept ", kept, " pairs over quota ", quota.total[a]));
    }
    if (quota.mode == QuotaMode::kSplit &&
        (kept_treated > quota.treated[a] || kept_control > quota.control[a])) {
      return absl::InternalError(
          absl::StrCat("advertiser ", a, " exceeded a split quota"));
    }
  }
  return absl::OkStatus();
}

absl::string_view QuotaModeName(QuotaMode m) {
  switch (m) {
    case QuotaMode::kNone: return "none";
    case QuotaMode::kJoint: return "joint";
    case QuotaMode::kSplit: return "split";
  }
  return "?";
}

absl::StatusOr<QuotaMode> ParseQuotaMode(absl::string_view name) {
  if (name == "none") return QuotaMode::kNone;
  if (name == "joint") return QuotaMode::kJoint;
  if (name == "split") return QuotaMode::kSplit;
  return absl::InvalidArgumentError(absl::StrCat("unknown quota mode '", name, "'"));
}

absl::string_view ThrottleKindName(ThrottleKind k) {
  return k == ThrottleKind::kStandard ? "standard" : "quota_treatment";
}

absl::StatusOr<ThrottleKind> ParseThrottleKind(absl::string_view name) {
  if (name == "standard") return ThrottleKind::kStandard;
  if (name == "quota_treatment") return ThrottleKind::kQuotaTreatment;
  return absl::InvalidArgumentError(absl::StrCat("unknown throttle kind '", name, "'"));
}

namespace {

// Reads a per-advertiser quota: an integer, an integer list, or a fraction
// string applied to each advertiser's eligible-query count.
absl::StatusOr<std::vector<int>> ReadQuotaVector(const nlohmann::json& j,
                                                 const ExperimentInstance& instance) {
  const int num_advertisers = instance.num_advertisers();
  if (j.is_number_integer()) return std::vector<int>(num_advertisers, j.get<int>());
  if (j.is_array()) return j.get<std::vector<int>>();
  if (j.is_string()) {
    absl::StatusOr<Fraction> f = ParseFraction(j.get<std::string>());
    if (!f.ok()) return f.status();
    std::vector<int> out(num_advertisers);
    for (int a = 0; a < num_advertisers; ++a) {
      absl::StatusOr<int> q = f->TimesInteger(instance.eligible_queries(a));
      if (!q.ok()) {
        return absl::InvalidArgumentError(
            absl::StrCat("advertiser ", a, ": ", q.status().message()));
      }
      out[a] = *q;
    }
    return out;
  }
  return absl::InvalidArgumentError("quota must be an integer, a list or a fraction");
}

}  // namespace

absl::StatusOr<QuotaConfig> QuotaConfigFromJson(const nlohmann::json& j,
                                                const ExperimentInstance& instance) {
  try {
    absl::StatusOr<QuotaMode> mode = ParseQuotaMode(j.value("mode", "none"));
    if (!mode.ok()) return mode.status();
    QuotaConfig out;
    if (*mode == QuotaMode::kNone) return out;
    if (*mode == QuotaMode::kJoint) {
      if (!j.contains("quota")) return absl::InvalidArgumentError("joint mode needs \"quota\"");
      absl::StatusOr<std::vector<int>> total = ReadQuotaVector(j.at("quota"), instance);
      if (!total.ok()) return total.status();
      out = QuotaConfig::Joint(*std::move(total));
    } else if (j.contains("treated") || j.contains("control")) {
      if (!j.contains("treated") || !j.contains("control")) {
        return absl::InvalidArgumentError("split mode needs both \"treated\" and \"control\"");
      }
      absl::StatusOr<std::vector<int>> q1 = ReadQuotaVector(j.at("treated"), instance);
      if (!q1.ok()) return q1.status();
      absl::StatusOr<std::vector<int>> q0 = ReadQuotaVector(j.at("control"), instance);
      if (!q0.ok()) return q0.status();
      out = QuotaConfig::Split(*std::move(q1), *std::move(q0));
      if (j.contains("quota")) {
        absl::StatusOr<std::vector<int>> total = ReadQuotaVector(j.at("quota"), instance);
        if (!total.ok()) return total.status();
        out.total = *std::move(total);
      }
    } else {
      if (!j.contains("quota")) return absl::InvalidArgumentError("split mode needs \"quota\"");
      absl::StatusOr<std::vector<int>> total = ReadQuotaVector(j.at("quota"), instance);
      if (!total.ok()) return total.status();
      std::vector<int> q1(total->size()), q0(total->size());
      for (size_t a = 0; a < total->size(); ++a) {
        if ((*total)[a] % 2 != 0) {
          return absl::InvalidArgumentError(absl::StrCat(
              "advertiser ", a, ": even split needs an even quota, got ", (*total)[a]));
        }
        q1[a] = q0[a] = (*total)[a] / 2;
      }
      out = QuotaConfig::Split(std::move(q1), std::move(q0));
    }
    if (auto s = out.Validate(instance.num_advertisers()); !s.ok()) return s;
    return out;
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("quota JSON: ", e.what()));
  }
}

nlohmann::json QuotaConfigToJson(const QuotaConfig& quota) {
  nlohmann::json j = {{"mode", QuotaModeName(quota.mode)}};
  if (quota.mode == QuotaMode::kJoint) j["quota"] = quota.total;
  if (quota.mode == QuotaMode::kSplit) {
    j["quota"] = quota.total;
    j["treated"] = quota.treated;
    j["control"] = quota.control;
  }
  return j;
}

}  // namespace auctionlab
