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

#include "auctionlab/design.h"

#include "absl/strings/str_cat.h"

namespace auctionlab {

absl::StatusOr<ExperimentDesign> DesignFromJson(const nlohmann::json& j,
                                                const ExperimentInstance& instance) {
  ExperimentDesign d;
  if (j.is_null()) return d;
  if (!j.is_object()) return absl::InvalidArgumentError("design must be a JSON object");
  try {
    if (j.contains("scheme")) {
      auto s = ParseScheme(j.at("scheme").get<std::string>());
      if (!s.ok()) return s.status();
      d.scheme = *s;
    }
    if (j.contains("quota")) {
      auto q = QuotaConfigFromJson(j.at("quota"), instance);
      if (!q.ok()) return q.status();
      d.quota = *std::move(q);
    }
    if (j.contains("throttle")) {
      auto t = ParseThrottleKind(j.at("throttle").get<std::string>());
      if (!t.ok()) return t.status();
      d.throttle = *t;
    }
    if (j.contains("mechanism")) {
      auto m = ParseMechanism(j.at("mechanism").get<std::string>());
      if (!m.ok()) return m.status();
      d.mechanism = *m;
    }
    if (j.contains("tie")) {
      auto t = ParseTieRule(j.at("tie").get<std::string>());
      if (!t.ok()) return t.status();
      d.tie = *t;
    }
    if (j.contains("convention")) {
      auto c = ParseConvention(j.at("convention").get<std::string>());
      if (!c.ok()) return c.status();
      d.convention = *c;
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("design JSON: ", e.what()));
  }
  return d;
}

nlohmann::json DesignToJson(const ExperimentDesign& d) {
  return {{"scheme", d.scheme.Name()},
          {"quota", QuotaConfigToJson(d.quota)},
          {"throttle", ThrottleKindName(d.throttle)},
          {"mechanism", MechanismName(d.mechanism)},
          {"tie", TieRuleName(d.tie)},
          {"convention", ConventionName(d.convention)}};
}

}  // namespace auctionlab
