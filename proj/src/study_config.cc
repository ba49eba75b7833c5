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

#include "auctionlab/study_config.h"

#include <set>
#include <string>

#include "absl/strings/str_cat.h"

namespace auctionlab {
namespace {

using nlohmann::json;

const std::set<std::string>& KnownKeys() {
  static const auto* keys = new std::set<std::string>{
      "schema_version", "master_seed",   "n_advertisers",
      "n_queries",      "quota_fractions", "mu0",
      "v",              "mu1",           "p_x",
      "treatment_types", "schemes",      "throttle_modes",
      "mechanism",      "tie_rule",      "convention",
      "coupling",       "covariate_level", "n_bid_draws",
      "n_assignments_per_draw", "n_mc_tau_star", "coupled_tau_star_masks"};
  return *keys;
}

// Reads j[key] through `parse` when present.
template <typename T, typename Parse>
absl::Status ReadParsed(const json& j, const char* key, Parse parse, T& out) {
  if (!j.contains(key)) return absl::OkStatus();
  auto v = parse(j.at(key).get<std::string>());
  if (!v.ok()) return v.status();
  out = *std::move(v);
  return absl::OkStatus();
}

template <typename T, typename Parse>
absl::Status ReadParsedList(const json& j, const char* key, Parse parse,
                            std::vector<T>& out) {
  if (!j.contains(key)) return absl::OkStatus();
  out.clear();
  for (const json& item : j.at(key)) {
    auto v = parse(item.get<std::string>());
    if (!v.ok()) return v.status();
    out.push_back(*std::move(v));
  }
  return absl::OkStatus();
}

template <typename T>
void ReadValue(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

bool Contains(const std::vector<QuotaMode>& modes, QuotaMode m) {
  return std::find(modes.begin(), modes.end(), m) != modes.end();
}

}  // namespace

absl::Status ValidateStudyConfig(const StudyConfig& c) {
  if (c.schema_version != kStudySchemaVersion) {
    return absl::InvalidArgumentError(absl::StrCat(
        "unsupported schema_version ", c.schema_version, " (expected ",
        kStudySchemaVersion, ")"));
  }
  if (c.n_advertisers < 1) return absl::InvalidArgumentError("n_advertisers must be >= 1");
  if (c.n_queries.empty() || c.quota_fractions.empty() || c.schemes.empty() ||
      c.throttle_modes.empty() || c.treatment_types.empty()) {
    return absl::InvalidArgumentError(
        "n_queries, quota_fractions, schemes, throttle_modes and "
        "treatment_types must be non-empty");
  }
  if (c.n_bid_draws < 1 || c.n_assignments_per_draw < 1 || c.n_mc_tau_star < 1) {
    return absl::InvalidArgumentError(
        "n_bid_draws, n_assignments_per_draw and n_mc_tau_star must be >= 1");
  }
  if (!std::isfinite(c.mu0) || !(c.v > 0.0) || !std::isfinite(c.v)) {
    return absl::InvalidArgumentError("need finite mu0 and v > 0");
  }
  for (double m : c.mu1) {
    if (!std::isfinite(m)) return absl::InvalidArgumentError("mu1 must be finite");
  }
  for (double p : c.p_x) {
    if (!(p >= 0.0 && p <= 1.0)) {
      return absl::InvalidArgumentError(absl::StrCat("p_x = ", p, " is not in [0, 1]"));
    }
  }
  for (TreatmentType t : c.treatment_types) {
    if (t == TreatmentType::kBid && c.mu1.empty()) {
      return absl::InvalidArgumentError("bid treatment needs a non-empty mu1 list");
    }
    if (t == TreatmentType::kQuota && c.p_x.empty()) {
      return absl::InvalidArgumentError("quota treatment needs a non-empty p_x list");
    }
  }
  for (const RandomizationScheme& s : c.schemes) {
    if (auto st = ValidateScheme(s); !st.ok()) return st;
  }
  for (QuotaMode m : c.throttle_modes) {
    if (m == QuotaMode::kNone) {
      return absl::InvalidArgumentError("throttle_modes must be joint or split");
    }
  }
  for (int nq : c.n_queries) {
    if (nq < 2) return absl::InvalidArgumentError("every n_queries must be >= 2");
    for (const Fraction& f : c.quota_fractions) {
      auto q = f.TimesInteger(nq);
      if (!q.ok()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "quota fraction ", f.ToString(), " of N_q = ", nq, " is not an integer"));
      }
      if (Contains(c.throttle_modes, QuotaMode::kSplit) && *q % 2 != 0) {
        return absl::InvalidArgumentError(absl::StrCat(
            "split throttling needs an even quota; ", f.ToString(), " of ", nq,
            " is ", *q));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<StudyConfig> StudyConfigFromJson(const json& j) {
  if (!j.is_object()) return absl::InvalidArgumentError("study config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!KnownKeys().contains(key)) {
      return absl::InvalidArgumentError(absl::StrCat("unknown config key '", key, "'"));
    }
  }
  StudyConfig c;
  try {
    ReadValue(j, "schema_version", c.schema_version);
    ReadValue(j, "master_seed", c.master_seed);
    ReadValue(j, "n_advertisers", c.n_advertisers);
    ReadValue(j, "n_queries", c.n_queries);
    ReadValue(j, "mu0", c.mu0);
    ReadValue(j, "v", c.v);
    ReadValue(j, "mu1", c.mu1);
    ReadValue(j, "p_x", c.p_x);
    ReadValue(j, "n_bid_draws", c.n_bid_draws);
    ReadValue(j, "n_assignments_per_draw", c.n_assignments_per_draw);
    ReadValue(j, "n_mc_tau_star", c.n_mc_tau_star);
    ReadValue(j, "coupled_tau_star_masks", c.coupled_tau_star_masks);
    absl::Status s;
    if (s = ReadParsedList(j, "quota_fractions", ParseFraction, c.quota_fractions); !s.ok()) return s;
    if (s = ReadParsedList(j, "treatment_types", ParseTreatmentType, c.treatment_types); !s.ok()) return s;
    if (s = ReadParsedList(j, "schemes", ParseScheme, c.schemes); !s.ok()) return s;
    if (s = ReadParsedList(j, "throttle_modes", ParseQuotaMode, c.throttle_modes); !s.ok()) return s;
    if (s = ReadParsed(j, "mechanism", ParseMechanism, c.mechanism); !s.ok()) return s;
    if (s = ReadParsed(j, "tie_rule", ParseTieRule, c.tie_rule); !s.ok()) return s;
    if (s = ReadParsed(j, "convention", ParseConvention, c.convention); !s.ok()) return s;
    if (s = ReadParsed(j, "coupling", ParseCoupling, c.coupling); !s.ok()) return s;
    if (s = ReadParsed(j, "covariate_level", ParseCovariateLevel, c.covariate_level); !s.ok()) return s;
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("study config: ", e.what()));
  }
  if (auto s = ValidateStudyConfig(c); !s.ok()) return s;
  return c;
}

json StudyConfigToJson(const StudyConfig& c) {
  json fractions = json::array(), types = json::array(), schemes = json::array(),
       modes = json::array();
  for (const Fraction& f : c.quota_fractions) fractions.push_back(f.ToString());
  for (TreatmentType t : c.treatment_types) types.push_back(std::string(TreatmentTypeName(t)));
  for (const RandomizationScheme& s : c.schemes) schemes.push_back(s.Name());
  for (QuotaMode m : c.throttle_modes) modes.push_back(std::string(QuotaModeName(m)));
  return {{"schema_version", c.schema_version},
          {"master_seed", c.master_seed},
          {"n_advertisers", c.n_advertisers},
          {"n_queries", c.n_queries},
          {"quota_fractions", fractions},
          {"mu0", c.mu0},
          {"v", c.v},
          {"mu1", c.mu1},
          {"p_x", c.p_x},
          {"treatment_types", types},
          {"schemes", schemes},
          {"throttle_modes", modes},
          {"mechanism", std::string(MechanismName(c.mechanism))},
          {"tie_rule", std::string(TieRuleName(c.tie_rule))},
          {"convention", std::string(ConventionName(c.convention))},
          {"coupling", std::string(CouplingName(c.coupling))},
          {"covariate_level", std::string(CovariateLevelName(c.covariate_level))},
          {"n_bid_draws", c.n_bid_draws},
          {"n_assignments_per_draw", c.n_assignments_per_draw},
          {"n_mc_tau_star", c.n_mc_tau_star},
          {"coupled_tau_star_masks", c.coupled_tau_star_masks}};
}

absl::string_view TreatmentTypeName(TreatmentType t) {
  return t == TreatmentType::kBid ? "bid" : "quota";
}

absl::StatusOr<TreatmentType> ParseTreatmentType(absl::string_view name) {
  if (name == "bid") return TreatmentType::kBid;
  if (name == "quota") return TreatmentType::kQuota;
  return absl::InvalidArgumentError(absl::StrCat("unknown treatment type '", name, "'"));
}

absl::string_view CovariateLevelName(CovariateLevel c) {
  return c == CovariateLevel::kQuery ? "query" : "pair";
}

absl::StatusOr<CovariateLevel> ParseCovariateLevel(absl::string_view name) {
  if (name == "query") return CovariateLevel::kQuery;
  if (name == "pair") return CovariateLevel::kPair;
  return absl::InvalidArgumentError(absl::StrCat("unknown covariate level '", name, "'"));
}

}  // namespace auctionlab
