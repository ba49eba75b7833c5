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

#include "auctionlab/instance.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"

namespace auctionlab {
namespace {

void BuildIndex(const std::vector<int>& keys, int num_keys,
                std::vector<int>& offsets, std::vector<int>& index) {
  offsets.assign(num_keys + 1, 0);
  for (int k : keys) ++offsets[k + 1];
  for (int k = 0; k < num_keys; ++k) offsets[k + 1] += offsets[k];
  index.assign(keys.size(), 0);
  std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
  for (size_t i = 0; i < keys.size(); ++i) index[cursor[keys[i]]++] = static_cast<int>(i);
}

absl::Status CheckBid(Money b, size_t i, const char* which) {
  if (!std::isfinite(b) || b < 0.0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "pair ", i, ": ", which, " must be finite and >= 0, got ", b));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<ExperimentInstance> ExperimentInstance::Create(
    int num_queries, std::vector<Pair> pairs) {
  if (num_queries < 1) {
    return absl::InvalidArgumentError("instance needs at least one query");
  }
  std::set<std::pair<int, int>> seen;
  std::vector<int> query_keys, advertiser_keys;
  int max_advertiser = -1;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const Pair& p = pairs[i];
    if (p.query < 0 || p.query >= num_queries) {
      return absl::InvalidArgumentError(absl::StrCat(
          "pair ", i, ": query ", p.query, " outside [0, ", num_queries, ")"));
    }
    if (p.advertiser < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("pair ", i, ": negative advertiser id"));
    }
    if (!seen.emplace(p.query, p.advertiser).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "duplicate pair (query ", p.query, ", advertiser ", p.advertiser, ")"));
    }
    if (auto s = CheckBid(p.b0, i, "b0"); !s.ok()) return s;
    if (auto s = CheckBid(p.b1, i, "b1"); !s.ok()) return s;
    if (p.x != 0 && p.x != 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("pair ", i, ": x must be 0 or 1"));
    }
    max_advertiser = std::max(max_advertiser, p.advertiser);
    query_keys.push_back(p.query);
    advertiser_keys.push_back(p.advertiser);
  }

  ExperimentInstance inst;
  inst.num_queries_ = num_queries;
  inst.num_advertisers_ = max_advertiser + 1;
  inst.pairs_ = std::move(pairs);
  BuildIndex(query_keys, num_queries, inst.query_offsets_, inst.query_index_);
  BuildIndex(advertiser_keys, inst.num_advertisers_, inst.advertiser_offsets_,
             inst.advertiser_index_);
  for (int q = 0; q < num_queries; ++q) {
    if (inst.pairs_of_query(q).empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("query ", q, " has no eligible pair"));
    }
  }
  return inst;
}

ExperimentInstance ExperimentInstance::FullyEligible(int num_queries,
                                                     int num_advertisers) {
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<size_t>(num_queries) * num_advertisers);
  for (int q = 0; q < num_queries; ++q) {
    for (int a = 0; a < num_advertisers; ++a) pairs.push_back({q, a, 0.0, 0.0, 1});
  }
  return *Create(num_queries, std::move(pairs));
}

int ExperimentInstance::covariate_count() const {
  return static_cast<int>(std::count_if(pairs_.begin(), pairs_.end(),
                                        [](const Pair& p) { return p.x == 1; }));
}

absl::Status ExperimentInstance::SetPotentialBids(std::span<const Money> b0,
                                                  std::span<const Money> b1) {
  if (b0.size() != pairs_.size() || b1.size() != pairs_.size()) {
    return absl::InvalidArgumentError("bid vectors must have one entry per pair");
  }
  for (size_t i = 0; i < pairs_.size(); ++i) {
    if (auto s = CheckBid(b0[i], i, "b0"); !s.ok()) return s;
    if (auto s = CheckBid(b1[i], i, "b1"); !s.ok()) return s;
  }
  for (size_t i = 0; i < pairs_.size(); ++i) {
    pairs_[i].b0 = b0[i];
    pairs_[i].b1 = b1[i];
  }
  return absl::OkStatus();
}

absl::Status ExperimentInstance::SetCovariates(std::span<const int> x) {
  if (x.size() != pairs_.size()) {
    return absl::InvalidArgumentError("covariate vector must have one entry per pair");
  }
  for (int v : x) {
    if (v != 0 && v != 1) return absl::InvalidArgumentError("x must be 0 or 1");
  }
  for (size_t i = 0; i < pairs_.size(); ++i) pairs_[i].x = x[i];
  return absl::OkStatus();
}

absl::StatusOr<ExperimentInstance> BuildIdenticalBidders(int k, Money r0,
                                                         Money r1) {
  if (k < 1) return absl::InvalidArgumentError("identical_bidders needs K >= 1");
  if (!(r0 > 0.0) || !(r1 > r0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "identical_bidders needs R1 > R0 > 0, got R0 = ", r0, ", R1 = ", r1));
  }
  std::vector<Pair> pairs;
  for (int i = 0; i < k; ++i) pairs.push_back({0, i, r0, r1, 1});
  return ExperimentInstance::Create(1, std::move(pairs));
}

absl::StatusOr<ExperimentInstance> BuildDominatingTreatment(
    std::span<const Money> b0, std::span<const Money> b1) {
  if (b0.empty() || b0.size() != b1.size()) {
    return absl::InvalidArgumentError(
        "dominating_treatment needs equally sized, non-empty bid vectors");
  }
  for (size_t i = 1; i < b1.size(); ++i) {
    if (!(b1[i - 1] > b1[i])) {
      return absl::InvalidArgumentError(
          "ordering \"B_i(1) > B_j(1) if i < j\" violated");
    }
  }
  const Money min_b1 = *std::min_element(b1.begin(), b1.end());
  const Money max_b0 = *std::max_element(b0.begin(), b0.end());
  if (!(min_b1 > max_b0)) {
    return absl::InvalidArgumentError(
        "ordering \"B_i(1) > B_j(0) for all i, j\" violated");
  }
  std::vector<Pair> pairs;
  for (size_t i = 0; i < b0.size(); ++i) {
    pairs.push_back({0, static_cast<int>(i), b0[i], b1[i], 1});
  }
  return ExperimentInstance::Create(1, std::move(pairs));
}

nlohmann::json InstanceToJson(const ExperimentInstance& instance) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const Pair& p : instance.pairs()) {
    pairs.push_back({{"q", p.query}, {"a", p.advertiser}, {"b0", p.b0},
                     {"b1", p.b1}, {"x", p.x}});
  }
  return {{"queries", instance.num_queries()}, {"pairs", std::move(pairs)}};
}

absl::StatusOr<ExperimentInstance> InstanceFromJson(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("queries") || !j.contains("pairs")) {
      return absl::InvalidArgumentError(
          "instance JSON needs \"queries\" and \"pairs\"");
    }
    std::vector<Pair> pairs;
    for (const auto& e : j.at("pairs")) {
      Pair p;
      p.query = e.at("q").get<int>();
      p.advertiser = e.at("a").get<int>();
      p.b0 = e.at("b0").get<double>();
      p.b1 = e.at("b1").get<double>();
      p.x = e.value("x", 1);
      pairs.push_back(p);
    }
    return ExperimentInstance::Create(j.at("queries").get<int>(), std::move(pairs));
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("instance JSON: ", e.what()));
  }
}

}  // namespace auctionlab
