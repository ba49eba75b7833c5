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

#include "auctionlab/randomization.h"

#include <charconv>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace auctionlab {
namespace {

absl::string_view KindName(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kQueryBalanced: return "query_balanced";
    case SchemeKind::kQueryBernoulli: return "query_bernoulli";
    case SchemeKind::kPairBalanced: return "pair_balanced";
    case SchemeKind::kPairBernoulli: return "pair_bernoulli";
  }
  return "?";
}

// Treats exactly floor(n / 2) of the n units.
std::vector<uint8_t> DrawBalanced(int n, Stream& stream) {
  std::vector<int> units(n);
  std::iota(units.begin(), units.end(), 0);
  const size_t k = n / 2;
  stream.ShuffleFront(std::span<int>(units), k);
  std::vector<uint8_t> arms(n, 0);
  for (size_t i = 0; i < k; ++i) arms[units[i]] = 1;
  return arms;
}

std::vector<uint8_t> DrawBernoulli(int n, double p, Stream& stream) {
  std::vector<uint8_t> arms(n);
  for (auto& a : arms) a = stream.Bernoulli(p) ? 1 : 0;
  return arms;
}

}  // namespace

std::string RandomizationScheme::Name() const {
  if (balanced()) return std::string(KindName(kind));
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), p);
  return absl::StrCat(KindName(kind), "(", absl::string_view(buf, res.ptr - buf), ")");
}

absl::Status ValidateScheme(const RandomizationScheme& scheme) {
  if (!scheme.balanced() && !(scheme.p > 0.0 && scheme.p < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Bernoulli scheme needs p in (0, 1), got ", scheme.p));
  }
  return absl::OkStatus();
}

absl::StatusOr<RandomizationScheme> ParseScheme(absl::string_view text) {
  absl::string_view head = text;
  absl::string_view arg;
  if (auto open = text.find('('); open != absl::string_view::npos) {
    if (text.back() != ')') {
      return absl::InvalidArgumentError(absl::StrCat("bad scheme '", text, "'"));
    }
    head = text.substr(0, open);
    arg = text.substr(open + 1, text.size() - open - 2);
  }
  RandomizationScheme scheme;
  if (head == "query_balanced") {
    scheme.kind = SchemeKind::kQueryBalanced;
  } else if (head == "pair_balanced") {
    scheme.kind = SchemeKind::kPairBalanced;
  } else if (head == "query_bernoulli") {
    scheme.kind = SchemeKind::kQueryBernoulli;
  } else if (head == "pair_bernoulli") {
    scheme.kind = SchemeKind::kPairBernoulli;
  } else {
    return absl::InvalidArgumentError(absl::StrCat("unknown scheme '", text, "'"));
  }
  if (!arg.empty()) {
    if (scheme.balanced()) {
      return absl::InvalidArgumentError(
          absl::StrCat("balanced scheme takes no probability: '", text, "'"));
    }
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), scheme.p);
    if (ec != std::errc() || ptr != arg.data() + arg.size()) {
      return absl::InvalidArgumentError(absl::StrCat("bad probability in '", text, "'"));
    }
  }
  if (auto s = ValidateScheme(scheme); !s.ok()) return s;
  return scheme;
}

int PoolSize(const RandomizationScheme& scheme, const ExperimentInstance& instance) {
  return scheme.query_level() ? instance.num_queries() : instance.num_pairs();
}

absl::StatusOr<double> MarginalProbability(const RandomizationScheme& scheme,
                                           const ExperimentInstance& instance) {
  if (auto s = ValidateScheme(scheme); !s.ok()) return s;
  if (!scheme.balanced()) return scheme.p;
  const int n = PoolSize(scheme, instance);
  if (n < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        scheme.Name(), " needs a pool of at least 2 units, got ", n));
  }
  return static_cast<double>(n / 2) / n;
}

Assignment QueryLevelAssignment(const ExperimentInstance& instance,
                                const std::vector<uint8_t>& query_arms,
                                const RandomizationScheme& scheme, double p) {
  Assignment out;
  out.scheme = scheme;
  out.z.resize(instance.num_pairs());
  out.p.assign(instance.num_pairs(), p);
  for (int i = 0; i < instance.num_pairs(); ++i) {
    out.z[i] = query_arms[instance.pair(i).query];
  }
  return out;
}

Assignment UniformAssignment(const ExperimentInstance& instance, bool treated) {
  Assignment out;
  out.z.assign(instance.num_pairs(), treated ? 1 : 0);
  out.p.assign(instance.num_pairs(), 0.5);
  return out;
}

absl::StatusOr<Assignment> DrawAssignment(const RandomizationScheme& scheme,
                                          const ExperimentInstance& instance,
                                          Stream& stream) {
  absl::StatusOr<double> p = MarginalProbability(scheme, instance);
  if (!p.ok()) return p.status();
  const int n = PoolSize(scheme, instance);
  std::vector<uint8_t> arms =
      scheme.balanced() ? DrawBalanced(n, stream) : DrawBernoulli(n, scheme.p, stream);
  if (scheme.query_level()) return QueryLevelAssignment(instance, arms, scheme, *p);
  Assignment out;
  out.scheme = scheme;
  out.z = std::move(arms);
  out.p.assign(instance.num_pairs(), *p);
  return out;
}

}  // namespace auctionlab
