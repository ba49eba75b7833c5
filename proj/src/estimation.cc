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

#include "auctionlab/estimation.h"

#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "auctionlab/payments.h"

namespace auctionlab {
namespace {

absl::StatusOr<double> ArmWeight(const Assignment& z, int i,
                                 WeightingConvention convention) {
  if (convention == WeightingConvention::kUnweighted) return z.z[i] ? 1.0 : -1.0;
  const double p = z.p[i];
  if (!(p > 0.0 && p < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("pair ", i, ": inclusion probability ", p, " not in (0, 1)"));
  }
  return z.z[i] ? 1.0 / p : -1.0 / (1.0 - p);
}

absl::Status CheckLengths(const Assignment& z, std::span<const Money> y) {
  if (z.z.size() != y.size() || z.p.size() != y.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "assignment (", z.z.size(), ") and payments (", y.size(),
        ") differ in length"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Money> HtTotal(const Assignment& z, std::span<const Money> y,
                              WeightingConvention convention) {
  if (auto s = CheckLengths(z, y); !s.ok()) return s;
  Money total = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    absl::StatusOr<double> w = ArmWeight(z, static_cast<int>(i), convention);
    if (!w.ok()) return w.status();
    total += *w * y[i];
  }
  return total;
}

absl::StatusOr<Money> HtAdvertiser(const ExperimentInstance& instance,
                                   const Assignment& z, std::span<const Money> y,
                                   int advertiser, WeightingConvention convention) {
  if (auto s = CheckLengths(z, y); !s.ok()) return s;
  if (static_cast<int>(y.size()) != instance.num_pairs()) {
    return absl::InvalidArgumentError("payments do not match the instance");
  }
  if (advertiser < 0 || advertiser >= instance.num_advertisers()) {
    return absl::InvalidArgumentError(absl::StrCat("unknown advertiser ", advertiser));
  }
  Money total = 0.0;
  for (int i : instance.pairs_of_advertiser(advertiser)) {
    absl::StatusOr<double> w = ArmWeight(z, i, convention);
    if (!w.ok()) return w.status();
    total += *w * y[i];
  }
  return total;
}

absl::StatusOr<EffectReport> TrueEffects(const ExperimentInstance& instance,
                                         const QuotaConfig& quota,
                                         const EffectOptions& options,
                                         Stream& stream) {
  if (auto s = quota.Validate(instance.num_advertisers()); !s.ok()) return s;
  const int n = instance.num_pairs();
  const int num_adv = instance.num_advertisers();
  const std::vector<uint8_t> all_one(n, 1), all_zero(n, 0);

  EffectReport report;
  report.tau_a.assign(num_adv, 0.0);
  report.tau_star_a.assign(num_adv, 0.0);

  std::vector<Money> y1, y0;
  auto realize = [&](const std::vector<uint8_t>& z, const std::vector<uint8_t>& w,
                     std::vector<Money>& y) {
    return RealizePaymentsInto(instance, z, w, options.mechanism, options.tie,
                               &stream, y);
  };

  // tau: nobody is throttled.
  if (auto s = realize(all_one, all_one, y1); !s.ok()) return s;
  if (auto s = realize(all_zero, all_one, y0); !s.ok()) return s;
  report.tau = TotalRevenue(y1) - TotalRevenue(y0);
  for (int a = 0; a < num_adv; ++a) {
    report.tau_a[a] =
        AdvertiserRevenue(instance, y1, a) - AdvertiserRevenue(instance, y0, a);
  }

  const QuotaConfig world_quota = CounterfactualQuota(quota);
  MaskSampler sampler(instance, world_quota);
  std::vector<uint8_t> w1, w0;

  const bool deterministic = world_quota.mode == QuotaMode::kNone;
  if (deterministic) {
    sampler.Draw(all_one, options.throttle, stream, w1);
    sampler.Draw(all_zero, options.throttle, stream, w0);
    if (auto s = realize(all_one, w1, y1); !s.ok()) return s;
    if (auto s = realize(all_zero, w0, y0); !s.ok()) return s;
    report.tau_star = TotalRevenue(y1) - TotalRevenue(y0);
    for (int a = 0; a < num_adv; ++a) {
      report.tau_star_a[a] =
          AdvertiserRevenue(instance, y1, a) - AdvertiserRevenue(instance, y0, a);
    }
    report.tau_star_se = 0.0;
    report.n_mc = 0;
    return report;
  }

  if (options.n_mc < 1) {
    return absl::InvalidArgumentError("n_mc must be >= 1 when throttling is active");
  }
  double mean = 0.0, m2 = 0.0;
  for (int r = 0; r < options.n_mc; ++r) {
    if (options.coupled_masks) {
      const uint64_t seed = stream.engine()();
      Stream s1(seed), s0(seed);
      sampler.Draw(all_one, options.throttle, s1, w1);
      sampler.Draw(all_zero, options.throttle, s0, w0);
    } else {
      sampler.Draw(all_one, options.throttle, stream, w1);
      sampler.Draw(all_zero, options.throttle, stream, w0);
    }
    if (auto s = realize(all_one, w1, y1); !s.ok()) return s;
    if (auto s = realize(all_zero, w0, y0); !s.ok()) return s;
    const double d = TotalRevenue(y1) - TotalRevenue(y0);
    // Welford update.
    const double delta = d - mean;
    mean += delta / (r + 1);
    m2 += delta * (d - mean);
    for (int a = 0; a < num_adv; ++a) {
      report.tau_star_a[a] +=
          AdvertiserRevenue(instance, y1, a) - AdvertiserRevenue(instance, y0, a);
    }
  }
  for (auto& t : report.tau_star_a) t /= options.n_mc;
  report.tau_star = mean;
  report.n_mc = options.n_mc;
  report.tau_star_se = options.n_mc > 1
                           ? std::sqrt(m2 / (options.n_mc - 1) / options.n_mc)
                           : std::numeric_limits<double>::quiet_NaN();
  return report;
}

absl::StatusOr<SummaryStats> Summarize(std::span<const double> estimates,
                                       Money tau_star, Money tau_star_se) {
  if (estimates.size() < 2) {
    return absl::InvalidArgumentError("summary needs at least two estimates");
  }
  SummaryStats s;
  s.n = static_cast<int>(estimates.size());
  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= s.n;
  double ss = 0.0;
  for (double e : estimates) ss += (e - mean) * (e - mean);
  s.mean_est = mean;
  s.bias = mean - tau_star;
  if (tau_star != 0.0) s.relative_bias = s.bias / tau_star;
  s.variance = ss / (s.n - 1);
  s.se_of_mean = std::sqrt(s.variance / s.n);
  s.bias_se = std::hypot(s.se_of_mean, tau_star_se);
  return s;
}

std::optional<double> VarianceRatio(double numerator, double denominator) {
  if (!std::isfinite(numerator) || !std::isfinite(denominator) || denominator == 0.0) {
    return std::nullopt;
  }
  return numerator / denominator;
}

absl::string_view ConventionName(WeightingConvention c) {
  return c == WeightingConvention::kHorvitzThompson ? "horvitz_thompson" : "unweighted";
}

absl::StatusOr<WeightingConvention> ParseConvention(absl::string_view name) {
  if (name == "horvitz_thompson") return WeightingConvention::kHorvitzThompson;
  if (name == "unweighted") return WeightingConvention::kUnweighted;
  return absl::InvalidArgumentError(absl::StrCat("unknown convention '", name, "'"));
}

}  // namespace auctionlab
