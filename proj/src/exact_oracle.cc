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

#include "auctionlab/exact_oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "boost/multiprecision/cpp_int.hpp"

namespace auctionlab {
namespace {

using Rational = boost::multiprecision::cpp_rational;
using boost::multiprecision::cpp_int;

constexpr uint64_t kSaturated = std::numeric_limits<uint64_t>::max();

uint64_t SaturatingMul(uint64_t a, uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

// n choose k, saturating at kSaturated.
uint64_t Binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kSaturated) return kSaturated;
  }
  return static_cast<uint64_t>(r);
}

Rational ExactFromDouble(double d) {
  if (d == 0.0) return Rational(0);
  int exp = 0;
  const double m = std::frexp(d, &exp);
  const auto mant = static_cast<int64_t>(std::ldexp(m, 53));
  exp -= 53;
  cpp_int num = mant;
  if (exp >= 0) return Rational(num << exp);
  return Rational(num, cpp_int(1) << -exp);
}

// Neumaier-compensated summation.
class CompensatedSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double Total() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <typename Num>
struct Arith;

template <>
struct Arith<double> {
  using Sum = CompensatedSum;
  static double FromDouble(double d) { return d; }
  static double Ratio(uint64_t a, uint64_t b) {
    return static_cast<double>(a) / static_cast<double>(b);
  }
  static void Add(Sum& s, double x) { s.Add(x); }
  static double Total(const Sum& s) { return s.Total(); }
};

template <>
struct Arith<Rational> {
  using Sum = Rational;
  static Rational FromDouble(double d) { return ExactFromDouble(d); }
  static Rational Ratio(uint64_t a, uint64_t b) {
    return Rational(cpp_int(a), cpp_int(b));
  }
  static void Add(Sum& s, const Rational& x) { s += x; }
  static Rational Total(const Sum& s) { return s; }
};

// A uniformly chosen subset of `keep` pairs out of `pool`.
struct Group {
  std::vector<int> pool;
  int keep = 0;
};

// Throttle structure for one assignment: pairs fixed on or off in `base`
// plus independent uniform-subset groups.
struct MaskSpace {
  std::vector<uint8_t> base;
  std::vector<Group> groups;
  uint64_t count = 1;
};

MaskSpace BuildMaskSpace(const ExperimentInstance& instance,
                         const std::vector<uint8_t>& z, const QuotaConfig& quota,
                         ThrottleKind kind) {
  MaskSpace space;
  const int n = instance.num_pairs();
  auto eligible = [&](int i) {
    return !(kind == ThrottleKind::kQuotaTreatment && z[i] && instance.pair(i).x == 0);
  };
  space.base.assign(n, 0);
  if (quota.mode == QuotaMode::kNone) {
    for (int i = 0; i < n; ++i) space.base[i] = eligible(i) ? 1 : 0;
    return space;
  }
  for (int a = 0; a < instance.num_advertisers(); ++a) {
    Group treated, control;
    for (int i : instance.pairs_of_advertiser(a)) {
      if (!eligible(i)) continue;
      if (quota.mode == QuotaMode::kSplit && !z[i]) {
        control.pool.push_back(i);
      } else {
        treated.pool.push_back(i);
      }
    }
    if (quota.mode == QuotaMode::kJoint) {
      treated.keep = std::min<int>(quota.total[a], treated.pool.size());
      space.groups.push_back(std::move(treated));
    } else {
      treated.keep = std::min<int>(quota.treated[a], treated.pool.size());
      control.keep = std::min<int>(quota.control[a], control.pool.size());
      space.groups.push_back(std::move(treated));
      space.groups.push_back(std::move(control));
    }
  }
  for (const Group& g : space.groups) {
    space.count = SaturatingMul(space.count, Binomial(g.pool.size(), g.keep));
  }
  return space;
}

// Advances a k-combination of {0..n-1} in lexicographic order. Returns false
// (after resetting to the first combination) when it wraps around.
bool NextCombination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  std::iota(c.begin(), c.end(), 0);
  return false;
}

void ForEachMask(const MaskSpace& space,
                 const std::function<void(const std::vector<uint8_t>&)>& fn) {
  std::vector<std::vector<int>> combos(space.groups.size());
  for (size_t g = 0; g < space.groups.size(); ++g) {
    combos[g].resize(space.groups[g].keep);
    std::iota(combos[g].begin(), combos[g].end(), 0);
  }
  std::vector<uint8_t> w;
  while (true) {
    w = space.base;
    for (size_t g = 0; g < space.groups.size(); ++g) {
      for (int c : combos[g]) w[space.groups[g].pool[c]] = 1;
    }
    fn(w);
    size_t g = 0;
    for (; g < space.groups.size(); ++g) {
      if (NextCombination(combos[g], space.groups[g].pool.size())) break;
    }
    if (g == space.groups.size()) return;
  }
}

// Calls fn(unit_arms, treated_units) for every assignment of the pool the
// scheme can produce.
void ForEachUnitAssignment(const RandomizationScheme& scheme, int units,
                           const std::function<void(const std::vector<uint8_t>&, int)>& fn) {
  std::vector<uint8_t> arms(units, 0);
  if (scheme.balanced()) {
    const int k = units / 2;
    std::vector<int> c(k);
    std::iota(c.begin(), c.end(), 0);
    do {
      std::fill(arms.begin(), arms.end(), 0);
      for (int u : c) arms[u] = 1;
      fn(arms, k);
    } while (NextCombination(c, units));
    return;
  }
  const uint64_t total = uint64_t{1} << units;
  for (uint64_t bits = 0; bits < total; ++bits) {
    int k = 0;
    for (int u = 0; u < units; ++u) {
      arms[u] = (bits >> u) & 1;
      k += arms[u];
    }
    fn(arms, k);
  }
}

uint64_t AssignmentCount(const RandomizationScheme& scheme, int units) {
  if (scheme.balanced()) return Binomial(units, units / 2);
  return units >= 64 ? kSaturated : (uint64_t{1} << units);
}

std::vector<uint8_t> ExpandToPairs(const ExperimentInstance& instance,
                                   const RandomizationScheme& scheme,
                                   const std::vector<uint8_t>& arms) {
  if (!scheme.query_level()) return arms;
  std::vector<uint8_t> z(instance.num_pairs());
  for (int i = 0; i < instance.num_pairs(); ++i) z[i] = arms[instance.pair(i).query];
  return z;
}

// Exact evaluation of payments weighted per pair. With a lowest_id tie rule
// the lowest tied index wins; with seeded_random the price is split equally
// among tied top bidders, which is the expectation over a uniform tie-break.
template <typename Num>
class Evaluator {
 public:
  Evaluator(const ExperimentInstance& instance, Mechanism mechanism, TieRule tie)
      : instance_(instance), mechanism_(mechanism), tie_(tie) {}

  // sum_i weight_i * payment_i. An empty weight vector means weight 1.
  Num Weighted(const std::vector<uint8_t>& z, const std::vector<uint8_t>& w,
               const std::vector<Num>& weights) const {
    Num total = 0;
    for (int q = 0; q < instance_.num_queries(); ++q) {
      int best = -1, ties = 0, bidders = 0;
      double best_bid = 0.0, second_bid = 0.0;
      for (int i : instance_.pairs_of_query(q)) {
        if (!w[i]) continue;
        const double bid = z[i] ? instance_.pair(i).b1 : instance_.pair(i).b0;
        ++bidders;
        if (best < 0 || bid > best_bid) {
          if (best >= 0) second_bid = best_bid;
          best = i;
          best_bid = bid;
          ties = 1;
        } else if (bid == best_bid) {
          second_bid = bid;
          ++ties;
        } else {
          second_bid = std::max(second_bid, bid);
        }
      }
      if (best < 0) continue;
      const bool second = mechanism_ == Mechanism::kSecondPrice && bidders > 1;
      const Num price = Arith<Num>::FromDouble(second ? second_bid : best_bid);
      if (tie_ == TieRule::kLowestId || ties == 1) {
        total += weights.empty() ? price : weights[best] * price;
        continue;
      }
      Num weight_sum = 0;
      for (int i : instance_.pairs_of_query(q)) {
        if (!w[i] || (z[i] ? instance_.pair(i).b1 : instance_.pair(i).b0) != best_bid) {
          continue;
        }
        weight_sum += weights.empty() ? Num(1) : weights[i];
      }
      total += weight_sum * price / Num(ties);
    }
    return total;
  }

 private:
  const ExperimentInstance& instance_;
  Mechanism mechanism_;
  TieRule tie_;
};

template <typename Num>
struct Expectations {
  Num expected_estimate = 0;
  Num tau = 0;
  Num tau_star = 0;
  double probability_mass = 0.0;
};

struct Plan {
  uint64_t n_assignments = 0;
  uint64_t n_states = 0;
};

absl::StatusOr<Plan> PlanEnumeration(const ExperimentInstance& instance,
                                     const ExperimentDesign& design,
                                     const EnumerationBudget& budget) {
  const int units = PoolSize(design.scheme, instance);
  Plan plan;
  plan.n_assignments = AssignmentCount(design.scheme, units);
  if (plan.n_assignments > budget.max_assignments) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "instance too large to enumerate: ", design.scheme.Name(), " over ", units,
        " units has more than ", budget.max_assignments, " assignments"));
  }
  absl::Status status;
  uint64_t states = 0;
  auto account = [&](uint64_t masks) {
    if (masks > budget.max_masks_per_assignment && status.ok()) {
      status = absl::ResourceExhaustedError(absl::StrCat(
          "instance too large to enumerate: an assignment admits more than ",
          budget.max_masks_per_assignment, " throttle masks"));
    }
    states = states + masks < states ? kSaturated : states + masks;
  };
  ForEachUnitAssignment(design.scheme, units, [&](const std::vector<uint8_t>& arms, int) {
    if (!status.ok()) return;
    const std::vector<uint8_t> z = ExpandToPairs(instance, design.scheme, arms);
    account(BuildMaskSpace(instance, z, design.quota, design.throttle).count);
  });
  const QuotaConfig world = CounterfactualQuota(design.quota);
  for (bool treated : {true, false}) {
    const std::vector<uint8_t> z(instance.num_pairs(), treated ? 1 : 0);
    account(BuildMaskSpace(instance, z, world, design.throttle).count);
  }
  if (!status.ok()) return status;
  plan.n_states = states;
  return plan;
}

template <typename Num>
Expectations<Num> Enumerate(const ExperimentInstance& instance,
                            const ExperimentDesign& design) {
  using A = Arith<Num>;
  const Evaluator<Num> eval(instance, design.mechanism, design.tie);
  const int units = PoolSize(design.scheme, instance);
  const int n = instance.num_pairs();

  // Marginal inclusion probability and P(assignment with k treated units).
  Num p, q;
  std::vector<Num> p_pow(units + 1), q_pow(units + 1);
  Num balanced_prob = 0;
  if (design.scheme.balanced()) {
    p = A::Ratio(units / 2, units);
    balanced_prob = A::Ratio(1, Binomial(units, units / 2));
  } else {
    p = A::FromDouble(design.scheme.p);
    p_pow[0] = q_pow[0] = 1;
    for (int k = 1; k <= units; ++k) {
      p_pow[k] = p_pow[k - 1] * p;
      q_pow[k] = q_pow[k - 1] * (Num(1) - p);
    }
  }
  q = Num(1) - p;
  const Num treated_weight = Num(1) / p;
  const Num control_weight = Num(-1) / q;

  Expectations<Num> out;
  typename A::Sum outer{};
  CompensatedSum mass;
  std::vector<Num> weights(n);
  ForEachUnitAssignment(design.scheme, units, [&](const std::vector<uint8_t>& arms, int k) {
    const std::vector<uint8_t> z = ExpandToPairs(instance, design.scheme, arms);
    const Num prob =
        design.scheme.balanced() ? balanced_prob : p_pow[k] * q_pow[units - k];
    for (int i = 0; i < n; ++i) {
      if (design.convention == WeightingConvention::kUnweighted) {
        weights[i] = z[i] ? Num(1) : Num(-1);
      } else {
        weights[i] = z[i] ? treated_weight : control_weight;
      }
    }
    const MaskSpace space = BuildMaskSpace(instance, z, design.quota, design.throttle);
    typename A::Sum inner{};
    uint64_t visited = 0;
    ForEachMask(space, [&](const std::vector<uint8_t>& w) {
      A::Add(inner, eval.Weighted(z, w, weights));
      ++visited;
    });
    A::Add(outer, prob * A::Total(inner) / Num(space.count));
    mass.Add(static_cast<double>(prob) * static_cast<double>(visited) /
             static_cast<double>(space.count));
  });
  out.expected_estimate = A::Total(outer);
  out.probability_mass = mass.Total();

  const std::vector<uint8_t> all_one(n, 1), all_zero(n, 0);
  const std::vector<Num> unit;
  out.tau = eval.Weighted(all_one, all_one, unit) - eval.Weighted(all_zero, all_one, unit);

  const QuotaConfig world = CounterfactualQuota(design.quota);
  auto expected_revenue = [&](const std::vector<uint8_t>& z) {
    const MaskSpace space = BuildMaskSpace(instance, z, world, design.throttle);
    typename A::Sum sum{};
    ForEachMask(space, [&](const std::vector<uint8_t>& w) {
      A::Add(sum, eval.Weighted(z, w, unit));
    });
    return Num(A::Total(sum) / Num(space.count));
  };
  out.tau_star = expected_revenue(all_one) - expected_revenue(all_zero);
  return out;
}

OracleValue FromRational(const Rational& r) {
  return {static_cast<double>(r), r.str()};
}

}  // namespace

absl::StatusOr<OracleReport> ExactExpectedEstimate(const ExperimentInstance& instance,
                                                   const ExperimentDesign& design,
                                                   const EnumerationBudget& budget) {
  if (auto s = ValidateScheme(design.scheme); !s.ok()) return s;
  if (auto s = design.quota.Validate(instance.num_advertisers()); !s.ok()) return s;
  if (design.scheme.balanced() && PoolSize(design.scheme, instance) < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat(design.scheme.Name(), " needs a pool of at least 2 units"));
  }
  absl::StatusOr<Plan> plan = PlanEnumeration(instance, design, budget);
  if (!plan.ok()) return plan.status();

  OracleReport report;
  report.n_assignments = plan->n_assignments;
  report.n_states = plan->n_states;
  if (plan->n_states <= budget.max_exact_states) {
    const Expectations<Rational> e = Enumerate<Rational>(instance, design);
    report.expected_estimate = FromRational(e.expected_estimate);
    report.tau = FromRational(e.tau);
    report.tau_star = FromRational(e.tau_star);
    report.bias = FromRational(e.expected_estimate - e.tau);
    report.bias_vs_tau_star = FromRational(e.expected_estimate - e.tau_star);
    report.probability_mass = e.probability_mass;
  } else {
    const Expectations<double> e = Enumerate<double>(instance, design);
    report.expected_estimate = {e.expected_estimate, std::nullopt};
    report.tau = {e.tau, std::nullopt};
    report.tau_star = {e.tau_star, std::nullopt};
    report.bias = {e.expected_estimate - e.tau, std::nullopt};
    report.bias_vs_tau_star = {e.expected_estimate - e.tau_star, std::nullopt};
    report.probability_mass = e.probability_mass;
  }
  if (std::abs(report.probability_mass - 1.0) > 1e-12) {
    return absl::InternalError(absl::StrCat(
        "enumerated probabilities sum to ", report.probability_mass, ", not 1"));
  }
  return report;
}

absl::StatusOr<double> ClosedFormBiasIdentical(int k, double r0, double r1) {
  if (k < 1) return absl::InvalidArgumentError("K must be >= 1");
  if (!(r0 > 0.0) || !(r1 > r0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("need R1 > R0 > 0, got R0 = ", r0, ", R1 = ", r1));
  }
  const double tau = r1 - r0;
  return (std::ldexp(1.0, -k) - 1.0) * tau + (1.0 - std::ldexp(1.0, 1 - k)) * r1;
}

namespace {

absl::StatusOr<GapReport> Gap(const ExperimentInstance& instance,
                              const ExperimentDesign& design,
                              const EnumerationBudget& budget) {
  absl::StatusOr<OracleReport> r = ExactExpectedEstimate(instance, design, budget);
  if (!r.ok()) return r.status();
  GapReport g;
  g.expected_estimate = r->expected_estimate.value;
  g.tau_star = r->tau_star.value;
  g.gap = r->bias_vs_tau_star.value;
  g.oracle = *std::move(r);
  return g;
}

absl::Status RequireQueryLevel(const RandomizationScheme& scheme) {
  if (!scheme.query_level()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "assumptions not satisfied: ", scheme.Name(), " is not query randomization"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<GapReport> VerifyJointQuotaUnbiasedness(
    const ExperimentInstance& instance, const QuotaConfig& quota,
    Mechanism mechanism, const RandomizationScheme& scheme,
    const EnumerationBudget& budget) {
  if (auto s = RequireQueryLevel(scheme); !s.ok()) return s;
  if (quota.mode == QuotaMode::kSplit) {
    return absl::FailedPreconditionError(
        "assumptions not satisfied: joint quotas required, got split");
  }
  if (auto s = quota.Validate(instance.num_advertisers()); !s.ok()) return s;
  if (quota.mode == QuotaMode::kJoint) {
    int saturated = 0, unconstrained = 0, active = 0;
    for (int a = 0; a < instance.num_advertisers(); ++a) {
      const int eligible = instance.eligible_queries(a);
      if (eligible == 0) continue;
      ++active;
      if (eligible > quota.total[a]) ++saturated;
      if (quota.total[a] >= eligible) ++unconstrained;
    }
    if (saturated != active && unconstrained != active) {
      return absl::FailedPreconditionError(absl::StrCat(
          "assumptions not satisfied: ", saturated, " of ", active,
          " advertisers are saturated (N_q[a] > Q[a]); need all or none"));
    }
  }
  ExperimentDesign design;
  design.scheme = scheme;
  design.quota = quota;
  design.mechanism = mechanism;
  return Gap(instance, design, budget);
}

absl::StatusOr<ConditionReport> CheckSplitQuotaConditions(
    const ExperimentInstance& instance, const QuotaConfig& quota,
    const RandomizationScheme& scheme, const EnumerationBudget& budget) {
  if (auto s = RequireQueryLevel(scheme); !s.ok()) return s;
  if (quota.mode != QuotaMode::kSplit) {
    return absl::InvalidArgumentError("split quotas required");
  }
  if (auto s = quota.Validate(instance.num_advertisers()); !s.ok()) return s;
  if (auto s = ValidateScheme(scheme); !s.ok()) return s;
  const int units = instance.num_queries();
  if (scheme.balanced() && units < 2) {
    return absl::InvalidArgumentError("balanced scheme needs at least 2 queries");
  }
  const uint64_t count = AssignmentCount(scheme, units);
  if (count > budget.max_assignments) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "instance too large to enumerate: more than ", budget.max_assignments,
        " assignments"));
  }

  ConditionReport report;
  report.interpretation =
      "proportionality conditions applied to every advertiser (control and "
      "treated); ratios compared by cross-multiplication";
  report.n_assignments = count;
  for (int i = 0; i < instance.num_pairs(); ++i) {
    const Pair& p = instance.pair(i);
    if (p.x == 0 && (p.b0 != 0.0 || p.b1 != 0.0)) {
      report.bid_zero_when_x0 = false;
      report.offending_pair = i;
      break;
    }
  }

  const int num_adv = instance.num_advertisers();
  report.advertisers.resize(num_adv);
  for (int a = 0; a < num_adv; ++a) {
    auto& rec = report.advertisers[a];
    rec.advertiser = a;
    rec.n_pairs = instance.eligible_queries(a);
    for (int i : instance.pairs_of_advertiser(a)) rec.n_covariate += instance.pair(i).x;
    rec.min_control = rec.min_treated_covariate = std::numeric_limits<int>::max();
  }

  ForEachUnitAssignment(scheme, units, [&](const std::vector<uint8_t>& arms, int) {
    for (int a = 0; a < num_adv; ++a) {
      auto& rec = report.advertisers[a];
      int control = 0, treated_covariate = 0;
      for (int i : instance.pairs_of_advertiser(a)) {
        const Pair& p = instance.pair(i);
        if (arms[p.query]) {
          treated_covariate += p.x;
        } else {
          ++control;
        }
      }
      rec.min_control = std::min(rec.min_control, control);
      rec.max_control = std::max(rec.max_control, control);
      rec.min_treated_covariate = std::min(rec.min_treated_covariate, treated_covariate);
      rec.max_treated_covariate = std::max(rec.max_treated_covariate, treated_covariate);
      const int64_t q_total = quota.total[a];
      // Q0 / N0(Z) = Q / N_a  and  Q1 / N1(x=1)(Z) = Q / N_a(x=1).
      const bool control_ok =
          int64_t{quota.control[a]} * rec.n_pairs == q_total * control;
      const bool treated_ok =
          int64_t{quota.treated[a]} * rec.n_covariate == q_total * treated_covariate;
      rec.control_proportional &= control_ok;
      rec.treated_proportional &= treated_ok;
      if ((!control_ok || !treated_ok) && !report.counterexample) {
        report.counterexample = arms;
        report.counterexample_advertiser = a;
      }
    }
  });
  for (const auto& rec : report.advertisers) {
    report.control_proportionality &= rec.control_proportional;
    report.treated_proportionality &= rec.treated_proportional;
  }
  report.all_hold = report.bid_zero_when_x0 && report.control_proportionality &&
                    report.treated_proportionality;
  return report;
}

absl::StatusOr<GapReport> VerifySplitQuotaUnbiasedness(
    const ExperimentInstance& instance, const QuotaConfig& quota,
    Mechanism mechanism, const RandomizationScheme& scheme,
    const EnumerationBudget& budget) {
  if (auto s = RequireQueryLevel(scheme); !s.ok()) return s;
  if (quota.mode != QuotaMode::kSplit) {
    return absl::FailedPreconditionError(
        "assumptions not satisfied: split quotas required");
  }
  ExperimentDesign design;
  design.scheme = scheme;
  design.quota = quota;
  design.throttle = ThrottleKind::kQuotaTreatment;
  design.mechanism = mechanism;
  return Gap(instance, design, budget);
}

}  // namespace auctionlab
