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

#include "auctionlab/sim_engine.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "auctionlab/estimation.h"
#include "auctionlab/parallel.h"
#include "auctionlab/payments.h"
#include "auctionlab/potential_bids.h"
#include "auctionlab/random.h"
#include "auctionlab/randomization.h"
#include "auctionlab/throttling.h"

namespace auctionlab {
namespace {

// Stream tags keep the bid, tau_star and experiment streams of a task apart.
enum StreamTag : uint64_t { kBidsTag = 1, kTauStarTag = 2, kExperimentTag = 3, kMonteCarloTag = 4 };

// FNV-1a of the scheme name, so a scheme's streams do not depend on where it
// sits in the config list.
uint64_t SchemeKey(const RandomizationScheme& scheme) {
  uint64_t h = 1469598103934665603ull;
  for (char c : scheme.Name()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

// Running mean and sum of squared deviations.
struct Welford {
  int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void Add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  void Merge(const Welford& o) {
    if (o.n == 0) return;
    const int64_t total = n + o.n;
    const double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
  double Variance() const {
    return n > 1 ? m2 / (n - 1) : std::numeric_limits<double>::quiet_NaN();
  }
};

std::optional<double> Finite(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  return x;
}

absl::Status CheckBalance(const Assignment& a, const ExperimentInstance& instance) {
  if (!a.scheme.balanced()) return absl::OkStatus();
  const int pool = PoolSize(a.scheme, instance);
  int treated = 0;
  if (a.scheme.query_level()) {
    for (int q = 0; q < instance.num_queries(); ++q) {
      treated += a.z[instance.pairs_of_query(q).front()];
    }
  } else {
    for (uint8_t z : a.z) treated += z;
  }
  if (treated != pool / 2) {
    return absl::InternalError(absl::StrCat(a.scheme.Name(), " drew ", treated,
                                            " treated units out of ", pool));
  }
  return absl::OkStatus();
}

struct Cell {
  QuotaMode mode;
  QuotaConfig quota;
  RandomizationScheme scheme;
};

struct TaskResult {
  absl::Status status;
  double tau_star = 0.0;
  std::vector<Welford> cells;  // one per Cell
  double seconds = 0.0;
};

absl::StatusOr<std::vector<Cell>> BuildCells(const StudyConfig& config,
                                             const Scenario& s) {
  std::vector<Cell> cells;
  for (QuotaMode mode : config.throttle_modes) {
    QuotaConfig quota;
    if (mode == QuotaMode::kJoint) {
      quota = QuotaConfig::UniformJoint(config.n_advertisers, s.quota);
    } else {
      auto split = QuotaConfig::EvenSplit(config.n_advertisers, s.quota);
      if (!split.ok()) return split.status();
      quota = *std::move(split);
    }
    for (const RandomizationScheme& scheme : config.schemes) {
      cells.push_back({mode, quota, scheme});
    }
  }
  return cells;
}

TaskResult RunTask(const StudyConfig& config, const Scenario& s,
                   const std::vector<Cell>& cells, int outer) {
  const auto start = std::chrono::steady_clock::now();
  TaskResult result;
  const uint64_t seed = config.master_seed;
  const int id = s.id;
  ExperimentInstance instance =
      ExperimentInstance::FullyEligible(s.n_queries, config.n_advertisers);
  const int n = instance.num_pairs();

  Stream bid_stream(DeriveStreamKey({seed, kBidsTag, uint64_t(id), uint64_t(outer)}));
  BidDistributionConfig dist{config.mu0, s.mu1, config.v, config.coupling};
  auto bids = DrawPotentialBids(dist, n, bid_stream);
  if (!bids.ok()) {
    result.status = bids.status();
    return result;
  }
  if (s.treatment == TreatmentType::kQuota) bids->b1 = bids->b0;
  if (auto st = instance.SetPotentialBids(bids->b0, bids->b1); !st.ok()) {
    result.status = st;
    return result;
  }
  ThrottleKind kind = ThrottleKind::kStandard;
  if (s.treatment == TreatmentType::kQuota) {
    kind = ThrottleKind::kQuotaTreatment;
    std::vector<int> x(n);
    if (config.covariate_level == CovariateLevel::kQuery) {
      for (int q = 0; q < instance.num_queries(); ++q) {
        const int xq = bid_stream.Bernoulli(*s.p_x) ? 1 : 0;
        for (int i : instance.pairs_of_query(q)) x[i] = xq;
      }
    } else {
      for (int i = 0; i < n; ++i) x[i] = bid_stream.Bernoulli(*s.p_x) ? 1 : 0;
    }
    if (auto st = instance.SetCovariates(x); !st.ok()) {
      result.status = st;
      return result;
    }
  }

  EffectOptions effect_options{kind, config.mechanism, config.tie_rule,
                               config.n_mc_tau_star, config.coupled_tau_star_masks};
  Stream tau_stream(DeriveStreamKey({seed, kTauStarTag, uint64_t(id), uint64_t(outer)}));
  auto effects = TrueEffects(instance,
                             QuotaConfig::UniformJoint(config.n_advertisers, s.quota),
                             effect_options, tau_stream);
  if (!effects.ok()) {
    result.status = effects.status();
    return result;
  }
  result.tau_star = effects->tau_star;

  std::vector<uint8_t> w;
  std::vector<Money> payments;
  result.cells.resize(cells.size());
  for (size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    MaskSampler sampler(instance, cell.quota);
    for (int inner = 0; inner < config.n_assignments_per_draw; ++inner) {
      Stream stream(DeriveStreamKey({seed, kExperimentTag, uint64_t(id), uint64_t(outer),
                                     uint64_t(cell.mode), SchemeKey(cell.scheme),
                                     uint64_t(inner)}));
      auto z = DrawAssignment(cell.scheme, instance, stream);
      if (!z.ok()) {
        result.status = z.status();
        return result;
      }
      if (auto st = CheckBalance(*z, instance); !st.ok()) {
        result.status = st;
        return result;
      }
      sampler.Draw(z->z, kind, stream, w);
      if (auto st = RealizePaymentsInto(instance, z->z, w, config.mechanism,
                                        config.tie_rule, &stream, payments);
          !st.ok()) {
        result.status = st;
        return result;
      }
      auto est = HtTotal(*z, payments, config.convention);
      if (!est.ok()) {
        result.status = est.status();
        return result;
      }
      result.cells[c].Add(*est);
    }
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

StudyRow ReduceCell(const StudyConfig& config, const Scenario& s, const Cell& cell,
                    const std::vector<TaskResult>& tasks, size_t c) {
  StudyRow row;
  row.scenario_id = s.id;
  row.n_queries = s.n_queries;
  row.n_advertisers = config.n_advertisers;
  row.quota_frac = s.quota_frac.ToString();
  row.mu0 = config.mu0;
  row.mu1 = s.mu1;
  row.v = config.v;
  row.p_x = s.p_x;
  row.treatment_type = std::string(TreatmentTypeName(s.treatment));
  row.scheme = cell.scheme.Name();
  row.throttle_mode = std::string(QuotaModeName(cell.mode));
  row.convention = std::string(ConventionName(config.convention));
  row.n_outer = config.n_bid_draws;
  row.n_inner = config.n_assignments_per_draw;
  row.seed = config.master_seed;

  Welford tau, est, within_var;
  for (const TaskResult& t : tasks) {
    tau.Add(t.tau_star);
    est.Add(t.cells[c].mean);
    within_var.Add(t.cells[c].Variance());
    row.runtime_seconds += t.seconds;
  }
  const double n = static_cast<double>(tasks.size());
  row.tau_star = tau.mean;
  row.tau_star_se = Finite(std::sqrt(tau.Variance() / n));
  row.mean_est = est.mean;
  row.bias = est.mean - tau.mean;
  if (tau.mean != 0.0) {
    const double r = row.bias / tau.mean;
    row.rel_bias = Finite(r);
    Welford linearized;
    for (const TaskResult& t : tasks) {
      linearized.Add((t.cells[c].mean - t.tau_star) - r * t.tau_star);
    }
    row.rel_bias_se = Finite(std::sqrt(linearized.Variance() / n) / std::abs(tau.mean));
  }
  if (config.n_assignments_per_draw >= 2) row.variance = Finite(within_var.mean);
  return row;
}

void FillVarianceRatios(std::vector<StudyRow>& rows) {
  std::map<std::pair<int, std::string>, std::optional<double>> baseline;
  const std::string query = RandomizationScheme::QueryBalanced().Name();
  for (const StudyRow& r : rows) {
    if (r.scheme == query) baseline[{r.scenario_id, r.throttle_mode}] = r.variance;
  }
  for (StudyRow& r : rows) {
    auto it = baseline.find({r.scenario_id, r.throttle_mode});
    if (it == baseline.end() || !it->second || !r.variance) continue;
    r.var_ratio = r.scheme == query ? std::optional<double>(1.0)
                                    : VarianceRatio(*r.variance, *it->second);
  }
}

std::string FormatDouble(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string FormatOptional(const std::optional<double>& x) {
  return x ? FormatDouble(*x) : std::string();
}

std::string Quote(absl::string_view field) {
  if (field.find_first_of(",\"\r\n") == absl::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits RFC 4180 text into records of fields.
absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsvRecords(
    absl::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, field_started = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      records.push_back(std::move(record));
      record.clear();
      field.clear();
      field_started = false;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) return absl::InvalidArgumentError("CSV: unterminated quoted field");
  if (field_started || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

template <typename T>
absl::StatusOr<T> ParseNumber(const std::string& s, absl::string_view column) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("CSV: bad value '", s, "' in column ", column));
  }
  return value;
}

absl::StatusOr<std::optional<double>> ParseOptional(const std::string& s,
                                                    absl::string_view column) {
  if (s.empty()) return std::optional<double>();
  auto v = ParseNumber<double>(s, column);
  if (!v.ok()) return v.status();
  return std::optional<double>(*v);
}

}  // namespace

bool StudyRow::SameValues(const StudyRow& o) const {
  auto key = [](const StudyRow& r) {
    return std::tie(r.scenario_id, r.n_queries, r.n_advertisers, r.quota_frac, r.mu0,
                    r.mu1, r.v, r.p_x, r.treatment_type, r.scheme, r.throttle_mode,
                    r.convention, r.n_outer, r.n_inner, r.tau_star, r.tau_star_se,
                    r.mean_est, r.bias, r.rel_bias, r.rel_bias_se, r.variance,
                    r.var_ratio, r.seed);
  };
  return key(*this) == key(o);
}

std::vector<Scenario> EnumerateScenarios(const StudyConfig& config) {
  std::vector<Scenario> out;
  for (TreatmentType t : config.treatment_types) {
    for (int nq : config.n_queries) {
      for (const Fraction& f : config.quota_fractions) {
        const int quota = f.TimesInteger(nq).value_or(0);
        if (t == TreatmentType::kBid) {
          for (double mu1 : config.mu1) {
            out.push_back({static_cast<int>(out.size()), t, nq, f, quota, mu1, std::nullopt});
          }
        } else {
          for (double px : config.p_x) {
            out.push_back({static_cast<int>(out.size()), t, nq, f, quota, config.mu0, px});
          }
        }
      }
    }
  }
  return out;
}

absl::StatusOr<std::vector<StudyRow>> RunStudy(const StudyConfig& config,
                                               const RunOptions& options) {
  if (auto st = ValidateStudyConfig(config); !st.ok()) return st;
  const std::vector<Scenario> scenarios = EnumerateScenarios(config);
  std::vector<std::vector<Cell>> cells;
  for (const Scenario& s : scenarios) {
    auto c = BuildCells(config, s);
    if (!c.ok()) return c.status();
    cells.push_back(*std::move(c));
  }

  const size_t outer = config.n_bid_draws;
  std::vector<TaskResult> results(scenarios.size() * outer);
  ParallelFor(results.size(), options.workers, [&](size_t t) {
    const size_t s = t / outer;
    results[t] = RunTask(config, scenarios[s], cells[s], static_cast<int>(t % outer));
  });
  for (const TaskResult& r : results) {
    if (!r.status.ok()) return r.status;
  }

  std::vector<StudyRow> rows;
  for (size_t s = 0; s < scenarios.size(); ++s) {
    const std::vector<TaskResult> tasks(results.begin() + s * outer,
                                        results.begin() + (s + 1) * outer);
    for (size_t c = 0; c < cells[s].size(); ++c) {
      rows.push_back(ReduceCell(config, scenarios[s], cells[s][c], tasks, c));
    }
  }
  FillVarianceRatios(rows);
  return rows;
}

absl::StatusOr<std::vector<StudyRow>> VarianceRatioStudy(const StudyConfig& config,
                                                         const RunOptions& options) {
  const auto has = [&](const RandomizationScheme& s) {
    return std::find(config.schemes.begin(), config.schemes.end(), s) !=
           config.schemes.end();
  };
  if (!has(RandomizationScheme::QueryBalanced()) ||
      !has(RandomizationScheme::PairBalanced())) {
    return absl::InvalidArgumentError(
        "variance ratio study needs both query_balanced and pair_balanced schemes");
  }
  auto rows = RunStudy(config, options);
  if (!rows.ok()) return rows.status();
  std::vector<StudyRow> out;
  const std::string pair = RandomizationScheme::PairBalanced().Name();
  for (StudyRow& r : *rows) {
    if (r.scheme == pair) out.push_back(std::move(r));
  }
  return out;
}

absl::StatusOr<MonteCarloEstimate> MonteCarloExpectedEstimate(
    const ExperimentInstance& instance, const ExperimentDesign& design,
    int64_t n_draws, uint64_t seed, int workers) {
  if (n_draws < 2) return absl::InvalidArgumentError("need at least 2 draws");
  if (auto st = ValidateScheme(design.scheme); !st.ok()) return st;
  if (auto st = design.quota.Validate(instance.num_advertisers()); !st.ok()) return st;
  constexpr int64_t kChunk = 10000;
  const int64_t chunks = (n_draws + kChunk - 1) / kChunk;
  std::vector<Welford> parts(chunks);
  std::vector<absl::Status> status(chunks);
  ParallelFor(chunks, workers, [&](size_t c) {
    Stream stream(DeriveStreamKey({seed, kMonteCarloTag, uint64_t(c)}));
    MaskSampler sampler(instance, design.quota);
    std::vector<uint8_t> w;
    std::vector<Money> payments;
    const int64_t end = std::min<int64_t>(n_draws, (c + 1) * kChunk);
    for (int64_t d = c * kChunk; d < end; ++d) {
      auto z = DrawAssignment(design.scheme, instance, stream);
      if (!z.ok()) {
        status[c] = z.status();
        return;
      }
      sampler.Draw(z->z, design.throttle, stream, w);
      if (auto st = RealizePaymentsInto(instance, z->z, w, design.mechanism, design.tie,
                                        &stream, payments);
          !st.ok()) {
        status[c] = st;
        return;
      }
      auto est = HtTotal(*z, payments, design.convention);
      if (!est.ok()) {
        status[c] = est.status();
        return;
      }
      parts[c].Add(*est);
    }
  });
  Welford total;
  for (int64_t c = 0; c < chunks; ++c) {
    if (!status[c].ok()) return status[c];
    total.Merge(parts[c]);
  }
  return MonteCarloEstimate{total.mean, std::sqrt(total.Variance() / total.n), total.n};
}

std::string StudyRowsToCsv(const std::vector<StudyRow>& rows) {
  std::string out(kStudyCsvHeader);
  out += '\n';
  for (const StudyRow& r : rows) {
    const std::vector<std::string> fields = {
        std::to_string(r.scenario_id), std::to_string(r.n_queries),
        std::to_string(r.n_advertisers), r.quota_frac, FormatDouble(r.mu0),
        FormatDouble(r.mu1), FormatDouble(r.v), FormatOptional(r.p_x),
        r.treatment_type, r.scheme, r.throttle_mode, r.convention,
        std::to_string(r.n_outer), std::to_string(r.n_inner), FormatDouble(r.tau_star),
        FormatOptional(r.tau_star_se), FormatDouble(r.mean_est), FormatDouble(r.bias),
        FormatOptional(r.rel_bias), FormatOptional(r.rel_bias_se),
        FormatOptional(r.variance), FormatOptional(r.var_ratio), std::to_string(r.seed)};
    std::vector<std::string> quoted;
    quoted.reserve(fields.size());
    for (const std::string& f : fields) quoted.push_back(Quote(f));
    out += absl::StrJoin(quoted, ",");
    out += '\n';
  }
  return out;
}

absl::StatusOr<std::vector<StudyRow>> StudyRowsFromCsv(absl::string_view text) {
  auto records = ParseCsvRecords(text);
  if (!records.ok()) return records.status();
  if (records->empty()) return absl::InvalidArgumentError("CSV: missing header row");
  const std::string header = absl::StrJoin((*records)[0], ",");
  if (header != kStudyCsvHeader) {
    return absl::InvalidArgumentError(
        absl::StrCat("CSV: unexpected header '", header, "'"));
  }
  const size_t width = (*records)[0].size();
  std::vector<StudyRow> rows;
  for (size_t i = 1; i < records->size(); ++i) {
    const std::vector<std::string>& f = (*records)[i];
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != width) {
      return absl::InvalidArgumentError(absl::StrCat(
          "CSV: record ", i, " has ", f.size(), " fields, expected ", width));
    }
    StudyRow r;
    absl::Status st;
    auto integer = [&](size_t k, absl::string_view col, auto& out) {
      auto v = ParseNumber<std::remove_reference_t<decltype(out)>>(f[k], col);
      if (!v.ok() && st.ok()) st = v.status();
      if (v.ok()) out = *v;
    };
    auto number = [&](size_t k, absl::string_view col, double& out) {
      auto v = ParseNumber<double>(f[k], col);
      if (!v.ok() && st.ok()) st = v.status();
      if (v.ok()) out = *v;
    };
    auto optional = [&](size_t k, absl::string_view col, std::optional<double>& out) {
      auto v = ParseOptional(f[k], col);
      if (!v.ok() && st.ok()) st = v.status();
      if (v.ok()) out = *v;
    };
    integer(0, "scenario_id", r.scenario_id);
    integer(1, "n_queries", r.n_queries);
    integer(2, "n_advertisers", r.n_advertisers);
    r.quota_frac = f[3];
    number(4, "mu0", r.mu0);
    number(5, "mu1", r.mu1);
    number(6, "v", r.v);
    optional(7, "p_x", r.p_x);
    r.treatment_type = f[8];
    r.scheme = f[9];
    r.throttle_mode = f[10];
    r.convention = f[11];
    integer(12, "n_outer", r.n_outer);
    integer(13, "n_inner", r.n_inner);
    number(14, "tau_star", r.tau_star);
    optional(15, "tau_star_se", r.tau_star_se);
    number(16, "mean_est", r.mean_est);
    number(17, "bias", r.bias);
    optional(18, "rel_bias", r.rel_bias);
    optional(19, "rel_bias_se", r.rel_bias_se);
    optional(20, "variance", r.variance);
    optional(21, "var_ratio", r.var_ratio);
    integer(22, "seed", r.seed);
    if (!st.ok()) return st;
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json StudyRowsToJson(const StudyConfig& config,
                               const std::vector<StudyRow>& rows) {
  auto opt = [](const std::optional<double>& x) {
    return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
  };
  nlohmann::json out_rows = nlohmann::json::array();
  for (const StudyRow& r : rows) {
    out_rows.push_back({{"scenario_id", r.scenario_id},
                        {"n_queries", r.n_queries},
                        {"n_advertisers", r.n_advertisers},
                        {"quota_frac", r.quota_frac},
                        {"mu0", r.mu0},
                        {"mu1", r.mu1},
                        {"v", r.v},
                        {"p_x", opt(r.p_x)},
                        {"treatment_type", r.treatment_type},
                        {"scheme", r.scheme},
                        {"throttle_mode", r.throttle_mode},
                        {"convention", r.convention},
                        {"n_outer", r.n_outer},
                        {"n_inner", r.n_inner},
                        {"tau_star", r.tau_star},
                        {"tau_star_se", opt(r.tau_star_se)},
                        {"mean_est", r.mean_est},
                        {"bias", r.bias},
                        {"rel_bias", opt(r.rel_bias)},
                        {"rel_bias_se", opt(r.rel_bias_se)},
                        {"variance", opt(r.variance)},
                        {"var_ratio", opt(r.var_ratio)},
                        {"seed", r.seed}});
  }
  return {{"config", StudyConfigToJson(config)}, {"rows", out_rows}};
}

}  // namespace auctionlab
