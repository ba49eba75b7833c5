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

#include "auctionlab/cli.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "auctionlab/design.h"
#include "auctionlab/exact_oracle.h"
#include "auctionlab/instance.h"
#include "auctionlab/parallel.h"
#include "auctionlab/sim_engine.h"
#include "auctionlab/study_config.h"

namespace auctionlab {
namespace {

std::string Num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string Value(const OracleValue& v) {
  std::string s = Num(v.value);
  if (v.exact) absl::StrAppend(&s, "  (exact ", *v.exact, ")");
  return s;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::StatusOr<nlohmann::json> ReadJson(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  try {
    return nlohmann::json::parse(*text);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": ", e.what()));
  }
}

absl::StatusOr<std::vector<double>> ParseList(const std::string& text) {
  std::vector<double> out;
  for (absl::string_view part : absl::StrSplit(text, ',')) {
    try {
      size_t used = 0;
      const std::string s(part);
      out.push_back(std::stod(s, &used));
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      return absl::InvalidArgumentError(absl::StrCat("bad number list '", text, "'"));
    }
  }
  return out;
}

void PrintOracle(const OracleReport& r, std::ostream& out) {
  out << "E[estimate]        " << Value(r.expected_estimate) << "\n"
      << "tau                " << Value(r.tau) << "\n"
      << "tau_star           " << Value(r.tau_star) << "\n"
      << "bias (vs tau)      " << Value(r.bias) << "\n"
      << "gap (vs tau_star)  " << Value(r.bias_vs_tau_star) << "\n"
      << "assignments        " << r.n_assignments << "\n"
      << "states             " << r.n_states << "\n";
}

absl::Status ToyReport(const ExperimentInstance& instance, std::ostream& out,
                       std::optional<double> closed_form) {
  ExperimentDesign d;
  d.scheme = RandomizationScheme::PairBernoulli(0.5);
  d.convention = WeightingConvention::kUnweighted;
  auto unweighted = ExactExpectedEstimate(instance, d);
  if (!unweighted.ok()) return unweighted.status();
  d.convention = WeightingConvention::kHorvitzThompson;
  auto ht = ExactExpectedEstimate(instance, d);
  if (!ht.ok()) return ht.status();
  out << "scheme                   " << d.scheme.Name() << ", no throttling\n"
      << "tau                      " << Value(unweighted->tau) << "\n"
      << "bias (unweighted)        " << Value(unweighted->bias) << "\n"
      << "bias (horvitz_thompson)  " << Value(ht->bias) << "\n";
  if (closed_form) out << "closed form bias         " << Num(*closed_form) << "\n";
  return absl::OkStatus();
}

void PrintConditions(const ConditionReport& r, std::ostream& out) {
  out << "split quota conditions (" << r.interpretation << ")\n"
      << "  bids zero where x = 0   " << (r.bid_zero_when_x0 ? "yes" : "no");
  if (r.offending_pair) out << " (pair " << *r.offending_pair << ")";
  out << "\n  control proportional    " << (r.control_proportionality ? "yes" : "no")
      << "\n  treated proportional    " << (r.treated_proportionality ? "yes" : "no")
      << "\n  all hold over " << r.n_assignments << " assignments: "
      << (r.all_hold ? "yes" : "no") << "\n";
  if (r.counterexample) {
    out << "  counterexample (query arms) ";
    for (uint8_t z : *r.counterexample) out << int(z);
    out << " for advertiser " << r.counterexample_advertiser.value_or(-1) << "\n";
  }
}

struct OracleFlags {
  std::string instance_path;
  std::string scheme, quota_mode, quota, throttle, mechanism, tie, convention;
};

absl::Status CmdOracle(const OracleFlags& f, std::ostream& out) {
  auto j = ReadJson(f.instance_path);
  if (!j.ok()) return j.status();
  auto instance = InstanceFromJson(*j);
  if (!instance.ok()) return instance.status();
  nlohmann::json design_json = j->value("experiment", nlohmann::json::object());
  if (!design_json.is_object()) {
    return absl::InvalidArgumentError("\"experiment\" must be an object");
  }
  auto set = [&](const char* key, const std::string& v) {
    if (!v.empty()) design_json[key] = v;
  };
  set("scheme", f.scheme);
  set("throttle", f.throttle);
  set("mechanism", f.mechanism);
  set("tie", f.tie);
  set("convention", f.convention);
  if (!f.quota_mode.empty() || !f.quota.empty()) {
    nlohmann::json& q = design_json["quota"];
    if (!q.is_object()) q = nlohmann::json::object();
    if (!f.quota_mode.empty()) q["mode"] = f.quota_mode;
    if (!f.quota.empty()) {
      int n = 0;
      auto [ptr, ec] = std::from_chars(f.quota.data(), f.quota.data() + f.quota.size(), n);
      if (ec == std::errc() && ptr == f.quota.data() + f.quota.size()) {
        q["quota"] = n;
      } else {
        q["quota"] = f.quota;
      }
      q.erase("treated");
      q.erase("control");
    }
  }
  auto design = DesignFromJson(design_json, *instance);
  if (!design.ok()) return design.status();
  auto report = ExactExpectedEstimate(*instance, *design);
  if (!report.ok()) return report.status();
  out << "instance           " << instance->num_queries() << " queries, "
      << instance->num_advertisers() << " advertisers, " << instance->num_pairs()
      << " pairs\n"
      << "design             " << DesignToJson(*design).dump() << "\n";
  PrintOracle(*report, out);
  if (design->quota.mode == QuotaMode::kSplit && design->scheme.query_level()) {
    auto cond = CheckSplitQuotaConditions(*instance, design->quota, design->scheme);
    if (!cond.ok()) return cond.status();
    PrintConditions(*cond, out);
  }
  return absl::OkStatus();
}

struct SimulateFlags {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::string out_path;
  std::string format = "csv";
};

absl::Status CmdSimulate(const SimulateFlags& f, std::ostream& out) {
  auto j = ReadJson(f.config_path);
  if (!j.ok()) return j.status();
  auto config = StudyConfigFromJson(*j);
  if (!config.ok()) return config.status();
  if (f.seed) config->master_seed = *f.seed;
  RunOptions options;
  options.workers = DefaultWorkerCount();
  auto rows = RunStudy(*config, options);
  if (!rows.ok()) return rows.status();
  const std::string text = f.format == "json"
                               ? StudyRowsToJson(*config, *rows).dump(2) + "\n"
                               : StudyRowsToCsv(*rows);
  if (f.out_path.empty() || f.out_path == "-") {
    out << text;
    return absl::OkStatus();
  }
  std::ofstream file(f.out_path, std::ios::binary);
  file << text;
  if (!file) return absl::InternalError(absl::StrCat("cannot write '", f.out_path, "'"));
  return absl::OkStatus();
}

std::string Cell(const std::optional<double>& v, const std::optional<double>& se) {
  if (!v) return "-";
  char buf[64];
  if (se) {
    std::snprintf(buf, sizeof(buf), "%.3f +- %.3f", *v, 2 * *se);
  } else {
    std::snprintf(buf, sizeof(buf), "%.3f", *v);
  }
  return buf;
}

// Tables of rel_bias (+- 2 SE) and var_ratio with rows = quota fraction and
// columns = mu1 (bid treatments) or p_x (quota treatments).
absl::Status CmdReport(const std::string& path, std::ostream& out) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  auto rows = StudyRowsFromCsv(*text);
  if (!rows.ok()) return rows.status();
  if (rows->empty()) return absl::InvalidArgumentError("CSV has no data rows");

  using Panel = std::tuple<std::string, std::string, std::string, int>;
  std::map<Panel, std::vector<const StudyRow*>> panels;
  for (const StudyRow& r : *rows) {
    panels[{r.treatment_type, r.throttle_mode, r.scheme, r.n_queries}].push_back(&r);
  }
  for (const auto& [key, members] : panels) {
    const auto& [treatment, mode, scheme, nq] = key;
    const bool bid = treatment == "bid";
    std::vector<std::string> fracs;
    std::set<double> cols;
    for (const StudyRow* r : members) {
      if (std::find(fracs.begin(), fracs.end(), r->quota_frac) == fracs.end()) {
        fracs.push_back(r->quota_frac);
      }
      cols.insert(bid ? r->mu1 : r->p_x.value_or(0.0));
    }
    for (const char* metric : {"rel_bias", "var_ratio"}) {
      const bool ratio = std::string(metric) == "var_ratio";
      if (ratio && scheme == RandomizationScheme::QueryBalanced().Name()) continue;
      out << treatment << " treatment, " << mode << " throttling, " << scheme
          << ", N_q = " << nq << ": " << metric << "\n";
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%-10s", "quota");
      out << buf;
      for (double c : cols) {
        std::snprintf(buf, sizeof(buf), "%-22s",
                      absl::StrCat(bid ? "mu1=" : "p_x=", Num(c)).c_str());
        out << buf;
      }
      out << "\n";
      for (const std::string& frac : fracs) {
        std::snprintf(buf, sizeof(buf), "%-10s", frac.c_str());
        out << buf;
        for (double c : cols) {
          std::string cell = "-";
          for (const StudyRow* r : members) {
            if (r->quota_frac != frac || (bid ? r->mu1 : r->p_x.value_or(0.0)) != c) continue;
            cell = ratio ? Cell(r->var_ratio, std::nullopt) : Cell(r->rel_bias, r->rel_bias_se);
          }
          std::snprintf(buf, sizeof(buf), "%-22s", cell.c_str());
          out << buf;
        }
        out << "\n";
      }
      out << "\n";
    }
  }
  return absl::OkStatus();
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kResourceExhausted:
      return kExitBudget;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kOutOfRange:
      return kExitConfig;
    default:
      return kExitInternal;
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Auction experiment simulation lab", "auction_lab"};
  app.require_subcommand(1);

  auto* toy = app.add_subcommand("toy", "Exact bias of the single-auction examples");
  toy->require_subcommand(1);
  auto* identical = toy->add_subcommand("identical", "K identical bidders");
  int k = 4;
  double r0 = 5, r1 = 6;
  identical->add_option("--k", k, "number of bidders")->capture_default_str();
  identical->add_option("--r0", r0, "control bid")->capture_default_str();
  identical->add_option("--r1", r1, "treated bid")->capture_default_str();
  auto* dominating = toy->add_subcommand("dominating", "treated bids dominate control bids");
  std::string b0_text = "4,4.25,4.5,4.75", b1_text = "6,5.5,5.25,5";
  dominating->add_option("--b0", b0_text, "comma-separated control bids")->capture_default_str();
  dominating->add_option("--b1", b1_text, "comma-separated treated bids")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Exact expectations by enumeration");
  OracleFlags of;
  oracle->add_option("--instance", of.instance_path, "instance JSON")->required();
  oracle->add_option("--scheme", of.scheme, "randomization scheme");
  oracle->add_option("--quota-mode", of.quota_mode, "none, joint or split");
  oracle->add_option("--quota", of.quota, "per-advertiser quota or fraction of N_q[a]");
  oracle->add_option("--throttle", of.throttle, "standard or quota_treatment");
  oracle->add_option("--mechanism", of.mechanism, "first_price or second_price");
  oracle->add_option("--tie", of.tie, "lowest_id or seeded_random");
  oracle->add_option("--convention", of.convention, "horvitz_thompson or unweighted");

  auto* simulate = app.add_subcommand("simulate", "Run a simulation study");
  SimulateFlags sf;
  simulate->add_option("--config", sf.config_path, "study config JSON")->required();
  simulate->add_option("--seed", sf.seed, "overrides master_seed");
  simulate->add_option("--out", sf.out_path, "output file (default stdout)");
  simulate->add_option("--format", sf.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  auto* report = app.add_subcommand("report", "Summarize a study CSV");
  std::string csv_path;
  report->add_option("csv", csv_path, "study CSV")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  absl::Status status;
  if (*identical) {
    auto instance = BuildIdenticalBidders(k, r0, r1);
    auto closed = ClosedFormBiasIdentical(k, r0, r1);
    status = instance.ok() ? (closed.ok() ? ToyReport(*instance, out, *closed)
                                          : closed.status())
                           : instance.status();
  } else if (*dominating) {
    auto b0 = ParseList(b0_text);
    auto b1 = ParseList(b1_text);
    if (!b0.ok()) {
      status = b0.status();
    } else if (!b1.ok()) {
      status = b1.status();
    } else {
      auto instance = BuildDominatingTreatment(*b0, *b1);
      status = instance.ok() ? ToyReport(*instance, out, std::nullopt) : instance.status();
    }
  } else if (*oracle) {
    status = CmdOracle(of, out);
  } else if (*simulate) {
    status = CmdSimulate(sf, out);
  } else if (*report) {
    status = CmdReport(csv_path, out);
  }
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
    return ExitCodeFor(status);
  }
  return kExitOk;
}

}  // namespace auctionlab
