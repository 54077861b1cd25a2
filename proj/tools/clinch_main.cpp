// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "clinch/audit.hpp"
#include "clinch/auction.hpp"
#include "clinch/errors.hpp"
#include "clinch/instances.hpp"
#include "clinch/welfare.hpp"

namespace {

using clinch::AuctionInstance;
using clinch::AuctionOutcome;
using clinch::Rational;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitGuard = 4;
constexpr int kExitAuditFailure = 5;
constexpr int kExitInternal = 70;

int exit_code_for(clinch::ErrorCode code) {
  switch (code) {
    case clinch::ErrorCode::parse_error:
    case clinch::ErrorCode::unknown_fixture:
      return kExitParse;
    case clinch::ErrorCode::validation_error:
    case clinch::ErrorCode::invalid_instance:
    case clinch::ErrorCode::not_in_polymatroid:
    case clinch::ErrorCode::no_active_buyers:
    case clinch::ErrorCode::malformed_trace:
    case clinch::ErrorCode::generation_failed:
      return kExitValidation;
    case clinch::ErrorCode::guard_exceeded:
    case clinch::ErrorCode::ground_set_too_large:
    case clinch::ErrorCode::subset_limit:
      return kExitGuard;
  }
  return kExitInternal;
}

struct InstanceSource {
  std::string file;
  std::string fixture;
  long long k = 0;

  void attach(CLI::App* cmd) {
    auto* file_opt = cmd->add_option("--file", file, "market JSON file");
    auto* fixture_opt =
        cmd->add_option("--fixture", fixture, "named market family");
    cmd->add_option("--k", k, "fixture parameter");
    file_opt->excludes(fixture_opt);
  }

  AuctionInstance load() const {
    if (!file.empty()) return clinch::load_instance_file(file);
    if (!fixture.empty()) return clinch::fixture(fixture, k);
    throw clinch::Error(clinch::ErrorCode::parse_error,
                        "pass --file or --fixture");
  }
};

std::string approx(const Rational& r) { return r.decimal(20); }

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    throw clinch::Error(clinch::ErrorCode::parse_error,
                        "cannot write '" + out_path + "'");
  }
  out << text;
}

ordered_json trace_to_json(const AuctionOutcome& outcome) {
  ordered_json events = ordered_json::array();
  for (const clinch::Event& e : outcome.trace) {
    ordered_json entry;
    switch (e.kind) {
      case clinch::Event::Kind::price_set:
        entry["event"] = "price_set";
        break;
      case clinch::Event::Kind::demand_zeroed:
        entry["event"] = "demand_zeroed";
        entry["buyer"] = e.buyer + 1;
        break;
      case clinch::Event::Kind::demand_decremented:
        entry["event"] = "demand_decremented";
        entry["buyer"] = e.buyer + 1;
        break;
      case clinch::Event::Kind::clinch:
        entry["event"] = "clinch";
        entry["buyer"] = e.buyer + 1;
        entry["amount"] = e.amount;
        break;
      case clinch::Event::Kind::drop:
        entry["event"] = "drop";
        entry["buyer"] = e.buyer + 1;
        entry["cause"] = to_string(e.cause);
        break;
    }
    entry["price"] = e.price.str();
    events.push_back(std::move(entry));
  }
  return events;
}

ordered_json audit_to_json(const clinch::AuditReport& report) {
  ordered_json out;
  out["checks"] = ordered_json::array();
  for (const clinch::CheckResult& c : report.checks) {
    ordered_json entry;
    entry["name"] = c.name;
    entry["pass"] = c.pass;
    entry["asserted"] = c.asserted;
    if (c.skipped) entry["skipped"] = true;
    if (!c.witness.empty()) entry["witness"] = c.witness;
    out["checks"].push_back(std::move(entry));
  }
  out["ok"] = report.ok();
  return out;
}

std::string audit_table(const clinch::AuditReport& report) {
  std::string out;
  for (const clinch::CheckResult& c : report.checks) {
    std::string verdict = c.skipped ? "SKIP" : (c.pass ? "pass" : "FAIL");
    if (!c.pass && !c.asserted) verdict = "info";
    out += "  " + verdict + "  " + c.name;
    if (!c.witness.empty()) out += "  (" + c.witness + ")";
    out += "\n";
  }
  out += report.ok() ? "audit: PASS\n" : "audit: FAIL\n";
  return out;
}

struct RunArgs {
  InstanceSource source;
  bool audit = false;
  bool trace = false;
  bool lw_opt = false;
  bool check_invariants = false;
  std::string format = "json";
  std::string out_path;
};

int cmd_run(const RunArgs& args) {
  const AuctionInstance instance = args.source.load();
  clinch::AuctionOptions options;
  options.check_invariants = args.check_invariants;
  const AuctionOutcome outcome = clinch::run_auction(instance, options);

  const Rational sw = clinch::social_welfare(instance, outcome.allocation);
  const Rational lw = clinch::liquid_welfare(instance, outcome.allocation);
  Rational revenue(0);
  for (const Rational& p : outcome.payments) revenue += p;
  std::optional<Rational> lw_opt;
  if (args.lw_opt) {
    try {
      lw_opt = clinch::lw_optimal(instance).lw_value;
    } catch (const clinch::Error& e) {
      if (e.code() != clinch::ErrorCode::guard_exceeded) throw;
    }
  }

  clinch::AuditReport audit;
  if (args.audit) audit = clinch::run_all_checks(outcome, instance);

  if (args.format == "table") {
    std::string text;
    text += "buyers: " + std::to_string(instance.buyer_count()) +
            "  supply: " + std::to_string(instance.total_supply()) + "\n";
    text += "price stops: " + std::to_string(outcome.iterations) + "\n";
    text += "buyer  units  payment\n";
    for (int i = 0; i < instance.buyer_count(); ++i) {
      text += std::to_string(i + 1) + "      " +
              std::to_string(outcome.allocation[i]) + "      " +
              outcome.payments[i].str() + " (" +
              approx(outcome.payments[i]) + ")\n";
    }
    text += "revenue: " + revenue.str() + " (" + approx(revenue) + ")\n";
    text += "social welfare: " + sw.str() + " (" + approx(sw) + ")\n";
    text += "liquid welfare: " + lw.str() + " (" + approx(lw) + ")\n";
    if (lw_opt) {
      text += "optimal liquid welfare: " + lw_opt->str() + " (" +
              approx(*lw_opt) + ")\n";
    }
    if (args.audit) text += audit_table(audit);
    emit(text, args.out_path);
  } else {
    ordered_json doc;
    doc["schema"] = "clinch-report/1";
    doc["command"] = "run";
    doc["instance"]["buyers"] = instance.buyer_count();
    doc["instance"]["supply"] = instance.total_supply();
    doc["x_final"] = outcome.allocation;
    ordered_json payments = ordered_json::array();
    ordered_json payments_approx = ordered_json::array();
    for (const Rational& p : outcome.payments) {
      payments.push_back(p.str());
      payments_approx.push_back(approx(p));
    }
    doc["p_final"] = std::move(payments);
    doc["p_final_approx"] = std::move(payments_approx);
    doc["revenue"] = revenue.str();
    doc["revenue_approx"] = approx(revenue);
    doc["social_welfare"] = sw.str();
    doc["social_welfare_approx"] = approx(sw);
    doc["liquid_welfare"] = lw.str();
    doc["liquid_welfare_approx"] = approx(lw);
    if (lw_opt) {
      doc["lw_optimal"] = lw_opt->str();
      doc["lw_optimal_approx"] = approx(*lw_opt);
      if (lw_opt->is_positive()) {
        doc["ratios"]["lw_over_optimal"] = (lw / *lw_opt).str();
        doc["ratios"]["lw_over_optimal_approx"] = approx(lw / *lw_opt);
        doc["ratios"]["sw_over_optimal"] = (sw / *lw_opt).str();
        doc["ratios"]["sw_over_optimal_approx"] = approx(sw / *lw_opt);
      }
    }
    doc["iterations"] = outcome.iterations;
    if (args.trace) doc["trace"] = trace_to_json(outcome);
    if (args.audit) doc["audit"] = audit_to_json(audit);
    emit(doc.dump(2) + "\n", args.out_path);
  }

  if (args.audit && !audit.ok()) return kExitAuditFailure;
  return 0;
}

struct SweepArgs {
  std::string fixture = "prop54";
  long long k_min = 2;
  long long k_max = 20;
  std::string format = "json";
  std::string out_path;
};

int cmd_sweep(const SweepArgs& args) {
  if (args.k_min > args.k_max) {
    throw clinch::Error(clinch::ErrorCode::parse_error, "empty k range");
  }
  bool all_match = true;
  ordered_json rows = ordered_json::array();
  std::string table = "k  lw  lw_opt  ratio\n";
  for (long long k = args.k_min; k <= args.k_max; ++k) {
    const AuctionInstance instance = clinch::fixture(args.fixture, k);
    const AuctionOutcome outcome = clinch::run_auction(instance);
    const Rational lw = clinch::liquid_welfare(instance, outcome.allocation);
    const Rational lw_opt = clinch::lw_optimal(instance).lw_value;
    const Rational ratio = lw / lw_opt;

    ordered_json row;
    row["k"] = k;
    row["lw"] = lw.str();
    row["lw_opt"] = lw_opt.str();
    row["ratio"] = ratio.str();
    row["ratio_approx"] = approx(ratio);
    if (args.fixture == "prop54") {
      // Worst-case family: welfare degrades exactly to k / (2k - 1).
      const Rational expected = Rational(k) / Rational(2 * k - 1);
      row["expected_ratio"] = expected.str();
      row["matches"] = ratio == expected;
      if (ratio != expected) all_match = false;
    }
    rows.push_back(std::move(row));
    table += std::to_string(k) + "  " + lw.str() + "  " + lw_opt.str() +
             "  " + ratio.str() + "\n";
  }

  if (args.format == "table") {
    emit(table, args.out_path);
  } else {
    ordered_json doc;
    doc["schema"] = "clinch-report/1";
    doc["command"] = "sweep";
    doc["fixture"] = args.fixture;
    doc["rows"] = std::move(rows);
    if (args.fixture == "prop54") doc["all_match"] = all_match;
    emit(doc.dump(2) + "\n", args.out_path);
  }
  return all_match ? 0 : kExitAuditFailure;
}

struct CheckArgs {
  InstanceSource source;
  std::string suite = "all";
  std::uint64_t seed = clinch::IcOptions{}.seed;
  int trials = clinch::IcOptions{}.min_deviations_per_buyer;
  std::string format = "json";
  std::string out_path;
};

int cmd_check(const CheckArgs& args) {
  const AuctionInstance instance = args.source.load();
  const AuctionOutcome outcome = clinch::run_auction(instance);
  clinch::IcOptions ic;
  ic.seed = args.seed;
  ic.min_deviations_per_buyer = args.trials;

  clinch::AuditReport report;
  if (args.suite == "all") {
    report = clinch::run_all_checks(outcome, instance, ic);
  } else if (args.suite == "tight") {
    report = clinch::check_tight_sets(outcome, instance);
  } else if (args.suite == "po") {
    report = clinch::check_pareto(outcome, instance);
  } else if (args.suite == "welfare") {
    report = clinch::check_welfare_bounds(outcome, instance);
  } else if (args.suite == "trading") {
    report = clinch::check_trading_pairs(outcome, instance);
  } else if (args.suite == "ic") {
    report = clinch::check_ic(instance, ic);
  } else {
    throw CLI::ValidationError("--suite", "unknown suite " + args.suite);
  }

  if (args.format == "table") {
    emit(audit_table(report), args.out_path);
  } else {
    ordered_json doc;
    doc["schema"] = "clinch-report/1";
    doc["command"] = "check";
    doc["suite"] = args.suite;
    doc.update(audit_to_json(report));
    emit(doc.dump(2) + "\n", args.out_path);
  }
  return report.ok() ? 0 : kExitAuditFailure;
}

struct LwOptArgs {
  InstanceSource source;
  std::string format = "json";
  std::string out_path;
};

int cmd_lw_opt(const LwOptArgs& args) {
  const AuctionInstance instance = args.source.load();
  const clinch::LwOptResult result = clinch::lw_optimal(instance);

  if (args.format == "table") {
    std::string text = "optimal liquid welfare: " + result.lw_value.str() +
                       " (" + approx(result.lw_value) + ")\n";
    text += "buyer  units\n";
    for (int i = 0; i < instance.buyer_count(); ++i) {
      text += std::to_string(i + 1) + "      " +
              std::to_string(result.allocation[i]) + "\n";
    }
    emit(text, args.out_path);
    return 0;
  }

  ordered_json doc;
  doc["schema"] = "clinch-report/1";
  doc["command"] = "lw_opt";
  doc["lw_optimal"] = result.lw_value.str();
  doc["lw_optimal_approx"] = approx(result.lw_value);
  doc["allocation"] = result.allocation;
  doc["virtual"] = ordered_json::array();
  for (std::size_t pos = 0; pos < result.order.size(); ++pos) {
    const clinch::VirtualBuyer& vb = result.order[pos];
    ordered_json entry;
    entry["buyer"] = vb.parent + 1;
    entry["part"] = vb.part == clinch::VirtualBuyer::Part::a ? "a" : "b";
    entry["valuation"] = vb.valuation.str();
    entry["budget"] = vb.budget.str();
    entry["quota"] = vb.quota.str();
    entry["z"] = result.z[pos];
    doc["virtual"].push_back(std::move(entry));
  }
  emit(doc.dump(2) + "\n", args.out_path);
  return 0;
}

struct GenerateArgs {
  std::string family = "multi_unit";
  int buyers = 3;
  long long max_supply = 6;
  int max_goods = 3;
  int max_elements = 3;
  std::uint64_t seed = 1;
  std::string out_path;
};

int cmd_generate(const GenerateArgs& args) {
  clinch::OracleFamily family;
  if (args.family == "multi_unit") {
    family = clinch::OracleFamily::multi_unit;
  } else if (args.family == "bipartite") {
    family = clinch::OracleFamily::bipartite;
  } else if (args.family == "explicit") {
    family = clinch::OracleFamily::explicit_table;
  } else {
    throw CLI::ValidationError("--family", "unknown family " + args.family);
  }
  clinch::GenerateParams params;
  params.buyers = args.buyers;
  params.max_supply = args.max_supply;
  params.max_goods = args.max_goods;
  params.max_elements = args.max_elements;
  const AuctionInstance instance = clinch::generate(family, params, args.seed);
  emit(clinch::instance_to_text(instance), args.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyhedral clinching auction toolkit"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "run the auction on a market");
  run_args.source.attach(run);
  run->add_flag("--audit", run_args.audit, "attach the audit battery");
  run->add_flag("--trace", run_args.trace, "attach the event trace");
  run->add_flag("--lw-opt", run_args.lw_opt,
                "attach the optimal liquid welfare and ratios");
  run->add_flag("--check-invariants", run_args.check_invariants,
                "re-derive engine invariants at every step");
  run->add_option("--format", run_args.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  run->add_option("--out", run_args.out_path, "output path, - for stdout");

  SweepArgs sweep_args;
  CLI::App* sweep =
      app.add_subcommand("sweep", "sweep a fixture parameter range");
  sweep->add_option("--fixture", sweep_args.fixture, "fixture name");
  sweep->add_option("--k-min", sweep_args.k_min, "first k");
  sweep->add_option("--k-max", sweep_args.k_max, "last k");
  sweep->add_option("--format", sweep_args.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  sweep->add_option("--out", sweep_args.out_path, "output path");

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "audit a truthful run");
  check_args.source.attach(check);
  check->add_option("--suite", check_args.suite,
                    "ic|po|tight|trading|welfare|all");
  check->add_option("--seed", check_args.seed, "deviation-sampler seed");
  check->add_option("--trials", check_args.trials,
                    "minimum deviations tried per buyer");
  check->add_option("--format", check_args.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  check->add_option("--out", check_args.out_path, "output path");

  LwOptArgs lw_args;
  CLI::App* lw = app.add_subcommand("lw-opt", "optimal liquid welfare");
  lw_args.source.attach(lw);
  lw->add_option("--format", lw_args.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  lw->add_option("--out", lw_args.out_path, "output path");

  GenerateArgs gen_args;
  CLI::App* gen = app.add_subcommand("generate", "generate a random market");
  gen->add_option("--family", gen_args.family,
                  "multi_unit|bipartite|explicit");
  gen->add_option("--buyers", gen_args.buyers, "number of buyers");
  gen->add_option("--max-supply", gen_args.max_supply, "cap on f(N)");
  gen->add_option("--max-goods", gen_args.max_goods, "bipartite goods cap");
  gen->add_option("--max-elements", gen_args.max_elements,
                  "coverage elements cap");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--out", gen_args.out_path, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (check->parsed()) return cmd_check(check_args);
    if (lw->parsed()) return cmd_lw_opt(lw_args);
    if (gen->parsed()) return cmd_generate(gen_args);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const clinch::Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
