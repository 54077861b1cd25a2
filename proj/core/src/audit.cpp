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

#include "clinch/audit.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "clinch/errors.hpp"
#include "clinch/remnant.hpp"
#include "clinch/welfare.hpp"

namespace clinch {

namespace {

[[noreturn]] void malformed(const std::string& why) {
  throw Error(ErrorCode::malformed_trace, why);
}

std::string buyer_name(int index) { return std::to_string(index + 1); }

CheckResult pass_entry(std::string name) {
  CheckResult r;
  r.name = std::move(name);
  return r;
}

CheckResult fail_entry(std::string name, std::string witness) {
  CheckResult r;
  r.name = std::move(name);
  r.pass = false;
  r.witness = std::move(witness);
  return r;
}

CheckResult skip_entry(std::string name, std::string why) {
  CheckResult r;
  r.name = std::move(name);
  r.skipped = true;
  r.witness = std::move(why);
  return r;
}

}  // namespace

bool AuditReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.pass || !c.asserted || c.skipped;
  });
}

void AuditReport::append(const AuditReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

DropLayers build_layers(const AuctionOutcome& outcome,
                        const AuctionInstance& instance) {
  const int n = instance.buyer_count();
  std::vector<long long> demand(n), clinched(n, 0);
  std::vector<Rational> paid(n, Rational(0));
  for (int i = 0; i < n; ++i) demand[i] = instance.singleton_cap(i) + 1;

  Rational clock(0);
  long long price_stops = 0;

  struct Anchor {
    int buyer;
    Subset active_before;
  };
  std::vector<Anchor> anchors;  // chronological

  DropLayers out;
  out.drop_price.assign(n, Rational(0));
  out.drop_cause.assign(n, DropCause::line5);
  out.layer_of.assign(n, 0);
  std::vector<bool> has_dropped(n, false);
  std::vector<int> anchor_of(n, -1);

  auto active_mask = [&]() {
    Subset s = 0;
    for (int i = 0; i < n; ++i) {
      if (demand[i] > 0) s = subset_with(s, i);
    }
    return s;
  };

  // A demand-zeroing or boundary drop arms the clinch rounds that follow it;
  // any other demand movement or a new price stop disarms them. Clinch-led
  // drops are only legal while armed and join the arming drop's layer.
  int armed_anchor = -1;
  bool drop_pending = false;
  int pending_buyer = -1;
  DropCause pending_cause = DropCause::line5;
  Subset pending_active = 0;

  for (const Event& e : outcome.trace) {
    if (e.kind != Event::Kind::price_set &&
        (e.buyer < 0 || e.buyer >= n)) {
      malformed("event names no buyer");
    }
    if (drop_pending && e.kind != Event::Kind::drop) {
      malformed("demand hit zero without a drop record");
    }
    switch (e.kind) {
      case Event::Kind::price_set:
        if (!(clock < e.price)) malformed("price clock did not advance");
        clock = e.price;
        ++price_stops;
        armed_anchor = -1;
        break;
      case Event::Kind::demand_zeroed: {
        if (demand[e.buyer] <= 0) malformed("zeroing an inactive buyer");
        pending_active = active_mask();
        demand[e.buyer] = 0;
        drop_pending = true;
        pending_buyer = e.buyer;
        pending_cause = DropCause::line5;
        break;
      }
      case Event::Kind::demand_decremented: {
        if (demand[e.buyer] <= 0) malformed("decrementing an inactive buyer");
        pending_active = active_mask();
        demand[e.buyer] -= 1;
        if (demand[e.buyer] == 0) {
          drop_pending = true;
          pending_buyer = e.buyer;
          pending_cause = DropCause::line9;
        } else {
          armed_anchor = -1;
        }
        break;
      }
      case Event::Kind::clinch: {
        if (e.amount < 1 || e.amount > demand[e.buyer]) {
          malformed("clinch amount out of range");
        }
        pending_active = active_mask();
        demand[e.buyer] -= e.amount;
        clinched[e.buyer] += e.amount;
        paid[e.buyer] += e.price * Rational(e.amount);
        if (demand[e.buyer] == 0) {
          drop_pending = true;
          pending_buyer = e.buyer;
          pending_cause = DropCause::clinch;
        }
        break;
      }
      case Event::Kind::drop: {
        if (!drop_pending || e.buyer != pending_buyer ||
            e.cause != pending_cause) {
          malformed("drop record does not match the demand update");
        }
        drop_pending = false;
        if (has_dropped[e.buyer]) malformed("buyer dropped twice");
        has_dropped[e.buyer] = true;
        if (!e.price.is_positive()) malformed("drop at a nonpositive price");
        out.drop_price[e.buyer] = e.price;
        out.drop_cause[e.buyer] = e.cause;
        if (e.cause == DropCause::clinch) {
          if (armed_anchor < 0) {
            malformed("clinch-led drop without a preceding anchor drop");
          }
          anchor_of[e.buyer] = armed_anchor;
        } else {
          anchors.push_back({e.buyer, pending_active});
          armed_anchor = static_cast<int>(anchors.size()) - 1;
          anchor_of[e.buyer] = armed_anchor;
        }
        break;
      }
    }
  }

  if (drop_pending) malformed("trace ends mid-drop");
  for (int i = 0; i < n; ++i) {
    if (demand[i] != 0 || !has_dropped[i]) {
      malformed("buyer " + buyer_name(i) + " never retired");
    }
    if (clinched[i] != outcome.allocation[i] ||
        paid[i] != outcome.payments[i]) {
      malformed("trace does not reproduce the outcome for buyer " +
                buyer_name(i));
    }
  }
  if (price_stops != outcome.iterations) {
    malformed("iteration count does not match the trace");
  }

  const int t = static_cast<int>(anchors.size());
  out.drop_order.resize(t);
  out.layers.resize(t);
  for (int k = 1; k <= t; ++k) {
    const Anchor& a = anchors[t - k];
    out.drop_order[k - 1] = a.buyer;
    out.layers[k - 1] = a.active_before;
  }
  if (t > 0 && out.layers[t - 1] != full_subset(n)) {
    malformed("outermost layer is not the full buyer set");
  }
  for (int k = 1; k < t; ++k) {
    const Subset inner = out.layers[k - 1];
    const Subset outer = out.layers[k];
    if ((inner & ~outer) != 0 || inner == outer) {
      malformed("layers are not strictly nested");
    }
  }
  for (int i = 0; i < n; ++i) {
    out.layer_of[i] = t - anchor_of[i];
    const Subset own = out.layers[out.layer_of[i] - 1];
    const Subset next =
        out.layer_of[i] >= 2 ? out.layers[out.layer_of[i] - 2] : 0;
    if (!subset_contains(own, i) || subset_contains(next, i)) {
      malformed("buyer " + buyer_name(i) + " sits outside its layer");
    }
  }
  return out;
}

AuditReport check_tight_sets(const AuctionOutcome& outcome,
                             const AuctionInstance& instance) {
  const DropLayers layers = build_layers(outcome, instance);
  const int n = instance.buyer_count();
  const int t = layers.layer_count();
  AuditReport report;

  CheckResult tight = pass_entry("tight_sets.tight");
  for (int k = 1; k <= t && tight.pass; ++k) {
    const Subset x_k = layers.layers[k - 1];
    const long long allocated = sum_over(outcome.allocation, x_k);
    const long long supply = instance.constraint().eval(x_k);
    if (allocated != supply) {
      tight = fail_entry(
          "tight_sets.tight",
          "layer " + std::to_string(k) + " = " + subset_to_string(x_k) +
              " holds " + std::to_string(allocated) + " of " +
              std::to_string(supply) + " units");
    }
  }
  report.checks.push_back(tight);

  CheckResult price = pass_entry("tight_sets.layer_price");
  for (int i = 0; i < n && price.pass; ++i) {
    const int anchor = layers.drop_order[layers.layer_of[i] - 1];
    if (layers.drop_price[i] != layers.drop_price[anchor]) {
      price = fail_entry("tight_sets.layer_price",
                         "buyer " + buyer_name(i) + " dropped at " +
                             layers.drop_price[i].str() + ", its anchor " +
                             buyer_name(anchor) + " at " +
                             layers.drop_price[anchor].str());
    }
  }
  report.checks.push_back(price);

  auto leftover_units = [&](int i) {
    return (instance.buyer(i).budget - outcome.payments[i]) /
           layers.drop_price[i];
  };

  CheckResult spent = pass_entry("tight_sets.spent");
  for (int k = 1; k <= t && spent.pass; ++k) {
    const Subset x_k = layers.layers[k - 1];
    const Subset inner = k >= 2 ? layers.layers[k - 2] : 0;
    const int anchor = layers.drop_order[k - 1];
    for (int i = 0; i < n; ++i) {
      if (!subset_contains(x_k, i) || subset_contains(inner, i) || i == anchor)
        continue;
      if (leftover_units(i) > Rational(1)) {
        spent = fail_entry(
            "tight_sets.spent",
            "buyer " + buyer_name(i) + " left layer " + std::to_string(k) +
                " with " + leftover_units(i).str() +
                " price units of budget remaining");
        break;
      }
    }
  }
  report.checks.push_back(spent);

  // A layer-mate with exactly one price unit left forces the anchor drop to
  // be a budget-boundary drop; such an anchor must itself hold exactly one
  // price unit and the clock must sit below every layer valuation.
  CheckResult chain = pass_entry("tight_sets.drop_chain");
  for (int k = 1; k <= t && chain.pass; ++k) {
    const Subset x_k = layers.layers[k - 1];
    const Subset inner = k >= 2 ? layers.layers[k - 2] : 0;
    const int anchor = layers.drop_order[k - 1];
    bool unit_leftover = false;
    int unit_buyer = -1;
    for (int i = 0; i < n; ++i) {
      if (!subset_contains(x_k, i) || subset_contains(inner, i) || i == anchor)
        continue;
      if (leftover_units(i) == Rational(1)) {
        unit_leftover = true;
        unit_buyer = i;
        break;
      }
    }
    const bool boundary_drop = layers.drop_cause[anchor] == DropCause::line9;
    if (unit_leftover && !boundary_drop) {
      chain = fail_entry("tight_sets.drop_chain",
                         "buyer " + buyer_name(unit_buyer) +
                             " kept one price unit in layer " +
                             std::to_string(k) + " but anchor " +
                             buyer_name(anchor) + " dropped via " +
                             to_string(layers.drop_cause[anchor]));
      break;
    }
    if (boundary_drop) {
      if (leftover_units(anchor) != Rational(1)) {
        chain = fail_entry(
            "tight_sets.drop_chain",
            "boundary anchor " + buyer_name(anchor) + " of layer " +
                std::to_string(k) + " kept " + leftover_units(anchor).str() +
                " price units instead of one");
        break;
      }
      const Rational& c_k = layers.drop_price[anchor];
      for (int i = 0; i < n; ++i) {
        if (!subset_contains(x_k, i)) continue;
        if (!(c_k < instance.buyer(i).valuation)) {
          chain = fail_entry(
              "tight_sets.drop_chain",
              "anchor price " + c_k.str() + " of layer " + std::to_string(k) +
                  " is not below buyer " + buyer_name(i) + "'s valuation");
          break;
        }
      }
    }
  }
  report.checks.push_back(chain);

  return report;
}

AuditReport check_pareto(const AuctionOutcome& outcome,
                         const AuctionInstance& instance) {
  const int n = instance.buyer_count();
  std::vector<Rational> utility(n);
  Rational revenue(0);
  for (int i = 0; i < n; ++i) {
    utility[i] = instance.buyer(i).valuation * Rational(outcome.allocation[i]) -
                 outcome.payments[i];
    revenue += outcome.payments[i];
  }

  AuditReport report;
  CheckResult entry = pass_entry("pareto.no_dominating_outcome");

  // For a fixed reallocation the seller's best take is bounded by each
  // buyer's budget and by the payment keeping that buyer no worse off.
  for_each_polymatroid_point(
      instance.constraint(), [&](std::span<const long long> x) {
        if (!entry.pass) return;
        Rational seller_best(0);
        bool buyer_strict = false;
        for (int i = 0; i < n; ++i) {
          const Rational keep =
              instance.buyer(i).valuation * Rational(x[i]) - utility[i];
          seller_best += min(instance.buyer(i).budget, keep);
          if (instance.buyer(i).budget < keep) buyer_strict = true;
        }
        if (seller_best > revenue || (seller_best == revenue && buyer_strict)) {
          std::string alt = "(";
          for (int i = 0; i < n; ++i) {
            if (i) alt += ",";
            alt += std::to_string(x[i]);
          }
          alt += ")";
          entry = fail_entry(
              "pareto.no_dominating_outcome",
              "reallocation " + alt +
                  (seller_best > revenue
                       ? " raises seller revenue to " + seller_best.str()
                       : " keeps revenue while some buyer gains"));
        }
      });

  report.checks.push_back(entry);
  return report;
}

AuditReport check_welfare_bounds(const AuctionOutcome& outcome,
                                 const AuctionInstance& instance) {
  AuditReport report;
  if (!in_polymatroid(instance.constraint(), outcome.allocation)) {
    report.checks.push_back(fail_entry("welfare.allocation_in_constraint",
                                       "allocation violates the constraint"));
    return report;
  }
  report.checks.push_back(pass_entry("welfare.allocation_in_constraint"));

  const Rational lw = liquid_welfare(instance, outcome.allocation);
  const Rational sw = social_welfare(instance, outcome.allocation);
  Rational revenue(0);
  for (const Rational& p : outcome.payments) revenue += p;
  const Rational lw_opt = lw_optimal(instance).lw_value;

  auto bound = [&](const char* name, bool ok, const std::string& lhs,
                   const std::string& rhs) {
    report.checks.push_back(
        ok ? pass_entry(name) : fail_entry(name, lhs + " < " + rhs));
  };
  bound("welfare.lw_covers_revenue", revenue <= lw, lw.str(), revenue.str());
  bound("welfare.revenue_covers_gap", lw_opt - lw <= revenue, revenue.str(),
        (lw_opt - lw).str());
  bound("welfare.half_optimal", lw_opt <= lw * Rational(2),
        (lw * Rational(2)).str(), lw_opt.str());
  bound("welfare.sw_covers_optimal", lw_opt <= sw, sw.str(), lw_opt.str());
  return report;
}

AuditReport check_trading_pairs(const AuctionOutcome& outcome,
                                const AuctionInstance& instance) {
  const int n = instance.buyer_count();
  AuditReport report;
  CheckResult entry = pass_entry("trading.no_pair");
  for (int i = 0; i < n && entry.pass; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Buyer& hi = instance.buyer(i);
      const Buyer& lo = instance.buyer(j);
      if (!(lo.valuation < hi.valuation)) continue;
      if (hi.budget - outcome.payments[i] < lo.valuation) continue;
      if (!depends_on(instance.constraint(), outcome.allocation, i, j))
        continue;
      entry = fail_entry(
          "trading.no_pair",
          "buyer " + buyer_name(i) + " can absorb a unit from buyer " +
              buyer_name(j) + " and still afford its valuation");
      break;
    }
  }
  report.checks.push_back(entry);
  return report;
}

AuditReport check_ic(const AuctionInstance& instance, const IcOptions& options) {
  const int n = instance.buyer_count();
  const AuctionInstance truthful = instance.with_truthful_bids();
  const AuctionOutcome base = run_auction(truthful);

  AuditReport report;
  CheckResult rational_entry = pass_entry("ic.individual_rationality");
  std::vector<Rational> truthful_utility(n);
  for (int i = 0; i < n; ++i) {
    truthful_utility[i] =
        instance.buyer(i).valuation * Rational(base.allocation[i]) -
        base.payments[i];
    if (rational_entry.pass && truthful_utility[i].is_negative()) {
      rational_entry = fail_entry(
          "ic.individual_rationality",
          "buyer " + buyer_name(i) + " has truthful utility " +
              truthful_utility[i].str());
    }
  }
  report.checks.push_back(rational_entry);

  CheckResult dominance = pass_entry("ic.truthful_dominates");
  for (int i = 0; i < n && dominance.pass; ++i) {
    const Rational& v = instance.buyer(i).valuation;
    std::set<std::string> seen;
    std::vector<Rational> deviations;
    auto add = [&](const Rational& bid) {
      if (!bid.is_positive() || bid == v) return;
      if (seen.insert(bid.str()).second) deviations.push_back(bid);
    };
    for (long long quarters : {1, 2, 3, 5, 6, 8}) {
      add(v * Rational(quarters, 4));
    }
    for (int j = 0; j < n; ++j) {
      if (j != i) add(instance.buyer(j).valuation);
    }
    for (int j = 0; j < n; ++j) {
      for (long long m = 1; m <= instance.total_supply(); ++m) {
        add(instance.buyer(j).budget / Rational(m));
      }
    }
    std::mt19937_64 rng(options.seed + 0x9e3779b97f4a7c15ULL * (i + 1));
    int attempts = 0;
    while (static_cast<int>(deviations.size()) <
               options.min_deviations_per_buyer &&
           attempts < 1000) {
      const long long num = 1 + static_cast<long long>(rng() % 32);
      const long long den = 1 + static_cast<long long>(rng() % 8);
      add(v * Rational(num, den));
      ++attempts;
    }

    for (const Rational& bid : deviations) {
      const AuctionOutcome dev = run_auction(truthful.with_bid(i, bid));
      const Rational gained =
          v * Rational(dev.allocation[i]) - dev.payments[i];
      if (truthful_utility[i] < gained) {
        dominance = fail_entry(
            "ic.truthful_dominates",
            "buyer " + buyer_name(i) + " bids " + bid.str() +
                " and moves utility from " + truthful_utility[i].str() +
                " to " + gained.str());
        break;
      }
    }
  }
  report.checks.push_back(dominance);
  return report;
}

AuditReport check_envy_free(const AuctionOutcome& outcome,
                            const AuctionInstance& instance) {
  const int n = instance.buyer_count();
  AuditReport report;
  CheckResult entry = pass_entry("envy.none");
  entry.asserted = false;
  for (int i = 0; i < n; ++i) {
    const Rational own =
        instance.buyer(i).valuation * Rational(outcome.allocation[i]) -
        outcome.payments[i];
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // A bundle the buyer cannot pay for is no object of envy.
      if (instance.buyer(i).budget < outcome.payments[j]) continue;
      const Rational swapped =
          instance.buyer(i).valuation * Rational(outcome.allocation[j]) -
          outcome.payments[j];
      if (own < swapped) {
        if (entry.pass) {
          entry.pass = false;
          entry.witness = "buyer " + buyer_name(i) + " envies buyer " +
                          buyer_name(j);
        } else {
          entry.witness += "; buyer " + buyer_name(i) + " envies buyer " +
                           buyer_name(j);
        }
      }
    }
  }
  report.checks.push_back(entry);
  return report;
}

AuditReport check_iteration_bound(const AuctionOutcome& outcome,
                                  const AuctionInstance& instance) {
  long long bound = instance.buyer_count();
  for (int i = 0; i < instance.buyer_count(); ++i) {
    bound += instance.singleton_cap(i);
  }
  AuditReport report;
  if (outcome.iterations <= bound) {
    report.checks.push_back(pass_entry("iterations.within_bound"));
  } else {
    report.checks.push_back(fail_entry(
        "iterations.within_bound",
        std::to_string(outcome.iterations) + " price stops exceed " +
            std::to_string(bound)));
  }
  return report;
}

AuditReport check_trace_clinches(const AuctionOutcome& outcome,
                                 const AuctionInstance& instance) {
  const int n = instance.buyer_count();
  RemnantContext ctx;
  ctx.oracle = &instance.constraint();
  ctx.clinched.assign(n, 0);
  ctx.demand.resize(n);
  for (int i = 0; i < n; ++i) ctx.demand[i] = instance.singleton_cap(i) + 1;

  AuditReport report;
  CheckResult entry = pass_entry("trace.clinches_match_definition");
  for (const Event& e : outcome.trace) {
    switch (e.kind) {
      case Event::Kind::demand_zeroed:
        ctx.demand[e.buyer] = 0;
        break;
      case Event::Kind::demand_decremented:
        ctx.demand[e.buyer] -= 1;
        break;
      case Event::Kind::clinch: {
        if (entry.pass) {
          const long long reference = clinch_amount_definition(ctx, e.buyer);
          if (reference != e.amount) {
            entry = fail_entry(
                "trace.clinches_match_definition",
                "buyer " + buyer_name(e.buyer) + " clinched " +
                    std::to_string(e.amount) + " at " + e.price.str() +
                    " where the definition gives " +
                    std::to_string(reference));
          }
        }
        ctx.demand[e.buyer] -= e.amount;
        ctx.clinched[e.buyer] += e.amount;
        break;
      }
      default:
        break;
    }
    if (e.buyer >= 0 && e.buyer < n && ctx.demand[e.buyer] < 0) {
      malformed("trace drives demand negative");
    }
  }
  for (int i = 0; i < n; ++i) {
    if (ctx.clinched[i] != outcome.allocation[i]) {
      malformed("trace does not reproduce the outcome");
    }
  }
  report.checks.push_back(entry);
  return report;
}

AuditReport run_all_checks(const AuctionOutcome& outcome,
                           const AuctionInstance& instance,
                           const IcOptions& ic_options) {
  AuditReport report;
  report.append(check_tight_sets(outcome, instance));
  report.append(check_welfare_bounds(outcome, instance));
  try {
    report.append(check_pareto(outcome, instance));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::guard_exceeded) throw;
    AuditReport skipped;
    skipped.checks.push_back(
        skip_entry("pareto.no_dominating_outcome", e.what()));
    report.append(skipped);
  }
  report.append(check_trading_pairs(outcome, instance));
  report.append(check_iteration_bound(outcome, instance));
  report.append(check_trace_clinches(outcome, instance));
  report.append(check_ic(instance, ic_options));
  report.append(check_envy_free(outcome, instance));
  return report;
}

}  // namespace clinch
