#pragma once
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

#include <cstdint>
#include <string>
#include <vector>

#include "clinch/auction.hpp"
#include "clinch/rational.hpp"
#include "clinch/submodular.hpp"

namespace clinch {

// Drop structure of a finished run. Buyers retired by the two demand-update
// rules form the chain anchors i_1, ..., i_t in reverse chronological order;
// layer k is the set of buyers still active just before i_k dropped. Buyers
// whose demand hit zero inside a clinch round belong to the layer of the
// anchor drop that triggered the round.
struct DropLayers {
  std::vector<int> drop_order;        // anchors i_1..i_t, 0-based
  std::vector<Subset> layers;         // X_1 strictly nested up to X_t = N
  std::vector<Rational> drop_price;   // per buyer
  std::vector<DropCause> drop_cause;  // per buyer
  std::vector<int> layer_of;          // per buyer, 1-based layer index

  int layer_count() const { return static_cast<int>(layers.size()); }
};

DropLayers build_layers(const AuctionOutcome& outcome,
                        const AuctionInstance& instance);

struct CheckResult {
  std::string name;
  bool pass = true;
  bool asserted = true;  // informational checks never fail an audit
  bool skipped = false;  // enumeration guard hit; not a verdict
  std::string witness;   // populated when pass is false
};

struct AuditReport {
  std::vector<CheckResult> checks;

  bool ok() const;  // all asserted, non-skipped checks pass
  void append(const AuditReport& other);
};

// Layer structure of the outcome:
//   tight        every layer is allocated exactly its supply value
//   layer_price  all buyers in a layer dropped at the anchor's price
//   spent        non-anchor layer members have less than one price unit left
//   drop_chain   a leftover of exactly one price unit forces the anchor to
//                be a budget-boundary drop, which in turn pins its own
//                leftover to one and keeps every layer bid above the clock
AuditReport check_tight_sets(const AuctionOutcome& outcome,
                             const AuctionInstance& instance);

// No reallocation + payments can weakly improve every buyer and the seller
// with one strict winner, keeping payments under budgets. Exhaustive over
// integer points of the constraint.
AuditReport check_pareto(const AuctionOutcome& outcome,
                         const AuctionInstance& instance);

// Liquid welfare chain: LW(outcome) >= revenue >= LW_opt - LW(outcome),
// hence the one-half approximation, and social welfare >= LW_opt.
AuditReport check_welfare_bounds(const AuctionOutcome& outcome,
                                 const AuctionInstance& instance);

// No pair (i, j) where i values goods more, can absorb one of j's units, and
// still has at least j's valuation left in budget.
AuditReport check_trading_pairs(const AuctionOutcome& outcome,
                                const AuctionInstance& instance);

struct IcOptions {
  // The deviation grid is padded with seeded random bids up to this floor.
  int min_deviations_per_buyer = 20;
  std::uint64_t seed = 0x5eedULL;
};

// Unilateral deviations over a bid grid (valuation multiples, rivals' bids,
// budget fractions) never beat truthful utility; truthful utility itself is
// nonnegative. Runs one auction per deviation.
AuditReport check_ic(const AuctionInstance& instance,
                     const IcOptions& options = {});

// Whether any buyer prefers another buyer's bundle and payment at its own
// valuation, with unaffordable bundles excluded. Informational: the
// mechanism does not promise envy-freeness and small markets do envy.
AuditReport check_envy_free(const AuctionOutcome& outcome,
                            const AuctionInstance& instance);

// Number of price stops never exceeds total initial demand.
AuditReport check_iteration_bound(const AuctionOutcome& outcome,
                                  const AuctionInstance& instance);

// Every clinch event in the trace matches the definitional clinch amount
// evaluated on the state right before it.
AuditReport check_trace_clinches(const AuctionOutcome& outcome,
                                 const AuctionInstance& instance);

// Full battery. Checks whose enumeration guard trips are reported as
// skipped rather than failed.
AuditReport run_all_checks(const AuctionOutcome& outcome,
                           const AuctionInstance& instance,
                           const IcOptions& ic_options = {});

}  // namespace clinch
