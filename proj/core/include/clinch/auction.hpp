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

#include <memory>
#include <vector>

#include "clinch/rational.hpp"
#include "clinch/remnant.hpp"
#include "clinch/submodular.hpp"

namespace clinch {

struct Buyer {
  int id = 0;  // 1-based, equals position + 1 after canonicalization
  Rational valuation;
  Rational bid;
  Rational budget;
};

// Validated market: positive valuations, bids and budgets, and a supply
// oracle that satisfies the polymatroid axioms. Competition (f(N) = f(N\i)
// for every buyer, so nobody is indispensable) is required to run the
// auction but not to value or audit an outcome; run_auction enforces it.
class AuctionInstance {
 public:
  AuctionInstance(std::vector<Buyer> buyers,
                  std::shared_ptr<const SubmodularOracle> constraint);

  int buyer_count() const { return static_cast<int>(buyers_.size()); }
  const Buyer& buyer(int index) const { return buyers_[index]; }
  const std::vector<Buyer>& buyers() const { return buyers_; }

  const SubmodularOracle& constraint() const { return *constraint_; }
  std::shared_ptr<const SubmodularOracle> constraint_ptr() const {
    return constraint_;
  }

  long long total_supply() const { return total_supply_; }
  long long singleton_cap(int index) const { return singleton_caps_[index]; }

  // Copy with one bid replaced; used for unilateral deviations.
  AuctionInstance with_bid(int index, const Rational& bid) const;
  // Copy with every bid reset to the valuation.
  AuctionInstance with_truthful_bids() const;

 private:
  std::vector<Buyer> buyers_;
  std::shared_ptr<const SubmodularOracle> constraint_;
  std::vector<long long> singleton_caps_;
  long long total_supply_ = 0;
};

// Clock state. A buyer is active while its demand is positive.
struct AuctionState {
  std::vector<long long> clinched;
  std::vector<Rational> payments;
  std::vector<long long> demand;
  Rational price;

  static AuctionState initial(const AuctionInstance& instance);

  bool active(int index) const { return demand[index] > 0; }
  bool any_active() const;
};

enum class DropCause { line5, line9, clinch };

const char* to_string(DropCause cause);

// One observable step of the run. price always carries the clock value at
// which the event happened.
struct Event {
  enum class Kind {
    price_set,
    demand_zeroed,       // bid met the clock, demand forced to zero
    demand_decremented,  // budget boundary hit, demand reduced by one
    clinch,
    drop,
  };

  Kind kind;
  Rational price;
  int buyer = -1;       // all kinds except price_set
  long long amount = 0;  // clinch only
  DropCause cause = DropCause::line5;  // drop only
};

struct AuctionOutcome {
  std::vector<long long> allocation;
  std::vector<Rational> payments;
  std::vector<Event> trace;
  long long iterations = 0;
};

struct AuctionOptions {
  // Processing order inside a clinch round; empty means ascending id. The
  // final outcome is order-independent, which tests exercise through this.
  std::vector<int> clinch_order;
  // Priority for picking the next buyer in the two demand-update loops;
  // empty means ascending id.
  std::vector<int> pick_order;
  // Re-derive every internal step from first principles while running:
  // membership, budget feasibility, conservation of supply, the demand
  // characterization and clinch amounts against the definitional formula.
  // Engine defects surface as exceptions instead of silent bad outcomes.
  bool check_invariants = false;
};

// Next clock stop: min over active i of min(bid_i, (budget_i - paid_i) /
// demand_i). Requires at least one active buyer.
Rational next_price(const AuctionState& state, const AuctionInstance& instance);

// Per-buyer clinch amounts at the given state, evaluated on the state as
// given (no sequential application): remnant(N) - remnant(N \ i).
std::vector<long long> clinch_amounts(const AuctionState& state,
                                      const AuctionInstance& instance);

// Ascending-price clinching run. Demands start at the singleton cap plus
// one; each price stop first retires buyers whose bid equals the clock, then
// walks buyers sitting exactly on their budget boundary, clinching after
// every demand update; terminates when nobody is active.
AuctionOutcome run_auction(const AuctionInstance& instance,
                           const AuctionOptions& options = {});

}  // namespace clinch
