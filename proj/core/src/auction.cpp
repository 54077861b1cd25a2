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

#include "clinch/auction.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "clinch/errors.hpp"

namespace clinch {

namespace {

// Total demand can only shrink; this caps both memory and iteration count.
constexpr long long kMaxTotalDemand = 1'000'000;

void require_permutation(const std::vector<int>& order, int n,
                         const char* what) {
  if (order.empty()) return;
  if (static_cast<int>(order.size()) != n) {
    throw Error(ErrorCode::validation_error,
                std::string(what) + " must cover every buyer");
  }
  std::vector<bool> seen(n, false);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v]) {
      throw Error(ErrorCode::validation_error,
                  std::string(what) + " is not a permutation");
    }
    seen[v] = true;
  }
}

}  // namespace

const char* to_string(DropCause cause) {
  switch (cause) {
    case DropCause::line5:
      return "line5";
    case DropCause::line9:
      return "line9";
    case DropCause::clinch:
      return "clinch";
  }
  return "?";
}

AuctionInstance::AuctionInstance(
    std::vector<Buyer> buyers, std::shared_ptr<const SubmodularOracle> constraint)
    : buyers_(std::move(buyers)), constraint_(std::move(constraint)) {
  if (constraint_ == nullptr) {
    throw Error(ErrorCode::invalid_instance, "missing constraint");
  }
  const int n = static_cast<int>(buyers_.size());
  if (n < 1) {
    throw Error(ErrorCode::invalid_instance, "no buyers");
  }
  if (constraint_->ground_set_size() != n) {
    throw Error(ErrorCode::invalid_instance,
                "constraint ground set does not match the buyer list");
  }
  if (n > max_ground_set()) {
    throw Error(ErrorCode::ground_set_too_large,
                std::to_string(n) + " buyers exceeds guard of " +
                    std::to_string(max_ground_set()));
  }
  for (int i = 0; i < n; ++i) {
    const Buyer& b = buyers_[i];
    if (b.id != i + 1) {
      throw Error(ErrorCode::invalid_instance,
                  "buyer ids must be 1..n in order");
    }
    if (!b.valuation.is_positive() || !b.bid.is_positive() ||
        !b.budget.is_positive()) {
      throw Error(ErrorCode::invalid_instance,
                  "buyer " + std::to_string(b.id) +
                      " needs positive valuation, bid and budget");
    }
  }
  // Competition (no indispensable buyer) is checked at run time instead:
  // welfare optima are well defined without it.
  const OracleValidation check = validate_oracle(*constraint_);
  if (!check.polymatroid_ok()) {
    throw Error(ErrorCode::validation_error, check.describe());
  }
  singleton_caps_.resize(n);
  for (int i = 0; i < n; ++i) {
    singleton_caps_[i] = constraint_->eval(singleton(i));
  }
  total_supply_ = constraint_->eval(constraint_->full_set());
}

AuctionInstance AuctionInstance::with_bid(int index, const Rational& bid) const {
  std::vector<Buyer> buyers = buyers_;
  buyers.at(index).bid = bid;
  return AuctionInstance(std::move(buyers), constraint_);
}

AuctionInstance AuctionInstance::with_truthful_bids() const {
  std::vector<Buyer> buyers = buyers_;
  for (Buyer& b : buyers) b.bid = b.valuation;
  return AuctionInstance(std::move(buyers), constraint_);
}

AuctionState AuctionState::initial(const AuctionInstance& instance) {
  const int n = instance.buyer_count();
  AuctionState st;
  st.clinched.assign(n, 0);
  st.payments.assign(n, Rational(0));
  st.demand.resize(n);
  // One above the singleton cap: demand stays an overestimate of what the
  // buyer could still take until the price reveals its budget.
  for (int i = 0; i < n; ++i) st.demand[i] = instance.singleton_cap(i) + 1;
  st.price = Rational(0);
  return st;
}

bool AuctionState::any_active() const {
  return std::any_of(demand.begin(), demand.end(),
                     [](long long d) { return d > 0; });
}

Rational next_price(const AuctionState& state, const AuctionInstance& instance) {
  const int n = instance.buyer_count();
  bool found = false;
  Rational best;
  for (int i = 0; i < n; ++i) {
    if (!state.active(i)) continue;
    const Rational headroom =
        (instance.buyer(i).budget - state.payments[i]) /
        Rational(state.demand[i]);
    const Rational stop = min(instance.buyer(i).bid, headroom);
    if (!found || stop < best) {
      best = stop;
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::no_active_buyers, "no active buyer for a price");
  }
  return best;
}

std::vector<long long> clinch_amounts(const AuctionState& state,
                                      const AuctionInstance& instance) {
  const int n = instance.buyer_count();
  RemnantContext ctx{&instance.constraint(), state.clinched, state.demand};
  const Subset all = full_subset(n);
  const long long whole = remnant_supply(ctx, all);
  std::vector<long long> amounts(n);
  for (int i = 0; i < n; ++i) {
    amounts[i] = whole - remnant_supply(ctx, subset_without(all, i));
  }
  return amounts;
}

namespace {

class Engine {
 public:
  Engine(const AuctionInstance& instance, const AuctionOptions& options)
      : inst_(instance), opts_(options), n_(instance.buyer_count()) {
    clinch_order_.resize(n_);
    std::iota(clinch_order_.begin(), clinch_order_.end(), 0);
    if (!opts_.clinch_order.empty()) clinch_order_ = opts_.clinch_order;
    pick_order_.resize(n_);
    std::iota(pick_order_.begin(), pick_order_.end(), 0);
    if (!opts_.pick_order.empty()) pick_order_ = opts_.pick_order;
  }

  AuctionOutcome run() {
    st_ = AuctionState::initial(inst_);
    ever_line9_.assign(n_, false);
    line9_this_iter_.assign(n_, false);
    dropped_.assign(n_, false);
    check_state();

    long long max_iterations = n_;
    for (int i = 0; i < n_; ++i) max_iterations += inst_.singleton_cap(i);

    while (st_.any_active()) {
      ++iterations_;
      if (iterations_ > max_iterations) {
        throw std::logic_error("price clock exceeded the iteration bound");
      }
      const Rational next = next_price(st_, inst_);
      if (opts_.check_invariants && !(st_.price < next)) {
        throw std::logic_error("price clock failed to advance");
      }
      st_.price = next;
      std::fill(line9_this_iter_.begin(), line9_this_iter_.end(), false);
      push({Event::Kind::price_set, st_.price});
      check_state();

      // Retire every buyer whose bid has been reached.
      for (;;) {
        const int j = pick([&](int b) {
          return st_.active(b) && inst_.buyer(b).bid == st_.price;
        });
        if (j < 0) break;
        st_.demand[j] = 0;
        push({Event::Kind::demand_zeroed, st_.price, j});
        record_drop(j, DropCause::line5);
        check_state();
        clinch_round();
      }

      // Walk buyers sitting exactly on the budget boundary down one unit.
      for (;;) {
        const int j = pick([&](int b) {
          return st_.active(b) &&
                 Rational(st_.demand[b]) ==
                     (inst_.buyer(b).budget - st_.payments[b]) / st_.price;
        });
        if (j < 0) break;
        st_.demand[j] -= 1;
        ever_line9_[j] = true;
        line9_this_iter_[j] = true;
        push({Event::Kind::demand_decremented, st_.price, j});
        if (st_.demand[j] == 0) record_drop(j, DropCause::line9);
        check_state();
        clinch_round();
      }
    }

    AuctionOutcome out;
    out.allocation = st_.clinched;
    out.payments = st_.payments;
    out.trace = std::move(trace_);
    out.iterations = iterations_;
    return out;
  }

 private:
  template <typename Pred>
  int pick(const Pred& eligible) const {
    for (int b : pick_order_) {
      if (eligible(b)) return b;
    }
    return -1;
  }

  void push(Event e) { trace_.push_back(std::move(e)); }

  void record_drop(int buyer, DropCause cause) {
    if (dropped_[buyer]) {
      throw std::logic_error("buyer dropped twice");
    }
    dropped_[buyer] = true;
    Event e{Event::Kind::drop, st_.price, buyer};
    e.cause = cause;
    push(std::move(e));
  }

  // One pass of transactions: each buyer takes the most it can without
  // shrinking what remains available to the others. Processing is
  // sequential on the live state; the resulting amounts match the
  // entry-state formula no matter the order, which invariant mode asserts.
  void clinch_round() {
    std::vector<long long> expected;
    if (opts_.check_invariants) expected = clinch_amounts(st_, inst_);

    const Subset all = full_subset(n_);
    for (int idx : clinch_order_) {
      RemnantContext ctx{&inst_.constraint(), st_.clinched, st_.demand};
      const long long take = remnant_supply(ctx, all) -
                             remnant_supply(ctx, subset_without(all, idx));
      if (take < 0 || take > st_.demand[idx]) {
        throw std::logic_error("clinch amount out of range");
      }
      if (opts_.check_invariants && take != expected[idx]) {
        throw std::logic_error("clinch amount depends on processing order");
      }
      if (take == 0) continue;
      st_.clinched[idx] += take;
      st_.payments[idx] += st_.price * Rational(take);
      st_.demand[idx] -= take;
      Event e{Event::Kind::clinch, st_.price, idx};
      e.amount = take;
      push(std::move(e));
      if (st_.demand[idx] == 0) record_drop(idx, DropCause::clinch);
      check_state();
    }
  }

  // Re-derives the run's ground truth at the current point: the allocation
  // stays in the constraint, payments stay under budgets, clinched plus
  // remnant supply conserves f(N), and every active buyer's demand sits in
  // the history-determined relation to its remaining budget per unit.
  void check_state() const {
    if (!opts_.check_invariants) return;
    if (!in_polymatroid(inst_.constraint(), st_.clinched)) {
      throw std::logic_error("allocation left the constraint");
    }
    RemnantContext ctx{&inst_.constraint(), st_.clinched, st_.demand};
    const long long sold =
        std::accumulate(st_.clinched.begin(), st_.clinched.end(), 0LL);
    if (sold + remnant_supply(ctx, full_subset(n_)) != inst_.total_supply()) {
      throw std::logic_error("supply not conserved");
    }
    for (int i = 0; i < n_; ++i) {
      if (inst_.buyer(i).budget < st_.payments[i]) {
        throw std::logic_error("payment exceeded budget");
      }
      if (st_.demand[i] < 0) {
        throw std::logic_error("negative demand");
      }
      if (!st_.active(i)) continue;
      const Rational demand(st_.demand[i]);
      if (st_.price.is_zero()) {
        if (st_.demand[i] != inst_.singleton_cap(i) + 1) {
          throw std::logic_error("demand changed before the clock started");
        }
        continue;
      }
      const Rational headroom =
          (inst_.buyer(i).budget - st_.payments[i]) / st_.price;
      if (!ever_line9_[i]) {
        if (st_.demand[i] != inst_.singleton_cap(i) + 1 - st_.clinched[i] ||
            headroom < demand) {
          throw std::logic_error("demand characterization (fresh) broken");
        }
      } else if (line9_this_iter_[i]) {
        if (demand != headroom - Rational(1)) {
          throw std::logic_error("demand characterization (boundary) broken");
        }
      } else {
        if (demand != headroom.floor()) {
          throw std::logic_error("demand characterization (carried) broken");
        }
      }
    }
  }

  const AuctionInstance& inst_;
  const AuctionOptions& opts_;
  int n_;
  std::vector<int> clinch_order_;
  std::vector<int> pick_order_;
  AuctionState st_;
  std::vector<Event> trace_;
  std::vector<bool> ever_line9_;
  std::vector<bool> line9_this_iter_;
  std::vector<bool> dropped_;
  long long iterations_ = 0;
};

}  // namespace

AuctionOutcome run_auction(const AuctionInstance& instance,
                           const AuctionOptions& options) {
  const int n = instance.buyer_count();
  if (n > max_ground_set()) {
    throw Error(ErrorCode::ground_set_too_large,
                std::to_string(n) + " buyers exceeds guard of " +
                    std::to_string(max_ground_set()));
  }
  long long total_demand = n;
  for (int i = 0; i < n; ++i) total_demand += instance.singleton_cap(i);
  if (total_demand > kMaxTotalDemand) {
    throw Error(ErrorCode::guard_exceeded,
                "total demand " + std::to_string(total_demand) +
                    " exceeds the run guard");
  }
  require_permutation(options.clinch_order, n, "clinch order");
  require_permutation(options.pick_order, n, "pick order");

  // The price-clock argument needs every buyer to be dispensable; a market
  // with f(N) > f(N \ i) could stall with goods only buyer i may take.
  const OracleValidation check = validate_oracle(*instance.constraint_ptr());
  if (!check.all_ok()) {
    throw Error(ErrorCode::validation_error, check.describe());
  }

  Engine engine(instance, options);
  return engine.run();
}

}  // namespace clinch
