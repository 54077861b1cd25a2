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
#include <span>
#include <vector>

#include "clinch/auction.hpp"
#include "clinch/rational.hpp"
#include "clinch/submodular.hpp"

namespace clinch {

// sum of valuation_i * x_i. Requires x integral and inside the constraint.
Rational social_welfare(const AuctionInstance& instance,
                        std::span<const long long> x);

// sum of min(valuation_i * x_i, budget_i): value capped by ability to pay.
Rational liquid_welfare(const AuctionInstance& instance,
                        std::span<const long long> x);

// Budget-exhausting split of a buyer into two one-budget-rate pieces. Part a
// carries quota = floor(budget / valuation) units at full valuation; part b
// carries the remainder as a single unit priced at the leftover budget. When
// the budget divides exactly the remainder piece is a dummy with zero budget
// and valuation halved, so the descending order stays strict within the
// buyer.
struct VirtualBuyer {
  int parent = 0;  // 0-based buyer index
  enum class Part { a, b } part = Part::a;
  Rational valuation;  // > 0
  Rational budget;     // >= 0
  Rational quota;      // budget / valuation, integer by construction
};

// The 2n virtual buyers sorted by non-increasing valuation; ties broken by
// parent index then part, so the order is deterministic.
std::vector<VirtualBuyer> split_virtual(const AuctionInstance& instance);

// Supply oracle over virtual buyers: evaluates the base constraint on the
// set of parents. Monotone submodular whenever the base is.
std::shared_ptr<const SubmodularOracle> lifted_oracle(
    const AuctionInstance& instance, const std::vector<VirtualBuyer>& order);

struct LwOptResult {
  std::vector<VirtualBuyer> order;   // greedy processing order
  std::vector<long long> z;          // per order position
  std::vector<long long> z_a;        // per original buyer, part a
  std::vector<long long> z_b;        // per original buyer, part b
  std::vector<long long> allocation; // x* = z_a + z_b
  Rational lw_value;
};

// Maximum liquid welfare over integer points of the constraint, computed by
// the greedy over virtual buyers in descending-valuation order:
// z_j = min(quota_j, min over prefix subsets H of lifted(H + j) - z(H)).
LwOptResult lw_optimal(const AuctionInstance& instance);

// Same greedy on a caller-supplied order; the order must be sorted by
// non-increasing valuation. Exposes the tie-break for invariance tests.
LwOptResult lw_optimal_with_order(const AuctionInstance& instance,
                                  const std::vector<VirtualBuyer>& order);

// Exhaustive maximum over integer points of the constraint. Reference
// implementation for small markets.
Rational lw_brute(const AuctionInstance& instance);

}  // namespace clinch
