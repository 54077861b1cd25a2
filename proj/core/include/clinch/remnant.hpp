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

#include <vector>

#include "clinch/submodular.hpp"

namespace clinch {

// Mid-auction view of the market: units already clinched and the residual
// demand caps. The remnant supply available to a coalition S is
//
//   min over S' subset of S of  f(S') - clinched(S') + demand(S \ S')
//
// the rank of the supply polytope after earlier transactions are fixed and
// every buyer outside S' is capped at its demand.
struct RemnantContext {
  const SubmodularOracle* oracle = nullptr;
  std::vector<long long> clinched;
  std::vector<long long> demand;

  int size() const { return oracle ? oracle->ground_set_size() : 0; }
};

long long remnant_supply(const RemnantContext& ctx, Subset s);

// Largest w <= demand[buyer] such that granting buyer w more units leaves
// every other coalition's remnant supply intact. Direct evaluation of the
// definition; quadratic in the subset lattice, used as the reference the
// fast engine is audited against.
long long clinch_amount_definition(const RemnantContext& ctx, int buyer);

}  // namespace clinch
