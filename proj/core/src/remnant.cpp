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

#include "clinch/remnant.hpp"

#include <algorithm>
#include <limits>

#include "clinch/errors.hpp"

namespace clinch {

namespace {

void require_context(const RemnantContext& ctx) {
  if (ctx.oracle == nullptr) {
    throw Error(ErrorCode::validation_error, "remnant context without oracle");
  }
  const std::size_t n = ctx.oracle->ground_set_size();
  if (ctx.clinched.size() != n || ctx.demand.size() != n) {
    throw Error(ErrorCode::validation_error, "remnant context size mismatch");
  }
}

}  // namespace

long long remnant_supply(const RemnantContext& ctx, Subset s) {
  require_context(ctx);
  if (subset_size(s) > max_ground_set()) {
    throw Error(ErrorCode::subset_limit,
                "remnant query over " + subset_to_string(s));
  }
  if ((s & ~full_subset(ctx.size())) != 0) {
    throw Error(ErrorCode::validation_error,
                "subset outside the ground set: " + subset_to_string(s));
  }
  const SubmodularOracle& f = *ctx.oracle;
  long long best = std::numeric_limits<long long>::max();
  // All submasks of s, including empty and s itself.
  Subset sub = s;
  for (;;) {
    const long long value = f.eval(sub) - sum_over(ctx.clinched, sub) +
                            sum_over(ctx.demand, s & ~sub);
    best = std::min(best, value);
    if (sub == 0) break;
    sub = (sub - 1) & s;
  }
  return best;
}

long long clinch_amount_definition(const RemnantContext& ctx, int buyer) {
  require_context(ctx);
  const int n = ctx.size();
  if (buyer < 0 || buyer >= n) {
    throw Error(ErrorCode::validation_error, "buyer index out of range");
  }
  const Subset rest = subset_without(full_subset(n), buyer);
  // Moving w units to the buyer keeps every rival coalition whole exactly
  // when w <= remnant(S + buyer) - remnant(S) for all S avoiding the buyer.
  long long limit = std::numeric_limits<long long>::max();
  Subset sub = rest;
  for (;;) {
    const long long slack =
        remnant_supply(ctx, subset_with(sub, buyer)) - remnant_supply(ctx, sub);
    limit = std::min(limit, slack);
    if (sub == 0) break;
    sub = (sub - 1) & rest;
  }
  return std::min(limit, ctx.demand[buyer]);
}

}  // namespace clinch
