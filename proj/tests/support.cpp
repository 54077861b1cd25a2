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

#include "support.hpp"

#include <span>
#include <stdexcept>

namespace clinch_test {

using clinch::AuctionInstance;
using clinch::AuctionOutcome;
using clinch::Rational;
using clinch::Subset;

long long remnant_supply_reference(const clinch::RemnantContext& ctx,
                                   Subset s) {
  const clinch::SubmodularOracle& f = *ctx.oracle;
  const Subset ground = f.full_set();
  // Inner layer: the tightest supply-minus-allocated bound over all
  // supersets of the fixed part.
  const auto inner = [&](Subset fixed) {
    long long best = -1;
    for (Subset super = 0; super <= ground; ++super) {
      if ((super & fixed) != fixed) continue;
      long long value = f.eval(super);
      for (int i = 0; i < ctx.size(); ++i) {
        if (clinch::subset_contains(super, i)) value -= ctx.clinched[i];
      }
      if (best < 0 || value < best) best = value;
    }
    return best;
  };

  long long best = -1;
  Subset sub = s;
  while (true) {
    long long value = inner(sub);
    for (int i = 0; i < ctx.size(); ++i) {
      if (clinch::subset_contains(s, i) && !clinch::subset_contains(sub, i)) {
        value += ctx.demand[i];
      }
    }
    if (best < 0 || value < best) best = value;
    if (sub == 0) break;
    sub = (sub - 1) & s;
  }
  return best;
}

std::vector<long long> lw_greedy_truncated_rank(
    const AuctionInstance& instance) {
  const std::vector<clinch::VirtualBuyer> order =
      clinch::split_virtual(instance);
  const auto lifted = clinch::lifted_oracle(instance, order);
  const int m = static_cast<int>(order.size());

  // Quota sums can exceed any supply, so the truncated rank is evaluated in
  // exact arithmetic rather than clamped.
  const auto truncated_rank = [&](Subset s) {
    Rational best;
    bool first = true;
    Subset sub = s;
    while (true) {
      Rational value(lifted->eval(s & ~sub));
      for (int j = 0; j < m; ++j) {
        if (clinch::subset_contains(sub, j)) value += order[j].quota;
      }
      if (first || value < best) best = value;
      first = false;
      if (sub == 0) break;
      sub = (sub - 1) & s;
    }
    return best;
  };

  std::vector<long long> z(m, 0);
  Rational previous(0);
  Subset prefix = 0;
  for (int j = 0; j < m; ++j) {
    prefix = clinch::subset_with(prefix, j);
    const Rational current = truncated_rank(prefix);
    z[j] = (current - previous).to_int64();
    previous = current;
  }
  return z;
}

std::optional<ImprovementWitness> find_improvement_reference(
    const AuctionOutcome& outcome, const AuctionInstance& instance) {
  const int n = instance.buyer_count();
  std::vector<Rational> utility(n);
  Rational revenue(0);
  for (int i = 0; i < n; ++i) {
    utility[i] = instance.buyer(i).valuation * outcome.allocation[i] -
                 outcome.payments[i];
    revenue += outcome.payments[i];
  }

  std::optional<ImprovementWitness> found;
  clinch::for_each_polymatroid_point(
      instance.constraint(), [&](std::span<const long long> candidate) {
        if (found) return;
        // Raise every payment to the buyer's acceptance cap, then judge the
        // resulting outcome directly against the improvement definition.
        std::vector<Rational> payments(n);
        for (int i = 0; i < n; ++i) {
          const Rational value = instance.buyer(i).valuation * candidate[i];
          payments[i] = min(instance.buyer(i).budget, value - utility[i]);
        }

        Rational candidate_revenue(0);
        bool buyer_strict = false;
        for (int i = 0; i < n; ++i) {
          const Rational value = instance.buyer(i).valuation * candidate[i];
          if (value - payments[i] < utility[i]) return;          // worse off
          if (payments[i] > instance.buyer(i).budget) return;    // over budget
          if (value - payments[i] > utility[i]) buyer_strict = true;
          candidate_revenue += payments[i];
        }
        if (candidate_revenue < revenue) return;                 // seller worse
        if (candidate_revenue == revenue && !buyer_strict) return;
        found = ImprovementWitness{
            std::vector<long long>(candidate.begin(), candidate.end()),
            std::move(payments)};
      });
  return found;
}

bool depends_on_half_step(const clinch::SubmodularOracle& f,
                          const std::vector<long long>& x, int i, int j) {
  const int n = f.ground_set_size();
  std::vector<Rational> moved(n);
  for (int e = 0; e < n; ++e) moved[e] = Rational(x[e]);
  moved[i] += Rational(1, 2);
  moved[j] -= Rational(1, 2);

  for (int e = 0; e < n; ++e) {
    if (moved[e].is_negative()) return false;
  }
  for (Subset s = 1; s <= f.full_set(); ++s) {
    Rational total(0);
    for (int e = 0; e < n; ++e) {
      if (clinch::subset_contains(s, e)) total += moved[e];
    }
    if (total > Rational(f.eval(s))) return false;
  }
  return true;
}

void for_each_trace_state(
    const AuctionOutcome& outcome, const AuctionInstance& instance,
    const std::function<void(const clinch::RemnantContext&)>& visit) {
  const int n = instance.buyer_count();
  clinch::RemnantContext ctx;
  ctx.oracle = instance.constraint_ptr().get();
  ctx.clinched.assign(n, 0);
  ctx.demand.resize(n);
  for (int i = 0; i < n; ++i) ctx.demand[i] = instance.singleton_cap(i) + 1;
  visit(ctx);
  for (const clinch::Event& e : outcome.trace) {
    switch (e.kind) {
      case clinch::Event::Kind::demand_zeroed:
        ctx.demand[e.buyer] = 0;
        break;
      case clinch::Event::Kind::demand_decremented:
        ctx.demand[e.buyer] -= 1;
        break;
      case clinch::Event::Kind::clinch:
        ctx.clinched[e.buyer] += e.amount;
        ctx.demand[e.buyer] -= e.amount;
        break;
      case clinch::Event::Kind::price_set:
      case clinch::Event::Kind::drop:
        break;
    }
    visit(ctx);
  }
}

std::vector<AuctionInstance> build_corpus(const CorpusParams& params) {
  std::vector<AuctionInstance> corpus;
  corpus.reserve(params.count);
  const clinch::OracleFamily families[] = {
      clinch::OracleFamily::multi_unit, clinch::OracleFamily::bipartite,
      clinch::OracleFamily::explicit_table};
  for (int k = 0; k < params.count; ++k) {
    clinch::GenerateParams generate;
    generate.buyers = 2 + k % (params.max_buyers - 1);
    generate.max_supply = params.max_supply;
    corpus.push_back(clinch::generate(families[k % 3], generate,
                                      params.seed + 0x9e3779b9ULL * k));
  }
  return corpus;
}

const clinch::CheckResult& find_check(const clinch::AuditReport& report,
                                      const std::string& name) {
  for (const clinch::CheckResult& check : report.checks) {
    if (check.name == name) return check;
  }
  throw std::runtime_error("no check named " + name);
}

}  // namespace clinch_test
