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
//
// Reference implementations the test suite trusts instead of the library
// code under test. Each one recomputes a production quantity along a
// different formula or search, so agreement is evidence and disagreement is
// a bug with a witness.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clinch/audit.hpp"
#include "clinch/auction.hpp"
#include "clinch/instances.hpp"
#include "clinch/rational.hpp"
#include "clinch/remnant.hpp"
#include "clinch/submodular.hpp"
#include "clinch/welfare.hpp"

namespace clinch_test {

// Remnant supply by the layered two-level minimization
//   min over S' of S  { min over supersets S'' of S'  {f(S'') - x(S'')}
//                       + d(S minus S') }
// instead of the single-pass form used by the library.
long long remnant_supply_reference(const clinch::RemnantContext& ctx,
                                   clinch::Subset s);

// Liquid-welfare greedy through the quota-truncated rank function
//   g(S) = min over S' of S { lifted(S minus S') + quota(S') }
// taking z_j = g(first j) - g(first j-1) along the descending order. Same
// optimum as the library greedy, reached by a different recursion.
std::vector<long long> lw_greedy_truncated_rank(
    const clinch::AuctionInstance& instance);

// Pareto improvement search that constructs candidate payments explicitly
// (each buyer's payment raised to its acceptance cap) and then evaluates
// the improvement definition term by term: every buyer weakly better off,
// payments within budget, seller revenue not lower, somebody strictly
// better off.
struct ImprovementWitness {
  std::vector<long long> allocation;
  std::vector<clinch::Rational> payments;
};
std::optional<ImprovementWitness> find_improvement_reference(
    const clinch::AuctionOutcome& outcome,
    const clinch::AuctionInstance& instance);

// Dependence via a half-unit rational step: x + (chi_i - chi_j)/2 inside
// the rational polytope. Cross-checks the library's unit-step reduction.
bool depends_on_half_step(const clinch::SubmodularOracle& f,
                          const std::vector<long long>& x, int i, int j);

// Replays the recorded event trace of a finished run and hands the
// (clinched, demand) state to visit at the start and after every event.
// Remnant-supply identities are only promised on states the auction can
// reach, so property tests sample states through this instead of drawing
// arbitrary vectors.
void for_each_trace_state(
    const clinch::AuctionOutcome& outcome,
    const clinch::AuctionInstance& instance,
    const std::function<void(const clinch::RemnantContext&)>& visit);

// Deterministic mixed-family corpus. Index k uses family k mod 3 and a
// buyer count cycling 2..max_buyers; every instance satisfies
// f(N) <= max_supply by generator construction.
struct CorpusParams {
  int count = 100;
  int max_buyers = 6;
  long long max_supply = 8;
  std::uint64_t seed = 20260814;
};
std::vector<clinch::AuctionInstance> build_corpus(const CorpusParams& params);

// The check entry with the given name; fails the calling test when absent.
const clinch::CheckResult& find_check(const clinch::AuditReport& report,
                                      const std::string& name);

}  // namespace clinch_test
