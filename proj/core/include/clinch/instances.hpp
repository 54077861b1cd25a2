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
#include <string_view>

#include <nlohmann/json.hpp>

#include "clinch/auction.hpp"

namespace clinch {

// JSON market document:
//
//   {
//     "buyers": [{"id": 1, "valuation": "3/2", "bid": "1", "budget": "4"}],
//     "constraint": {"type": "multi_unit", "supply": 5}
//   }
//
// Rationals are strings ("p/q" or "p"); plain JSON integers are accepted on
// input. "bid" may be omitted and defaults to the valuation. Other
// constraint types: {"type": "bipartite", "goods": [{"id": 1, "units": 2}],
// "edges": [[buyer_id, good_id], ...]} and {"type": "explicit",
// "values": {"": 0, "1": 1, "1,2": 2, ...}} with all 2^n subset keys
// present (comma-separated sorted ids, "" for the empty set). Unknown
// fields anywhere are rejected.
AuctionInstance load_instance(const nlohmann::json& doc);
AuctionInstance load_instance_text(std::string_view text);
AuctionInstance load_instance_file(const std::string& path);

// Canonical document: buyers sorted by id, bid omitted when it equals the
// valuation, rationals in canonical string form, explicit tables keyed in
// bitmask order. load(save(x)) == save(x) byte for byte.
nlohmann::ordered_json instance_to_json(const AuctionInstance& instance);
std::string instance_to_text(const AuctionInstance& instance);

// Named parametric families used across tests and the command line:
//   prop54     two buyers, valuations (1, k), budgets (k, k), k >= 2 units
//              for any nonempty set; the welfare-ratio worst case
//   example62  two buyers, valuations (k, 2), k >= 3, unit budgets, one good
AuctionInstance fixture(const std::string& name, long long k);

enum class OracleFamily { multi_unit, bipartite, explicit_table };

struct GenerateParams {
  int buyers = 3;
  long long max_supply = 6;        // cap on f(N)
  int max_goods = 3;               // bipartite only
  int max_elements = 3;            // explicit coverage tables
  long long max_value_num = 12;    // valuation numerator range
  long long max_den = 4;           // denominator range for rationals
  long long max_budget_num = 16;   // budget numerator range
};

// Deterministic under (family, params, seed). Bipartite and coverage
// constraints are repaired rather than rejected when a good or element ends
// up captive to a single buyer, by wiring in a second competing buyer.
AuctionInstance generate(OracleFamily family, const GenerateParams& params,
                         std::uint64_t seed);

}  // namespace clinch
