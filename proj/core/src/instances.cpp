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

#include "clinch/instances.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <utility>

#include "clinch/errors.hpp"

namespace clinch {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad_doc(const std::string& why) {
  throw Error(ErrorCode::parse_error, why);
}

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) bad_doc(where + " must be an object");
  for (const char* key : required) {
    if (!obj.contains(key)) bad_doc(where + " is missing '" + key + "'");
  }
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    const bool known =
        std::any_of(required.begin(), required.end(),
                    [&](const char* k) { return key == k; }) ||
        std::any_of(optional.begin(), optional.end(),
                    [&](const char* k) { return key == k; });
    if (!known) bad_doc("unknown field '" + key + "' in " + where);
  }
}

long long get_int(const json& value, const std::string& where) {
  if (!value.is_number_integer()) {
    bad_doc(where + " must be an integer");
  }
  if (value.is_number_unsigned() &&
      value.get<unsigned long long>() >
          static_cast<unsigned long long>(
              std::numeric_limits<long long>::max())) {
    bad_doc(where + " is out of range");
  }
  return value.get<long long>();
}

Rational get_rational(const json& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return Rational::from_string(value.get<std::string>());
    } catch (const Error&) {
      bad_doc(where + " is not a rational literal");
    }
  }
  if (value.is_number_integer()) {
    return Rational(get_int(value, where));
  }
  bad_doc(where + " must be a rational string or an integer");
}

std::string subset_key(Subset s) {
  std::string key;
  bool first = true;
  for (int i = 0; i < kGroundSetLimit; ++i) {
    if (!subset_contains(s, i)) continue;
    if (!first) key += ",";
    key += std::to_string(i + 1);
    first = false;
  }
  return key;
}

Subset parse_subset_key(const std::string& key, int n) {
  if (key.empty()) return 0;
  Subset mask = 0;
  int previous = 0;
  std::stringstream stream(key);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty() ||
        !std::all_of(token.begin(), token.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
      bad_doc("bad subset key '" + key + "'");
    }
    const long long id = std::stoll(token);
    if (id < 1 || id > n || id <= previous) {
      bad_doc("subset key '" + key + "' must list ids in 1.." +
              std::to_string(n) + " in increasing order");
    }
    previous = static_cast<int>(id);
    mask = subset_with(mask, static_cast<int>(id - 1));
  }
  return mask;
}

std::shared_ptr<const SubmodularOracle> parse_constraint(const json& doc,
                                                         int n) {
  require_keys(doc, "constraint", {"type"}, {"supply", "goods", "edges", "values"});
  if (!doc["type"].is_string()) bad_doc("constraint type must be a string");
  const std::string type = doc["type"].get<std::string>();

  if (type == "multi_unit") {
    require_keys(doc, "multi_unit constraint", {"type", "supply"});
    const long long supply = get_int(doc["supply"], "supply");
    if (supply < 0) bad_doc("supply must be nonnegative");
    return std::make_shared<MultiUnitOracle>(n, supply);
  }

  if (type == "bipartite") {
    require_keys(doc, "bipartite constraint", {"type", "goods", "edges"});
    if (!doc["goods"].is_array()) bad_doc("goods must be an array");
    // Goods carry document-level ids; internally they are densified to
    // ascending-id order, which is also the canonical emitted order.
    std::vector<std::pair<long long, long long>> listed;  // (id, units)
    for (const json& g : doc["goods"]) {
      require_keys(g, "good", {"id", "units"});
      const long long id = get_int(g["id"], "good id");
      const long long units = get_int(g["units"], "units");
      if (id < 1) bad_doc("good ids must be positive");
      if (units < 0) bad_doc("units must be nonnegative");
      for (const auto& [other, _] : listed) {
        if (other == id) bad_doc("duplicate good id " + std::to_string(id));
      }
      listed.emplace_back(id, units);
    }
    std::sort(listed.begin(), listed.end());
    std::map<long long, int> index;
    std::vector<BipartiteOracle::Good> goods(listed.size());
    for (std::size_t g = 0; g < listed.size(); ++g) {
      index[listed[g].first] = static_cast<int>(g);
      goods[g].units = listed[g].second;
    }
    if (!doc["edges"].is_array()) bad_doc("edges must be an array");
    for (const json& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2) {
        bad_doc("each edge must be a [buyer_id, good_id] pair");
      }
      const long long buyer = get_int(e[0], "edge buyer id");
      const long long good = get_int(e[1], "edge good id");
      if (buyer < 1 || buyer > n) bad_doc("edge buyer id out of range");
      const auto at = index.find(good);
      if (at == index.end()) bad_doc("edge references unknown good");
      Subset& mask = goods[at->second].buyers;
      if (subset_contains(mask, static_cast<int>(buyer - 1))) {
        bad_doc("duplicate edge");
      }
      mask = subset_with(mask, static_cast<int>(buyer - 1));
    }
    return std::make_shared<BipartiteOracle>(n, std::move(goods));
  }

  if (type == "explicit") {
    require_keys(doc, "explicit constraint", {"type", "values"});
    if (n > max_ground_set()) {
      throw Error(ErrorCode::ground_set_too_large,
                  "explicit table over " + std::to_string(n) + " buyers");
    }
    const json& table = doc["values"];
    if (!table.is_object()) bad_doc("values must be an object");
    const std::size_t expected = std::size_t{1} << n;
    if (table.size() != expected) {
      bad_doc("values must list all " + std::to_string(expected) + " subsets");
    }
    std::vector<long long> values(expected, -1);
    std::vector<bool> seen(expected, false);
    for (const auto& [key, value] : table.items()) {
      const Subset mask = parse_subset_key(key, n);
      if (seen[mask]) bad_doc("duplicate subset key '" + key + "'");
      seen[mask] = true;
      values[mask] = get_int(value, "value for '" + key + "'");
      if (values[mask] < 0) bad_doc("subset values must be nonnegative");
    }
    return std::make_shared<ExplicitOracle>(n, std::move(values));
  }

  bad_doc("unknown constraint type '" + type + "'");
}

}  // namespace

AuctionInstance load_instance(const json& doc) {
  require_keys(doc, "instance", {"buyers", "constraint"});
  if (!doc["buyers"].is_array() || doc["buyers"].empty()) {
    bad_doc("buyers must be a nonempty array");
  }
  const int n = static_cast<int>(doc["buyers"].size());
  std::vector<Buyer> buyers(n);
  std::vector<bool> seen(n, false);
  for (const json& b : doc["buyers"]) {
    require_keys(b, "buyer", {"id", "valuation", "budget"}, {"bid"});
    const long long id = get_int(b["id"], "buyer id");
    if (id < 1 || id > n || seen[id - 1]) {
      bad_doc("buyer ids must be a permutation of 1.." + std::to_string(n));
    }
    seen[id - 1] = true;
    Buyer& buyer = buyers[id - 1];
    buyer.id = static_cast<int>(id);
    buyer.valuation = get_rational(b["valuation"], "valuation");
    buyer.budget = get_rational(b["budget"], "budget");
    buyer.bid = b.contains("bid") ? get_rational(b["bid"], "bid")
                                  : buyer.valuation;
  }
  auto constraint = parse_constraint(doc["constraint"], n);
  return AuctionInstance(std::move(buyers), std::move(constraint));
}

AuctionInstance load_instance_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    bad_doc(std::string("invalid JSON: ") + e.what());
  }
  return load_instance(doc);
}

AuctionInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_instance_text(buffer.str());
}

nlohmann::ordered_json instance_to_json(const AuctionInstance& instance) {
  ordered_json out;
  out["buyers"] = ordered_json::array();
  for (const Buyer& b : instance.buyers()) {
    ordered_json buyer;
    buyer["id"] = b.id;
    buyer["valuation"] = b.valuation.str();
    if (b.bid != b.valuation) buyer["bid"] = b.bid.str();
    buyer["budget"] = b.budget.str();
    out["buyers"].push_back(std::move(buyer));
  }

  const SubmodularOracle& oracle = instance.constraint();
  ordered_json constraint;
  if (const auto* multi = dynamic_cast<const MultiUnitOracle*>(&oracle)) {
    constraint["type"] = "multi_unit";
    constraint["supply"] = multi->supply();
  } else if (const auto* bip = dynamic_cast<const BipartiteOracle*>(&oracle)) {
    constraint["type"] = "bipartite";
    constraint["goods"] = ordered_json::array();
    ordered_json edges = ordered_json::array();
    for (int i = 0; i < oracle.ground_set_size(); ++i) {
      for (std::size_t g = 0; g < bip->goods().size(); ++g) {
        if (subset_contains(bip->goods()[g].buyers, i)) {
          edges.push_back(ordered_json::array({i + 1, g + 1}));
        }
      }
    }
    for (std::size_t g = 0; g < bip->goods().size(); ++g) {
      ordered_json good;
      good["id"] = g + 1;
      good["units"] = bip->goods()[g].units;
      constraint["goods"].push_back(std::move(good));
    }
    constraint["edges"] = std::move(edges);
  } else {
    // Explicit tables and any foreign oracle serialize by value.
    constraint["type"] = "explicit";
    ordered_json table;
    for (Subset s = 0; s <= oracle.full_set(); ++s) {
      table[subset_key(s)] = oracle.eval(s);
    }
    constraint["values"] = std::move(table);
  }
  out["constraint"] = std::move(constraint);
  return out;
}

std::string instance_to_text(const AuctionInstance& instance) {
  return instance_to_json(instance).dump(2) + "\n";
}

AuctionInstance fixture(const std::string& name, long long k) {
  if (name == "prop54") {
    if (k < 2) {
      throw Error(ErrorCode::validation_error, "prop54 needs k >= 2");
    }
    std::vector<Buyer> buyers(2);
    buyers[0] = {1, Rational(1), Rational(1), Rational(k)};
    buyers[1] = {2, Rational(k), Rational(k), Rational(k)};
    return AuctionInstance(std::move(buyers),
                           std::make_shared<MultiUnitOracle>(2, k));
  }
  if (name == "example62") {
    if (k < 3) {
      throw Error(ErrorCode::validation_error, "example62 needs k >= 3");
    }
    std::vector<Buyer> buyers(2);
    buyers[0] = {1, Rational(k), Rational(k), Rational(1)};
    buyers[1] = {2, Rational(2), Rational(2), Rational(1)};
    return AuctionInstance(std::move(buyers),
                           std::make_shared<MultiUnitOracle>(2, 1));
  }
  throw Error(ErrorCode::unknown_fixture, "no fixture named '" + name + "'");
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  long long uniform(long long lo, long long hi) {
    return lo + static_cast<long long>(engine_() %
                                       static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rational rational(long long max_num, long long max_den) {
    const long long num = uniform(1, max_num);
    const long long den = uniform(1, max_den);
    return Rational(num, den);
  }

  Subset mask(int n) {
    return static_cast<Subset>(engine_() & full_subset(n));
  }

 private:
  std::mt19937_64 engine_;
};

// A positive-weight element reachable from exactly one buyer would make that
// buyer indispensable; wiring in one more buyer restores competition.
Subset ensure_competitive(Subset buyers, long long weight, int n, Rng& rng) {
  if (buyers == 0) buyers = singleton(static_cast<int>(rng.uniform(0, n - 1)));
  while (weight > 0 && subset_size(buyers) < 2) {
    buyers = subset_with(buyers, static_cast<int>(rng.uniform(0, n - 1)));
  }
  return buyers;
}

}  // namespace

AuctionInstance generate(OracleFamily family, const GenerateParams& params,
                         std::uint64_t seed) {
  if (params.buyers < 2 || params.buyers > max_ground_set()) {
    throw Error(ErrorCode::generation_failed,
                "generator needs between 2 and " +
                    std::to_string(max_ground_set()) + " buyers");
  }
  if (params.max_supply < 1) {
    throw Error(ErrorCode::generation_failed, "generator needs supply");
  }
  Rng rng(seed);
  const int n = params.buyers;

  for (int attempt = 0; attempt < 200; ++attempt) {
    std::shared_ptr<const SubmodularOracle> oracle;
    switch (family) {
      case OracleFamily::multi_unit: {
        oracle = std::make_shared<MultiUnitOracle>(
            n, rng.uniform(1, params.max_supply));
        break;
      }
      case OracleFamily::bipartite: {
        const int count = static_cast<int>(rng.uniform(1, params.max_goods));
        long long remaining = params.max_supply;
        std::vector<BipartiteOracle::Good> goods(count);
        for (BipartiteOracle::Good& good : goods) {
          good.units = rng.uniform(0, remaining);
          remaining -= good.units;
          good.buyers = ensure_competitive(rng.mask(n), good.units, n, rng);
        }
        oracle = std::make_shared<BipartiteOracle>(n, std::move(goods));
        break;
      }
      case OracleFamily::explicit_table: {
        const int count =
            static_cast<int>(rng.uniform(1, params.max_elements));
        long long remaining = params.max_supply;
        std::vector<long long> weight(count);
        std::vector<Subset> cover(count);
        for (int j = 0; j < count; ++j) {
          weight[j] = rng.uniform(0, remaining);
          remaining -= weight[j];
          cover[j] = ensure_competitive(rng.mask(n), weight[j], n, rng);
        }
        std::vector<long long> table(std::size_t{1} << n, 0);
        for (Subset s = 1; s <= full_subset(n); ++s) {
          long long total = 0;
          for (int j = 0; j < count; ++j) {
            if ((cover[j] & s) != 0) total += weight[j];
          }
          table[s] = total;
        }
        oracle = std::make_shared<ExplicitOracle>(n, std::move(table));
        break;
      }
    }
    if (oracle->eval(oracle->full_set()) < 1) continue;

    std::vector<Buyer> buyers(n);
    for (int i = 0; i < n; ++i) {
      buyers[i].id = i + 1;
      buyers[i].valuation = rng.rational(params.max_value_num, params.max_den);
      buyers[i].bid = buyers[i].valuation;
      buyers[i].budget = rng.rational(params.max_budget_num, params.max_den);
    }
    return AuctionInstance(std::move(buyers), std::move(oracle));
  }
  throw Error(ErrorCode::generation_failed,
              "no valid market after 200 attempts");
}

}  // namespace clinch
