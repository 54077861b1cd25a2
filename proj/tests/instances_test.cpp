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

#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "clinch/errors.hpp"
#include "clinch/instances.hpp"
#include "clinch/submodular.hpp"

namespace clinch {
namespace {

void expect_error(const char* text, ErrorCode code) {
  try {
    load_instance_text(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

void expect_parse_error(const char* text) {
  expect_error(text, ErrorCode::parse_error);
}

TEST(LoadInstance, MultiUnitDocument) {
  const AuctionInstance instance = load_instance_text(R"({
    "buyers": [
      {"id": 1, "valuation": "3/2", "bid": "1", "budget": "4"},
      {"id": 2, "valuation": 2, "budget": 3}
    ],
    "constraint": {"type": "multi_unit", "supply": 5}
  })");
  ASSERT_EQ(instance.buyer_count(), 2);
  EXPECT_EQ(instance.buyer(0).valuation, Rational(3, 2));
  EXPECT_EQ(instance.buyer(0).bid, Rational(1));
  EXPECT_EQ(instance.buyer(0).budget, Rational(4));
  EXPECT_EQ(instance.buyer(1).bid, Rational(2));  // defaults to the valuation
  EXPECT_EQ(instance.total_supply(), 5);
  EXPECT_EQ(instance.constraint().eval(singleton(0)), 5);
}

TEST(LoadInstance, BipartiteDocument) {
  const AuctionInstance instance = load_instance_text(R"({
    "buyers": [
      {"id": 1, "valuation": "2", "budget": "2"},
      {"id": 2, "valuation": "1", "budget": "2"}
    ],
    "constraint": {
      "type": "bipartite",
      "goods": [{"id": 1, "units": 2}, {"id": 2, "units": 1}],
      "edges": [[1, 1], [2, 1], [2, 2]]
    }
  })");
  const SubmodularOracle& f = instance.constraint();
  EXPECT_EQ(f.eval(singleton(0)), 2);
  EXPECT_EQ(f.eval(singleton(1)), 3);
  EXPECT_EQ(f.eval(full_subset(2)), 3);
}

TEST(LoadInstance, ExplicitDocument) {
  const AuctionInstance instance = load_instance_text(R"({
    "buyers": [
      {"id": 1, "valuation": "1", "budget": "1"},
      {"id": 2, "valuation": "1", "budget": "1"}
    ],
    "constraint": {
      "type": "explicit",
      "values": {"": 0, "1": 1, "2": 2, "1,2": 2}
    }
  })");
  EXPECT_EQ(instance.constraint().eval(singleton(1)), 2);
  EXPECT_EQ(instance.total_supply(), 2);
}

TEST(LoadInstance, SingleBuyerDocumentsAreValid) {
  // Competition is a run precondition, not a document invariant.
  const AuctionInstance instance = load_instance_text(R"({
    "buyers": [{"id": 1, "valuation": "2", "budget": "3"}],
    "constraint": {"type": "multi_unit", "supply": 2}
  })");
  EXPECT_EQ(instance.buyer_count(), 1);
  EXPECT_FALSE(validate_oracle(instance.constraint()).all_ok());
  EXPECT_TRUE(validate_oracle(instance.constraint()).polymatroid_ok());
}

TEST(LoadInstance, RejectsMalformedDocuments) {
  expect_parse_error("not json at all");
  expect_parse_error("[]");

  // Unknown fields at every level.
  expect_parse_error(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1"}],
    "constraint": {"type": "multi_unit", "supply": 1},
    "notes": "extra"
  })");
  expect_parse_error(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1", "name": "x"}],
    "constraint": {"type": "multi_unit", "supply": 1}
  })");
  expect_parse_error(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1"}],
    "constraint": {"type": "multi_unit", "supply": 1, "goods": []}
  })");

  // Numbers must be integers or rational strings, never floats.
  expect_parse_error(R"({
    "buyers": [{"id": 1, "valuation": 1.5, "budget": "1"}],
    "constraint": {"type": "multi_unit", "supply": 1}
  })");
  expect_parse_error(R"({
    "buyers": [{"id": 1, "valuation": "1.5", "budget": "1"}],
    "constraint": {"type": "multi_unit", "supply": 1}
  })");
  expect_parse_error(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1"}],
    "constraint": {"type": "multi_unit", "supply": 1.0}
  })");

  // Buyer ids must form the permutation 1..n.
  expect_parse_error(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1"},
               {"id": 1, "valuation": "1", "budget": "1"}],
    "constraint": {"type": "multi_unit", "supply": 1}
  })");
  expect_parse_error(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1"},
               {"id": 3, "valuation": "1", "budget": "1"}],
    "constraint": {"type": "multi_unit", "supply": 1}
  })");
  expect_parse_error(R"({
    "buyers": [{"id": 1, "valuation": "1"}],
    "constraint": {"type": "multi_unit", "supply": 1}
  })");

  expect_parse_error(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1"}],
    "constraint": {"type": "multi_unit", "supply": -1}
  })");
  expect_parse_error(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1"}],
    "constraint": {"type": "lottery"}
  })");
}

TEST(LoadInstance, RejectsMalformedBipartiteConstraints) {
  const auto doc = [](const char* constraint) {
    return std::string(R"({
      "buyers": [{"id": 1, "valuation": "1", "budget": "1"},
                 {"id": 2, "valuation": "1", "budget": "1"}],
      "constraint": )") +
           constraint + "}";
  };
  const char* bad[] = {
      R"({"type": "bipartite", "goods": [{"id": 0, "units": 1}], "edges": []})",
      R"({"type": "bipartite", "goods": [{"id": 1, "units": -1}], "edges": []})",
      R"({"type": "bipartite", "goods": [{"id": 1, "units": 1}, {"id": 1, "units": 1}], "edges": []})",
      R"({"type": "bipartite", "goods": [{"id": 1, "units": 1, "label": "a"}], "edges": []})",
      R"({"type": "bipartite", "goods": [{"id": 1, "units": 1}], "edges": [[1]]})",
      R"({"type": "bipartite", "goods": [{"id": 1, "units": 1}], "edges": [[3, 1]]})",
      R"({"type": "bipartite", "goods": [{"id": 1, "units": 1}], "edges": [[1, 2]]})",
      R"({"type": "bipartite", "goods": [{"id": 1, "units": 1}], "edges": [[1, 1], [1, 1]]})",
      R"({"type": "bipartite", "goods": [{"id": 1, "units": 1}]})",
  };
  for (const char* constraint : bad) {
    expect_parse_error(doc(constraint).c_str());
  }
}

TEST(LoadInstance, RejectsMalformedExplicitTables) {
  const auto doc = [](const char* values) {
    return std::string(R"({
      "buyers": [{"id": 1, "valuation": "1", "budget": "1"},
                 {"id": 2, "valuation": "1", "budget": "1"}],
      "constraint": {"type": "explicit", "values": )") +
           values + "}}";
  };
  const char* bad[] = {
      R"({"": 0, "1": 1, "2": 1})",                       // missing a subset
      R"({"": 0, "1": 1, "2": 1, "1,2": 2, "3": 1})",     // extra key
      R"({"": 0, "1": 1, "2": 1, "2,1": 2})",             // ids out of order
      R"({"": 0, "1": 1, "2": 1, "1,1": 2})",             // repeated id
      R"({"": 0, "1": 1, "2": 1, "0": 2})",               // id below range
      R"({"": 0, "1": 1, "2": 1, "3": 2})",               // id above range
      R"({"": 0, "1": 1, "01": 1, "2": 1})",              // same set respelled
      R"({"": 0, "1": 1, "2": 1, "1,2": -1})",            // negative value
      R"({"": 0, "1": 1, "2": 1, "1,2": "2"})",           // non-integer value
  };
  for (const char* values : bad) {
    expect_parse_error(doc(values).c_str());
  }
}

TEST(LoadInstance, InstanceRulesApplyAfterParsing) {
  // Parses cleanly, fails instance validation: zero valuation.
  expect_error(R"({
    "buyers": [{"id": 1, "valuation": "0", "budget": "1"}],
    "constraint": {"type": "multi_unit", "supply": 1}
  })",
               ErrorCode::invalid_instance);
  // Parses cleanly, fails the polymatroid axioms: supermodular table.
  expect_error(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1"},
               {"id": 2, "valuation": "1", "budget": "1"}],
    "constraint": {"type": "explicit",
                   "values": {"": 0, "1": 1, "2": 1, "1,2": 3}}
  })",
               ErrorCode::validation_error);
}

TEST(LoadInstance, MissingFileIsAParseError) {
  try {
    load_instance_file("/nonexistent/market.json");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse_error);
  }
}

TEST(Canonicalization, NormalizesAMessyDocument) {
  const AuctionInstance instance = load_instance_text(R"({
    "constraint": {"type": "multi_unit", "supply": 3},
    "buyers": [
      {"id": 2, "valuation": "06/8", "budget": 4, "bid": "3/4"},
      {"id": 1, "valuation": "2", "budget": "12/4"}
    ]
  })");
  const nlohmann::ordered_json doc = instance_to_json(instance);
  ASSERT_EQ(doc["buyers"].size(), 2u);
  EXPECT_EQ(doc["buyers"][0]["id"], 1);
  EXPECT_EQ(doc["buyers"][0]["budget"], "3");
  EXPECT_EQ(doc["buyers"][1]["valuation"], "3/4");
  // An explicit bid equal to the valuation is dropped.
  EXPECT_FALSE(doc["buyers"][1].contains("bid"));
  EXPECT_FALSE(doc["buyers"][0].contains("bid"));
}

TEST(Canonicalization, RenumbersBipartiteGoods) {
  const AuctionInstance instance = load_instance_text(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1"},
               {"id": 2, "valuation": "1", "budget": "1"}],
    "constraint": {
      "type": "bipartite",
      "goods": [{"id": 7, "units": 1}, {"id": 3, "units": 2}],
      "edges": [[2, 7], [1, 3], [2, 3]]
    }
  })");
  const nlohmann::ordered_json doc = instance_to_json(instance);
  const auto& constraint = doc["constraint"];
  ASSERT_EQ(constraint["goods"].size(), 2u);
  EXPECT_EQ(constraint["goods"][0]["id"], 1);
  EXPECT_EQ(constraint["goods"][0]["units"], 2);  // former good 3
  EXPECT_EQ(constraint["goods"][1]["units"], 1);  // former good 7
  // Edges sorted by buyer, then good.
  const nlohmann::ordered_json expected =
      nlohmann::ordered_json::array({{1, 1}, {2, 1}, {2, 2}});
  EXPECT_EQ(constraint["edges"], expected);
}

TEST(Canonicalization, OrdersExplicitTablesByBitmask) {
  const AuctionInstance instance = load_instance_text(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1"},
               {"id": 2, "valuation": "1", "budget": "1"}],
    "constraint": {"type": "explicit",
                   "values": {"1,2": 2, "2": 2, "1": 1, "": 0}}
  })");
  const nlohmann::ordered_json doc = instance_to_json(instance);
  std::vector<std::string> keys;
  for (const auto& [key, value] : doc["constraint"]["values"].items()) {
    (void)value;
    keys.push_back(key);
  }
  EXPECT_EQ(keys, (std::vector<std::string>{"", "1", "2", "1,2"}));
}

TEST(Canonicalization, RoundTripIsIdentity) {
  const char* docs[] = {
      R"({
        "buyers": [{"id": 2, "valuation": "2/6", "budget": 4, "bid": "8"},
                   {"id": 1, "valuation": "2", "budget": "3"}],
        "constraint": {"type": "multi_unit", "supply": 5}
      })",
      R"({
        "buyers": [{"id": 1, "valuation": "1", "budget": "1"},
                   {"id": 2, "valuation": "1", "budget": "1"}],
        "constraint": {"type": "bipartite",
                       "goods": [{"id": 9, "units": 1}, {"id": 4, "units": 0}],
                       "edges": [[1, 9], [2, 9]]}
      })",
      R"({
        "buyers": [{"id": 1, "valuation": "1", "budget": "1"},
                   {"id": 2, "valuation": "1", "budget": "1"}],
        "constraint": {"type": "explicit",
                       "values": {"1,2": 2, "2": 2, "1": 1, "": 0}}
      })",
  };
  for (const char* doc : docs) {
    const std::string canonical = instance_to_text(load_instance_text(doc));
    EXPECT_EQ(instance_to_text(load_instance_text(canonical)), canonical);
  }
}

TEST(Fixtures, WorstCaseFamilyShape) {
  const AuctionInstance instance = fixture("prop54", 2);
  ASSERT_EQ(instance.buyer_count(), 2);
  EXPECT_EQ(instance.buyer(0).valuation, Rational(1));
  EXPECT_EQ(instance.buyer(0).budget, Rational(2));
  EXPECT_EQ(instance.buyer(1).valuation, Rational(2));
  EXPECT_EQ(instance.buyer(1).budget, Rational(2));
  EXPECT_EQ(instance.total_supply(), 2);

  try {
    fixture("prop54", 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::validation_error);
  }
}

TEST(Fixtures, UnitGoodFamilyShape) {
  const AuctionInstance instance = fixture("example62", 3);
  EXPECT_EQ(instance.buyer(0).valuation, Rational(3));
  EXPECT_EQ(instance.buyer(1).valuation, Rational(2));
  EXPECT_EQ(instance.buyer(0).budget, Rational(1));
  EXPECT_EQ(instance.total_supply(), 1);

  try {
    fixture("example62", 2);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::validation_error);
  }
}

TEST(Fixtures, UnknownNameHasItsOwnError) {
  try {
    fixture("mystery", 3);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unknown_fixture);
  }
}

TEST(CrossFamily, CoverageTableMatchesTheBipartiteOracle) {
  // The same three-good market expressed both ways must agree everywhere.
  const AuctionInstance bipartite = load_instance_text(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1"},
               {"id": 2, "valuation": "1", "budget": "1"},
               {"id": 3, "valuation": "1", "budget": "1"}],
    "constraint": {
      "type": "bipartite",
      "goods": [{"id": 1, "units": 2}, {"id": 2, "units": 1}, {"id": 3, "units": 3}],
      "edges": [[1, 1], [2, 1], [2, 2], [3, 2], [1, 3], [3, 3]]
    }
  })");
  const AuctionInstance table = load_instance_text(R"({
    "buyers": [{"id": 1, "valuation": "1", "budget": "1"},
               {"id": 2, "valuation": "1", "budget": "1"},
               {"id": 3, "valuation": "1", "budget": "1"}],
    "constraint": {"type": "explicit",
                   "values": {"": 0, "1": 5, "2": 3, "1,2": 6,
                              "3": 4, "1,3": 6, "2,3": 6, "1,2,3": 6}}
  })");
  for (Subset s = 0; s <= full_subset(3); ++s) {
    EXPECT_EQ(bipartite.constraint().eval(s), table.constraint().eval(s))
        << "subset " << s;
  }
}

TEST(Generator, DeterministicPerSeed) {
  const GenerateParams params;
  for (OracleFamily family : {OracleFamily::multi_unit, OracleFamily::bipartite,
                              OracleFamily::explicit_table}) {
    const std::string first = instance_to_text(generate(family, params, 42));
    const std::string second = instance_to_text(generate(family, params, 42));
    EXPECT_EQ(first, second);
    const std::string other = instance_to_text(generate(family, params, 43));
    EXPECT_NE(first, other);
  }
}

TEST(Generator, ProducesValidCompetitiveMarkets) {
  GenerateParams params;
  params.buyers = 4;
  params.max_supply = 7;
  for (OracleFamily family : {OracleFamily::multi_unit, OracleFamily::bipartite,
                              OracleFamily::explicit_table}) {
    for (std::uint64_t seed : {1u, 2u, 3u, 7u, 11u}) {
      const AuctionInstance instance = generate(family, params, seed);
      EXPECT_EQ(instance.buyer_count(), 4);
      EXPECT_TRUE(validate_oracle(instance.constraint()).all_ok());
      EXPECT_GE(instance.total_supply(), 1);
      EXPECT_LE(instance.total_supply(), params.max_supply);
      for (const Buyer& b : instance.buyers()) {
        EXPECT_EQ(b.bid, b.valuation);
      }
    }
  }
}

TEST(Generator, RejectsUnusableParameters) {
  GenerateParams params;
  for (int buyers : {0, 1, 25}) {
    params.buyers = buyers;
    try {
      generate(OracleFamily::multi_unit, params, 1);
      ADD_FAILURE() << buyers << " buyers accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::generation_failed);
    }
  }
  params.buyers = 3;
  params.max_supply = 0;
  try {
    generate(OracleFamily::multi_unit, params, 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::generation_failed);
  }
}

}  // namespace
}  // namespace clinch
