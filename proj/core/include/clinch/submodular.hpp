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

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace clinch {

// Subsets of the ground set as bitmasks. Bit i stands for buyer id i+1.
using Subset = std::uint32_t;

inline bool subset_contains(Subset s, int i) { return (s >> i) & 1u; }
inline Subset subset_with(Subset s, int i) { return s | (Subset{1} << i); }
inline Subset subset_without(Subset s, int i) { return s & ~(Subset{1} << i); }
inline Subset singleton(int i) { return Subset{1} << i; }
inline Subset full_subset(int n) { return (Subset{1} << n) - 1; }
inline int subset_size(Subset s) { return std::popcount(s); }

// Renders a subset with 1-based ids, e.g. "{1,3}".
std::string subset_to_string(Subset s);

long long sum_over(std::span<const long long> values, Subset s);

// Hard cap on the ground set for anything that enumerates subsets. The
// CLINCH_GUARD_N environment variable may lower it (it is read once per
// process).
int max_ground_set();
constexpr int kGroundSetLimit = 20;

// Integer-valued monotone submodular function with f(empty) = 0, given by
// value queries over bitmask subsets.
class SubmodularOracle {
 public:
  virtual ~SubmodularOracle() = default;

  virtual int ground_set_size() const = 0;
  virtual long long eval(Subset s) const = 0;

  Subset full_set() const { return full_subset(ground_set_size()); }
};

// f(S) = min(supply, sum of unit interests) degenerates to min(supply, ...)
// only through the bipartite form; the plain multi-unit market is
// f(S) = supply for every nonempty S.
class MultiUnitOracle final : public SubmodularOracle {
 public:
  MultiUnitOracle(int buyers, long long supply);

  int ground_set_size() const override { return buyers_; }
  long long eval(Subset s) const override { return s == 0 ? 0 : supply_; }

  long long supply() const { return supply_; }

 private:
  int buyers_;
  long long supply_;
};

// Goods with unit counts wired to buyer subsets; f(S) counts the units
// reachable from S. Matching markets and coverage constraints take this form.
class BipartiteOracle final : public SubmodularOracle {
 public:
  struct Good {
    long long units = 0;
    Subset buyers = 0;
  };

  BipartiteOracle(int buyers, std::vector<Good> goods);

  int ground_set_size() const override { return buyers_; }
  long long eval(Subset s) const override;

  const std::vector<Good>& goods() const { return goods_; }

 private:
  int buyers_;
  std::vector<Good> goods_;
};

// Dense table over all 2^n subsets, indexed by bitmask.
class ExplicitOracle final : public SubmodularOracle {
 public:
  ExplicitOracle(int buyers, std::vector<long long> table);

  int ground_set_size() const override { return buyers_; }
  long long eval(Subset s) const override { return table_[s]; }

  const std::vector<long long>& table() const { return table_; }

 private:
  int buyers_;
  std::vector<long long> table_;
};

// Outcome of checking the polymatroid axioms plus the competition condition
// f(N) = f(N \ i). The first violation of each kind is kept as a witness.
struct OracleValidation {
  bool zero_at_empty = true;
  bool nonnegative = true;
  bool monotone = true;
  bool submodular = true;
  bool competition = true;

  Subset nonnegative_set = 0;
  Subset monotone_set = 0;
  int monotone_element = -1;  // f(S + e) < f(S)
  Subset submodular_small = 0;
  Subset submodular_large = 0;
  int submodular_element = -1;  // marginal at small < marginal at large
  int competition_buyer = -1;   // f(N) != f(N \ i), 0-based

  bool polymatroid_ok() const {
    return zero_at_empty && nonnegative && monotone && submodular;
  }
  bool all_ok() const { return polymatroid_ok() && competition; }

  // Human-readable description of the first failure, empty when all_ok().
  std::string describe() const;
};

// Exhaustively checks the axioms; the submodularity sweep uses the pairwise
// marginal form, which rejects exactly the same functions as the full
// subset-pair definition.
OracleValidation validate_oracle(const SubmodularOracle& f);

// x in P(f): x >= 0 and x(S) <= f(S) for every subset.
bool in_polymatroid(const SubmodularOracle& f, std::span<const long long> x);

// Whether x + e_i - e_j stays in P(f); with integer points this captures the
// usual exchange dependence. Requires x in P(f).
bool depends_on(const SubmodularOracle& f, std::span<const long long> x, int i,
                int j);

// Calls fn(x) for every integer point of P(f), gated by a candidate budget of
// 10^7 box points.
void for_each_polymatroid_point(
    const SubmodularOracle& f,
    const std::function<void(std::span<const long long>)>& fn);

}  // namespace clinch
