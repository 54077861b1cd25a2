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

#include "clinch/submodular.hpp"

#include <cstdlib>
#include <limits>

#include "clinch/errors.hpp"

namespace clinch {

namespace {

constexpr long long kMaxBoxPoints = 10'000'000;

int read_guard_from_env() {
  const char* raw = std::getenv("CLINCH_GUARD_N");
  if (raw == nullptr || *raw == '\0') return kGroundSetLimit;
  char* end = nullptr;
  long value = std::strtol(raw, &end, 10);
  if (end == nullptr || *end != '\0' || value < 1) return kGroundSetLimit;
  if (value > kGroundSetLimit) return kGroundSetLimit;
  return static_cast<int>(value);
}

}  // namespace

int max_ground_set() {
  static const int guard = read_guard_from_env();
  return guard;
}

std::string subset_to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < kGroundSetLimit; ++i) {
    if (!subset_contains(s, i)) continue;
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  out += "}";
  return out;
}

long long sum_over(std::span<const long long> values, Subset s) {
  long long total = 0;
  while (s != 0) {
    int i = std::countr_zero(s);
    total += values[i];
    s &= s - 1;
  }
  return total;
}

MultiUnitOracle::MultiUnitOracle(int buyers, long long supply)
    : buyers_(buyers), supply_(supply) {
  if (buyers < 1 || supply < 0) {
    throw Error(ErrorCode::validation_error, "bad multi-unit market");
  }
}

BipartiteOracle::BipartiteOracle(int buyers, std::vector<Good> goods)
    : buyers_(buyers), goods_(std::move(goods)) {
  if (buyers < 1) {
    throw Error(ErrorCode::validation_error, "bad bipartite market");
  }
  const Subset all = full_subset(buyers);
  for (const Good& g : goods_) {
    if (g.units < 0 || (g.buyers & ~all) != 0) {
      throw Error(ErrorCode::validation_error, "bad bipartite good");
    }
  }
}

long long BipartiteOracle::eval(Subset s) const {
  long long total = 0;
  for (const Good& g : goods_) {
    if ((g.buyers & s) != 0) total += g.units;
  }
  return total;
}

ExplicitOracle::ExplicitOracle(int buyers, std::vector<long long> table)
    : buyers_(buyers), table_(std::move(table)) {
  if (buyers < 1 || buyers > kGroundSetLimit) {
    throw Error(ErrorCode::ground_set_too_large,
                "explicit table over " + std::to_string(buyers) + " buyers");
  }
  if (table_.size() != (std::size_t{1} << buyers)) {
    throw Error(ErrorCode::validation_error,
                "explicit table must list every subset");
  }
}

OracleValidation validate_oracle(const SubmodularOracle& f) {
  const int n = f.ground_set_size();
  if (n < 1) {
    throw Error(ErrorCode::validation_error, "empty ground set");
  }
  if (n > max_ground_set()) {
    throw Error(ErrorCode::ground_set_too_large,
                std::to_string(n) + " buyers exceeds guard of " +
                    std::to_string(max_ground_set()));
  }

  OracleValidation out;
  const Subset all = f.full_set();

  out.zero_at_empty = f.eval(0) == 0;

  for (Subset s = 0; s <= all && out.nonnegative; ++s) {
    if (f.eval(s) < 0) {
      out.nonnegative = false;
      out.nonnegative_set = s;
    }
  }

  for (Subset s = 0; s <= all && out.monotone; ++s) {
    for (int e = 0; e < n; ++e) {
      if (subset_contains(s, e)) continue;
      if (f.eval(subset_with(s, e)) < f.eval(s)) {
        out.monotone = false;
        out.monotone_set = s;
        out.monotone_element = e;
        break;
      }
    }
  }

  // Pairwise diminishing returns: marginal of e on S is at least its
  // marginal on S + g. Equivalent to the subset-pair definition.
  for (Subset s = 0; s <= all && out.submodular; ++s) {
    for (int e = 0; e < n && out.submodular; ++e) {
      if (subset_contains(s, e)) continue;
      const long long margin_small = f.eval(subset_with(s, e)) - f.eval(s);
      for (int g = 0; g < n; ++g) {
        if (g == e || subset_contains(s, g)) continue;
        const Subset larger = subset_with(s, g);
        const long long margin_large =
            f.eval(subset_with(larger, e)) - f.eval(larger);
        if (margin_small < margin_large) {
          out.submodular = false;
          out.submodular_small = s;
          out.submodular_large = larger;
          out.submodular_element = e;
          break;
        }
      }
    }
  }

  const long long whole = f.eval(all);
  for (int i = 0; i < n; ++i) {
    if (f.eval(subset_without(all, i)) != whole) {
      out.competition = false;
      out.competition_buyer = i;
      break;
    }
  }

  return out;
}

std::string OracleValidation::describe() const {
  if (!zero_at_empty) return "f(empty) != 0";
  if (!nonnegative) {
    return "negative value at " + subset_to_string(nonnegative_set);
  }
  if (!monotone) {
    return "monotonicity fails at S=" + subset_to_string(monotone_set) +
           ", e=" + std::to_string(monotone_element + 1);
  }
  if (!submodular) {
    return "submodularity fails at S=" + subset_to_string(submodular_small) +
           ", T=" + subset_to_string(submodular_large) +
           ", e=" + std::to_string(submodular_element + 1);
  }
  if (!competition) {
    return "competition fails: removing buyer " +
           std::to_string(competition_buyer + 1) + " changes f(N)";
  }
  return "";
}

bool in_polymatroid(const SubmodularOracle& f, std::span<const long long> x) {
  const int n = f.ground_set_size();
  if (n > max_ground_set()) {
    throw Error(ErrorCode::ground_set_too_large,
                "membership test over " + std::to_string(n) + " buyers");
  }
  if (static_cast<int>(x.size()) != n) {
    throw Error(ErrorCode::validation_error, "vector length mismatch");
  }
  for (long long v : x) {
    if (v < 0) return false;
  }
  const Subset all = f.full_set();
  for (Subset s = 1; s <= all; ++s) {
    if (sum_over(x, s) > f.eval(s)) return false;
  }
  return true;
}

bool depends_on(const SubmodularOracle& f, std::span<const long long> x, int i,
                int j) {
  const int n = f.ground_set_size();
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    throw Error(ErrorCode::validation_error, "bad buyer pair");
  }
  if (!in_polymatroid(f, x)) {
    throw Error(ErrorCode::not_in_polymatroid,
                "dependence query outside the constraint");
  }
  std::vector<long long> moved(x.begin(), x.end());
  moved[i] += 1;
  moved[j] -= 1;
  return in_polymatroid(f, moved);
}

void for_each_polymatroid_point(
    const SubmodularOracle& f,
    const std::function<void(std::span<const long long>)>& fn) {
  const int n = f.ground_set_size();
  if (n > max_ground_set()) {
    throw Error(ErrorCode::ground_set_too_large,
                "enumeration over " + std::to_string(n) + " buyers");
  }
  std::vector<long long> caps(n);
  long long points = 1;
  for (int i = 0; i < n; ++i) {
    caps[i] = f.eval(singleton(i));
    if (caps[i] >= kMaxBoxPoints || points > kMaxBoxPoints / (caps[i] + 1)) {
      throw Error(ErrorCode::guard_exceeded,
                  "integer point enumeration too large");
    }
    points *= caps[i] + 1;
  }
  std::vector<long long> x(n, 0);
  for (;;) {
    if (in_polymatroid(f, x)) fn(x);
    int pos = n - 1;
    while (pos >= 0 && x[pos] == caps[pos]) {
      x[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++x[pos];
  }
}

}  // namespace clinch
