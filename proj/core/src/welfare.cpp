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

#include "clinch/welfare.hpp"

#include <algorithm>
#include <limits>

#include "clinch/errors.hpp"

namespace clinch {

namespace {

void require_allocation(const AuctionInstance& instance,
                        std::span<const long long> x) {
  if (static_cast<int>(x.size()) != instance.buyer_count()) {
    throw Error(ErrorCode::validation_error, "allocation length mismatch");
  }
  if (!in_polymatroid(instance.constraint(), x)) {
    throw Error(ErrorCode::not_in_polymatroid,
                "allocation outside the constraint");
  }
}

// Supply oracle on virtual buyers; a set is worth what its parents can get.
class VirtualOracle final : public SubmodularOracle {
 public:
  VirtualOracle(std::shared_ptr<const SubmodularOracle> base,
                std::vector<Subset> parent_bits)
      : base_(std::move(base)), parent_bits_(std::move(parent_bits)) {}

  int ground_set_size() const override {
    return static_cast<int>(parent_bits_.size());
  }

  long long eval(Subset s) const override {
    Subset parents = 0;
    while (s != 0) {
      const int pos = std::countr_zero(s);
      parents |= parent_bits_[pos];
      s &= s - 1;
    }
    return base_->eval(parents);
  }

 private:
  std::shared_ptr<const SubmodularOracle> base_;
  std::vector<Subset> parent_bits_;
};

std::vector<Subset> parent_bits_of(const std::vector<VirtualBuyer>& order) {
  std::vector<Subset> bits(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    bits[pos] = singleton(order[pos].parent);
  }
  return bits;
}

}  // namespace

Rational social_welfare(const AuctionInstance& instance,
                        std::span<const long long> x) {
  require_allocation(instance, x);
  Rational total(0);
  for (int i = 0; i < instance.buyer_count(); ++i) {
    total += instance.buyer(i).valuation * Rational(x[i]);
  }
  return total;
}

Rational liquid_welfare(const AuctionInstance& instance,
                        std::span<const long long> x) {
  require_allocation(instance, x);
  Rational total(0);
  for (int i = 0; i < instance.buyer_count(); ++i) {
    total += min(instance.buyer(i).valuation * Rational(x[i]),
                 instance.buyer(i).budget);
  }
  return total;
}

std::vector<VirtualBuyer> split_virtual(const AuctionInstance& instance) {
  std::vector<VirtualBuyer> out;
  out.reserve(2 * instance.buyer_count());
  for (int i = 0; i < instance.buyer_count(); ++i) {
    const Rational& v = instance.buyer(i).valuation;
    const Rational& budget = instance.buyer(i).budget;
    const Rational quota = (budget / v).floor();

    VirtualBuyer main;
    main.parent = i;
    main.part = VirtualBuyer::Part::a;
    main.valuation = v;
    main.budget = quota * v;
    main.quota = quota;
    out.push_back(main);

    VirtualBuyer rest;
    rest.parent = i;
    rest.part = VirtualBuyer::Part::b;
    const Rational leftover = budget - quota * v;
    if (leftover.is_positive()) {
      rest.valuation = leftover;
      rest.budget = leftover;
      rest.quota = Rational(1);
    } else {
      // Dummy piece so every buyer splits in two; halving keeps it strictly
      // below the main part in the descending order.
      rest.valuation = v / Rational(2);
      rest.budget = Rational(0);
      rest.quota = Rational(0);
    }
    out.push_back(rest);
  }
  std::sort(out.begin(), out.end(),
            [](const VirtualBuyer& lhs, const VirtualBuyer& rhs) {
              if (lhs.valuation != rhs.valuation)
                return rhs.valuation < lhs.valuation;
              if (lhs.parent != rhs.parent) return lhs.parent < rhs.parent;
              return lhs.part < rhs.part;
            });
  return out;
}

std::shared_ptr<const SubmodularOracle> lifted_oracle(
    const AuctionInstance& instance, const std::vector<VirtualBuyer>& order) {
  return std::make_shared<VirtualOracle>(instance.constraint_ptr(),
                                         parent_bits_of(order));
}

LwOptResult lw_optimal(const AuctionInstance& instance) {
  return lw_optimal_with_order(instance, split_virtual(instance));
}

LwOptResult lw_optimal_with_order(const AuctionInstance& instance,
                                  const std::vector<VirtualBuyer>& order) {
  const int n = instance.buyer_count();
  const int m = static_cast<int>(order.size());
  if (m != 2 * n) {
    throw Error(ErrorCode::validation_error,
                "expected two virtual buyers per buyer");
  }
  if (m > max_ground_set()) {
    throw Error(ErrorCode::guard_exceeded,
                "virtual ground set of " + std::to_string(m) +
                    " exceeds guard of " + std::to_string(max_ground_set()));
  }
  for (int pos = 0; pos + 1 < m; ++pos) {
    if (order[pos].valuation < order[pos + 1].valuation) {
      throw Error(ErrorCode::validation_error,
                  "virtual buyers must be in non-increasing valuation order");
    }
  }

  VirtualOracle lifted(instance.constraint_ptr(), parent_bits_of(order));

  LwOptResult result;
  result.order = order;
  result.z.assign(m, 0);

  // Greedy water-filling in descending valuation: each virtual buyer takes
  // as much as every prefix coalition leaves it, capped by its quota.
  for (int pos = 0; pos < m; ++pos) {
    const Subset prefix = full_subset(pos);
    const Subset self = singleton(pos);
    long long room = std::numeric_limits<long long>::max();
    Subset h = prefix;
    for (;;) {
      const long long slack = lifted.eval(h | self) - sum_over(result.z, h);
      room = std::min(room, slack);
      if (h == 0) break;
      h = (h - 1) & prefix;
    }
    const Rational& quota = order[pos].quota;
    if (quota < Rational(room)) {
      result.z[pos] = quota.to_int64();
    } else {
      result.z[pos] = room;
    }
  }

  result.z_a.assign(n, 0);
  result.z_b.assign(n, 0);
  result.allocation.assign(n, 0);
  for (int pos = 0; pos < m; ++pos) {
    const VirtualBuyer& vb = order[pos];
    if (vb.part == VirtualBuyer::Part::a) {
      result.z_a[vb.parent] = result.z[pos];
    } else {
      result.z_b[vb.parent] = result.z[pos];
    }
    result.allocation[vb.parent] += result.z[pos];
  }
  result.lw_value = liquid_welfare(instance, result.allocation);
  return result;
}

Rational lw_brute(const AuctionInstance& instance) {
  Rational best(0);
  for_each_polymatroid_point(
      instance.constraint(), [&](std::span<const long long> x) {
        Rational value(0);
        for (int i = 0; i < instance.buyer_count(); ++i) {
          value += min(instance.buyer(i).valuation * Rational(x[i]),
                       instance.buyer(i).budget);
        }
        if (best < value) best = value;
      });
  return best;
}

}  // namespace clinch
