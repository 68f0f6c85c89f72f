#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <cstddef>
#include <functional>
#include <vector>

#include "envyalloc/core.hpp"

// Reference values computed from first principles: plain recursion over all
// injective assignments and a direct envy count. Shares nothing with the
// library's solvers beyond Instance::level.
namespace envyalloc::testing {

struct NaiveAggregates {
  int num_envious = 0, max_envy = 0, total_envy = 0, welfare = 0;
  int get(Objective o) const {
    return o == Objective::num_envious ? num_envious : o == Objective::max_envy ? max_envy : total_envy;
  }
};

inline NaiveAggregates naive_aggregates(const Instance& inst, const std::vector<std::size_t>& house_of) {
  NaiveAggregates r;
  for (std::size_t a = 0; a < house_of.size(); ++a) {
    int e = 0;
    for (std::size_t b = 0; b < house_of.size(); ++b)
      if (b != a && inst.level(a, house_of[b]) < inst.level(a, house_of[a])) ++e;
    r.num_envious += e > 0;
    r.max_envy = std::max(r.max_envy, e);
    r.total_envy += e;
    if (inst.is_binary()) r.welfare += inst.level(a, house_of[a]) == 0;
  }
  return r;
}

struct NaiveSummary {
  std::array<int, 3> optimum{INT_MAX, INT_MAX, INT_MAX};
  std::array<int, 3> best_fair_welfare{-1, -1, -1};
  int max_welfare = 0;
  long long count = 0;
  int get(Objective o) const { return optimum[static_cast<std::size_t>(o)]; }
};

inline void naive_enumerate(const Instance& inst, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> cur(inst.n());
  std::vector<char> used(inst.m(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t a) {
    if (a == inst.n()) {
      visit(cur);
      return;
    }
    for (std::size_t h = 0; h < inst.m(); ++h) {
      if (used[h]) continue;
      used[h] = 1;
      cur[a] = h;
      rec(a + 1);
      used[h] = 0;
    }
  };
  rec(0);
}

inline NaiveSummary naive_summary(const Instance& inst) {
  NaiveSummary s;
  std::vector<NaiveAggregates> all;
  naive_enumerate(inst, [&](const std::vector<std::size_t>& h) {
    const auto r = naive_aggregates(inst, h);
    ++s.count;
    s.max_welfare = std::max(s.max_welfare, r.welfare);
    for (std::size_t o = 0; o < 3; ++o) {
      const int v = r.get(all_objectives[o]);
      if (v < s.optimum[o]) {
        s.optimum[o] = v;
        s.best_fair_welfare[o] = r.welfare;
      } else if (v == s.optimum[o]) {
        s.best_fair_welfare[o] = std::max(s.best_fair_welfare[o], r.welfare);
      }
    }
  });
  return s;
}

}  // namespace envyalloc::testing
