#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "core.hpp"
#include "kernel.hpp"
#include "solvers.hpp"

namespace envyalloc {

// Every house valued by exactly one agent goes to that agent. Houses
// are handled in index order; an agent takes at most one house per pass.
inline bool apply_degree_one_rule(Reducer& red) {
  if (red.trivial()) return false;
  const PreferenceGraph pg(red.current());
  std::vector<char> served(red.current().n(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t h = 0; h < pg.num_houses(); ++h) {
    if (pg.house_degree(h) != 1) continue;
    const auto a = pg.fans(h)[0];
    if (served[a]) continue;
    served[a] = 1;
    pairs.emplace_back(a, h);
  }
  if (pairs.empty()) return false;
  KernelStep step{KernelRule::degree_one, {}, {}, {}};
  for (auto [a, h] : pairs) {
    step.x.push_back(red.trace().agent_map[a]);
    step.y.push_back(red.trace().house_map[h]);
  }
  red.remove_pairs(pairs, std::move(step));
  return true;
}

// House degree <= 2: houses are edges between their two fans.
// Allocates the houses of one cycle to its agents.
inline bool apply_cycle_rule(Reducer& red) {
  if (red.trivial()) return false;
  const Instance& cur = red.current();
  const PreferenceGraph pg(cur);
  const std::size_t n = cur.n();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  // Forest adjacency: (neighbour agent, house).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> forest(n);
  for (std::size_t h = 0; h < pg.num_houses(); ++h) {
    if (pg.house_degree(h) > 2) throw std::invalid_argument("cycle rule needs house degree <= 2");
    if (pg.house_degree(h) != 2) continue;
    const auto u = pg.fans(h)[0], v = pg.fans(h)[1];
    if (find(u) != find(v)) {
      parent[find(u)] = find(v);
      forest[u].push_back({v, h});
      forest[v].push_back({u, h});
      continue;
    }
    // Path v -> u in the forest closes a cycle with h.
    std::vector<std::size_t> prev_agent(n, npos), prev_house(n, npos);
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> queue{v};
    seen[v] = 1;
    for (std::size_t qi = 0; qi < queue.size() && !seen[u]; ++qi) {
      const auto x = queue[qi];
      for (auto [y, e] : forest[x])
        if (!seen[y]) {
          seen[y] = 1;
          prev_agent[y] = x;
          prev_house[y] = e;
          queue.push_back(y);
        }
    }
    // Walking back from u gives u -> ... -> v; each agent takes the house
    // towards v, and v takes h (which links v back to u).
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t x = u; x != v; x = prev_agent[x]) pairs.emplace_back(x, prev_house[x]);
    pairs.emplace_back(v, h);
    KernelStep step{KernelRule::cycle, {}, {}, {}};
    for (auto [a, e] : pairs) {
      step.x.push_back(red.trace().agent_map[a]);
      step.y.push_back(red.trace().house_map[e]);
    }
    red.remove_pairs(pairs, std::move(step));
    return true;
  }
  return false;
}

inline SolveResult solve_single_minded(const Instance& inst, Objective obj) {
  inst.require_binary("solve_single_minded");
  const PreferenceGraph pg0(inst);
  for (std::size_t a = 0; a < inst.n(); ++a)
    if (pg0.agent_degree(a) != 1) throw std::invalid_argument("solve_single_minded: every agent must value exactly one house");

  if (obj == Objective::max_envy) {
    if (auto ef = envy_free_allocation(inst)) return SolveResult{*ef, 0, Method::single_minded};
    auto r = solve_single_minded(inst, Objective::num_envious);
    return detail::finish(inst, r.allocation, obj, Method::single_minded);
  }

  Reducer red(inst);
  while (true) {
    red.run_standard();
    if (red.trivial() || !apply_degree_one_rule(red)) break;
  }
  Allocation reduced;
  if (red.trivial()) {
    reduced = trivial_allocation(red.current());
  } else {
    const Instance& cur = red.current();
    const PreferenceGraph pg(cur);
    auto dummies = pg.dummy_houses();
    std::vector<std::size_t> valued;
    for (std::size_t h = 0; h < cur.m(); ++h)
      if (pg.house_degree(h) > 0) valued.push_back(h);
    std::stable_sort(valued.begin(), valued.end(),
                     [&](std::size_t x, std::size_t y) { return pg.house_degree(x) > pg.house_degree(y); });
    const std::size_t take = cur.n() - dummies.size();
    std::vector<std::size_t> house_of(cur.n(), npos);
    for (std::size_t i = valued.size() - take; i < valued.size(); ++i) {
      const auto h = valued[i];
      house_of[pg.fans(h)[0]] = h;
    }
    std::size_t next = 0;
    for (auto& h : house_of)
      if (h == npos) h = dummies[next++];
    reduced = Allocation(std::move(house_of));
  }
  return detail::finish(inst, lift_allocation(red.trace(), reduced), obj, Method::single_minded);
}

inline SolveResult solve_house_degree_two_oha(const Instance& inst) {
  inst.require_binary("solve_house_degree_two_oha");
  const PreferenceGraph pg0(inst);
  for (std::size_t h = 0; h < inst.m(); ++h)
    if (pg0.house_degree(h) > 2) throw std::invalid_argument("solve_house_degree_two_oha: house valued by more than two agents");

  Reducer red(inst);
  while (true) {
    red.run_standard();
    if (red.trivial()) break;
    if (apply_degree_one_rule(red)) continue;
    if (apply_cycle_rule(red)) continue;
    break;
  }
  if (red.trivial())
    return detail::finish(inst, lift_allocation(red.trace(), trivial_allocation(red.current())), Objective::num_envious,
                          Method::degree2);

  const Instance& cur = red.current();
  const PreferenceGraph pg(cur);
  const std::size_t n = cur.n();
  const auto dummies = pg.dummy_houses();

  // Components of the residual forest.
  std::vector<std::size_t> comp(n, npos);
  std::vector<std::vector<std::size_t>> trees;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != npos) continue;
    comp[s] = trees.size();
    std::vector<std::size_t> members{s};
    for (std::size_t qi = 0; qi < members.size(); ++qi)
      for (auto h : pg.valued(members[qi]))
        for (auto b : pg.fans(h))
          if (comp[b] == npos) {
            comp[b] = trees.size();
            members.push_back(b);
          }
    std::sort(members.begin(), members.end());
    trees.push_back(std::move(members));
  }

  auto fallback = [&]() {
    auto r = solve_fpt_subsets(cur, Objective::num_envious);
    return detail::finish(inst, lift_allocation(red.trace(), r.allocation), Objective::num_envious, Method::kernel_fpt);
  };

  std::vector<std::size_t> tree_houses(trees.size(), 0);
  for (std::size_t h = 0; h < cur.m(); ++h)
    if (pg.house_degree(h) > 0) ++tree_houses[comp[pg.fans(h)[0]]];
  for (std::size_t t = 0; t < trees.size(); ++t)
    if (trees[t].size() != tree_houses[t] + 1) return fallback();
  const std::size_t r = trees.size();
  if (dummies.size() < r) return fallback();

  std::vector<std::size_t> order = iota_vector(r);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return trees[x].size() < trees[y].size(); });

  // Least j (0-based) with n_1 + ... + n_{j+1} + (r - j - 1) > |D|.
  std::size_t j = r, prefix = 0;
  for (std::size_t i = 0; i < r; ++i) {
    prefix += trees[order[i]].size();
    if (prefix + (r - i - 1) > dummies.size()) {
      j = i;
      break;
    }
  }

  std::vector<std::size_t> house_of(n, npos);
  std::size_t next_dummy = 0;
  for (std::size_t i = 0; i < r; ++i) {
    const auto& members = trees[order[i]];
    if (i < j) {
      for (auto a : members) house_of[a] = dummies[next_dummy++];
      continue;
    }
    std::size_t root = members[0];
    for (auto a : members)
      if (pg.agent_degree(a) <= 1) {
        root = a;
        break;
      }
    house_of[root] = dummies[next_dummy++];
    std::vector<std::size_t> queue{root};
    std::vector<char> used_house(cur.m(), 0);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const auto x = queue[qi];
      for (auto h : pg.valued(x)) {
        if (used_house[h]) continue;
        used_house[h] = 1;
        for (auto b : pg.fans(h))
          if (b != x) {
            house_of[b] = h;
            queue.push_back(b);
          }
      }
    }
  }
  return detail::finish(inst, lift_allocation(red.trace(), Allocation(std::move(house_of))), Objective::num_envious,
                        Method::degree2);
}

}  // namespace envyalloc
