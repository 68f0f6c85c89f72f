#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "core.hpp"
#include "kernel.hpp"
#include "matching.hpp"
#include "solvers.hpp"

namespace envyalloc {

enum class Side { left, right, dummy };

// Houses ordered so that every valued set is a prefix (left agents) or a
// suffix (right agents) of sigma.
struct ExtremalDecomposition {
  std::vector<std::size_t> sigma;
  std::vector<Side> side;  // per agent
  std::vector<std::size_t> h_left;   // sigma order
  std::vector<std::size_t> dummies;  // sigma order
  std::vector<std::size_t> h_right;  // sigma order
  std::vector<std::size_t> a_left;   // nested order, shortest set first
  std::vector<std::size_t> a_right;  // nested order, shortest set first
  std::vector<std::size_t> sigma_a;  // a_left, then a_right, then dummy agents
};

namespace detail {

inline bool is_subset(const std::vector<char>& s, const std::vector<char>& t) {
  for (std::size_t h = 0; h < s.size(); ++h)
    if (s[h] && !t[h]) return false;
  return true;
}

inline std::vector<std::size_t> nested_order(const Instance& inst, std::vector<std::size_t> agents) {
  std::vector<std::size_t> deg(inst.n());
  for (auto a : agents) deg[a] = inst.valued_set(a).size();
  std::stable_sort(agents.begin(), agents.end(), [&](std::size_t x, std::size_t y) { return deg[x] < deg[y]; });
  return agents;
}

}  // namespace detail

// Exact test. Distinct non-full valued sets are 2-coloured: incomparable
// sets must lie on opposite sides, nested sets on the same side. A valid
// colouring yields the house order by sorting on block indices.
inline std::optional<ExtremalDecomposition> detect_extremal(const Instance& inst) {
  inst.require_binary("detect_extremal");
  const std::size_t n = inst.n(), m = inst.m();

  std::map<std::vector<char>, std::size_t> index;
  std::vector<std::vector<char>> sets;
  std::vector<std::size_t> set_of(n, npos);
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<char> s(m, 0);
    std::size_t cnt = 0;
    for (std::size_t h = 0; h < m; ++h)
      if (inst.values(a, h)) s[h] = 1, ++cnt;
    if (cnt == 0) continue;
    auto [it, fresh] = index.emplace(s, sets.size());
    if (fresh) sets.push_back(s);
    set_of[a] = it->second;
  }

  const std::size_t k = sets.size();
  auto full = [&](std::size_t i) { return std::all_of(sets[i].begin(), sets[i].end(), [](char c) { return c != 0; }); };

  // Constraint graph: weight 1 = opposite sides, 0 = same side.
  std::vector<std::vector<std::pair<std::size_t, int>>> cons(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (full(i)) continue;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (full(j)) continue;
      const bool ij = detail::is_subset(sets[i], sets[j]);
      const bool ji = detail::is_subset(sets[j], sets[i]);
      if (ij || ji) {
        cons[i].push_back({j, 0});
        cons[j].push_back({i, 0});
        continue;
      }
      bool disjoint = true, covering = true;
      for (std::size_t h = 0; h < m; ++h) {
        if (sets[i][h] && sets[j][h]) disjoint = false;
        if (!sets[i][h] && !sets[j][h]) covering = false;
      }
      if (!disjoint && !covering) return std::nullopt;
      cons[i].push_back({j, 1});
      cons[j].push_back({i, 1});
    }
  }

  std::vector<int> color(k, -1);
  for (std::size_t s = 0; s < k; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto [w, diff] : cons[v]) {
        const int want = color[v] ^ diff;
        if (color[w] == -1) {
          color[w] = want;
          stack.push_back(w);
        } else if (color[w] != want) {
          return std::nullopt;
        }
      }
    }
  }

  // Chains by size; block index of a house = first chain set containing it.
  std::vector<std::size_t> left_sets, right_sets;
  for (std::size_t i = 0; i < k; ++i) (color[i] == 0 ? left_sets : right_sets).push_back(i);
  auto by_size = [&](std::size_t x, std::size_t y) {
    return std::count(sets[x].begin(), sets[x].end(), 1) < std::count(sets[y].begin(), sets[y].end(), 1);
  };
  std::sort(left_sets.begin(), left_sets.end(), by_size);
  std::sort(right_sets.begin(), right_sets.end(), by_size);
  auto block = [&](const std::vector<std::size_t>& chain, std::size_t h) {
    for (std::size_t b = 0; b < chain.size(); ++b)
      if (sets[chain[b]][h]) return b;
    return chain.size();
  };
  std::vector<std::size_t> lb(m), rb(m);
  for (std::size_t h = 0; h < m; ++h) {
    lb[h] = block(left_sets, h);
    rb[h] = block(right_sets, h);
  }
  ExtremalDecomposition d;
  d.sigma = iota_vector(m);
  std::stable_sort(d.sigma.begin(), d.sigma.end(), [&](std::size_t x, std::size_t y) {
    return std::make_tuple(lb[x], rb[y]) < std::make_tuple(lb[y], rb[x]);
  });

  std::vector<std::size_t> pos(m);
  for (std::size_t i = 0; i < m; ++i) pos[d.sigma[i]] = i;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t cnt = 0, lo = m, hi = 0;
    for (std::size_t h = 0; h < m; ++h)
      if (sets[i][h]) ++cnt, lo = std::min(lo, pos[h]), hi = std::max(hi, pos[h]);
    const bool ok = color[i] == 0 ? (lo == 0 && hi + 1 == cnt) : (hi == m - 1 && lo == m - cnt);
    if (!ok) throw std::logic_error("detect_extremal: colouring did not produce an extremal order");
  }

  d.side.assign(n, Side::dummy);
  std::vector<std::size_t> dummy_agents;
  for (std::size_t a = 0; a < n; ++a) {
    if (set_of[a] == npos) {
      dummy_agents.push_back(a);
      continue;
    }
    if (color[set_of[a]] == 0) {
      d.side[a] = Side::left;
      d.a_left.push_back(a);
    } else {
      d.side[a] = Side::right;
      d.a_right.push_back(a);
    }
  }
  for (auto h : d.sigma) {
    if (lb[h] < left_sets.size())
      d.h_left.push_back(h);
    else if (rb[h] < right_sets.size())
      d.h_right.push_back(h);
    else
      d.dummies.push_back(h);
  }
  d.a_left = detail::nested_order(inst, d.a_left);
  d.a_right = detail::nested_order(inst, d.a_right);
  d.sigma_a = d.a_left;
  d.sigma_a.insert(d.sigma_a.end(), d.a_right.begin(), d.a_right.end());
  d.sigma_a.insert(d.sigma_a.end(), dummy_agents.begin(), dummy_agents.end());
  return d;
}

inline bool is_extremal(const Instance& inst) { return detect_extremal(inst).has_value(); }

namespace detail {

inline std::vector<std::size_t> prefix_lengths(const Instance& inst) {
  std::vector<std::size_t> len(inst.n());
  for (std::size_t a = 0; a < inst.n(); ++a) {
    std::size_t i = 0;
    while (i < inst.m() && inst.values(a, i)) ++i;
    for (std::size_t h = i; h < inst.m(); ++h)
      if (inst.values(a, h)) throw std::invalid_argument("left-extremal solver: valued set is not a prefix");
    len[a] = i;
  }
  return len;
}

inline SolveResult left_oha(const Instance& inst, const std::vector<std::size_t>& order) {
  const std::size_t n = inst.n(), m = inst.m();
  (void)order;
  std::optional<SolveResult> best;
  for (std::size_t s = 0; s + n <= m; ++s) {
    std::vector<std::size_t> window(n);
    for (std::size_t i = 0; i < n; ++i) window[i] = s + i;
    auto r = solve_square(inst.restrict(iota_vector(n), window), Objective::num_envious);
    if (!best || r.value < best->value) {
      std::vector<std::size_t> hs(n);
      for (std::size_t a = 0; a < n; ++a) hs[a] = window[r.allocation[a]];
      best = SolveResult{Allocation(std::move(hs)), r.value, Method::extremal};
      if (best->value == 0) break;
    }
  }
  return *best;
}

inline SolveResult left_eha(const Instance& inst, const std::vector<std::size_t>& order,
                            const std::vector<std::size_t>& len) {
  const std::size_t n = inst.n(), m = inst.m();
  if (auto ef = envy_free_allocation(inst)) return SolveResult{*ef, 0, Method::extremal};

  std::optional<SolveResult> best;
  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t j = len[order[l]];
    for (std::size_t i = 0; i <= j && l + i < n; ++i) {
      std::vector<std::size_t> house_of(n, npos);
      for (std::size_t t = 0; t < i; ++t) house_of[order[l + 1 + t]] = t;
      // Later agents need valued houses outside the first j.
      const std::size_t rest = l + i + 1;
      BipartiteGraph g(n - rest, m - j);
      for (std::size_t t = rest; t < n; ++t)
        for (std::size_t h = j; h < len[order[t]]; ++h) g.add_edge(t - rest, h - j);
      auto mm = matching_saturating(g, iota_vector(n - rest));
      if (!mm) continue;
      std::vector<char> used(m, 0);
      for (std::size_t t = rest; t < n; ++t) {
        const std::size_t h = mm->left_mate[t - rest] + j;
        house_of[order[t]] = h;
        used[h] = 1;
      }
      std::size_t next = j;
      bool complete = true;
      for (std::size_t t = 0; t <= l; ++t) {
        while (next < m && used[next]) ++next;
        if (next == m) {
          complete = false;
          break;
        }
        house_of[order[t]] = next;
        used[next] = 1;
      }
      if (!complete) continue;
      Allocation alloc(std::move(house_of));
      const int v = envy_report(inst, alloc).max_envy;
      if (!best || v < best->value) best = SolveResult{std::move(alloc), v, Method::extremal};
    }
  }
  if (!best) throw std::logic_error("left-extremal eha: no feasible guess");
  return *best;
}

inline SolveResult left_uha(const Instance& inst, const std::vector<std::size_t>& order) {
  const std::size_t n = inst.n(), m = inst.m();
  std::optional<SolveResult> best;
  for (std::size_t t = 0; t <= n; ++t) {
    std::vector<std::int64_t> fans_in_s(m, 0);
    for (std::size_t p = 0; p < t; ++p)
      for (std::size_t h = 0; h < m; ++h)
        if (inst.values(order[p], h)) ++fans_in_s[h];
    CostMatrix c(n, m);
    for (std::size_t p = 0; p < n; ++p) {
      const auto a = order[p];
      for (std::size_t h = 0; h < m; ++h) {
        if (p >= t) {
          if (inst.values(a, h)) c.set(p, h, fans_in_s[h]);
          else c.prohibit(p, h);
        } else {
          if (fans_in_s[h] == 0) c.set(p, h, 0);
          else c.prohibit(p, h);
        }
      }
    }
    auto as = min_cost_assignment(c);
    if (!as.feasible) continue;
    if (!best || as.cost < best->value) {
      std::vector<std::size_t> hs(n);
      for (std::size_t p = 0; p < n; ++p) hs[order[p]] = as.row_to_col[p];
      best = SolveResult{Allocation(std::move(hs)), static_cast<int>(as.cost), Method::extremal};
    }
  }
  if (!best) throw std::logic_error("left-extremal uha: no feasible split");
  return *best;
}

}  // namespace detail

// Instance whose valued sets are all prefixes of the house indices.
// Agents may come in any order.
inline SolveResult solve_left_extremal(const Instance& inst, Objective obj) {
  inst.require_binary("solve_left_extremal");
  if (inst.m() < inst.n()) throw std::invalid_argument("solve_left_extremal: m < n");
  const auto len = detail::prefix_lengths(inst);
  auto order = iota_vector(inst.n());
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return len[x] < len[y]; });
  if (inst.n() == 0) return SolveResult{Allocation{}, 0, Method::extremal};
  switch (obj) {
    case Objective::num_envious: return detail::left_oha(inst, order);
    case Objective::max_envy: return detail::left_eha(inst, order, len);
    case Objective::total_envy: return detail::left_uha(inst, order);
  }
  throw std::logic_error("solve_left_extremal: unknown objective");
}

// Left and right side sub-instances for a given dummy split. Houses are
// listed valued-first, so both sides are left-extremal.
struct ExtremalSides {
  Instance left, right;
  std::vector<std::size_t> left_agents, right_agents;
  std::vector<std::size_t> left_houses, right_houses;
};

inline ExtremalSides split_sides(const Instance& inst, const ExtremalDecomposition& d, std::size_t n_left) {
  ExtremalSides s;
  s.left_agents = d.a_left;
  s.right_agents = d.a_right;
  s.left_houses = d.h_left;
  s.right_houses.assign(d.h_right.rbegin(), d.h_right.rend());
  for (std::size_t i = 0; i < d.dummies.size(); ++i) (i < n_left ? s.left_houses : s.right_houses).push_back(d.dummies[i]);
  s.left = inst.restrict(s.left_agents, s.left_houses);
  s.right = inst.restrict(s.right_agents, s.right_houses);
  return s;
}

namespace detail {

inline int combine(Objective obj, int x, int y) { return obj == Objective::max_envy ? std::max(x, y) : x + y; }

// Solves an instance without dummy agents in which |H_side| < |A_side|
// holds for both sides, by enumerating the dummy split.
inline SolveResult solve_decomposed(const Instance& inst, const ExtremalDecomposition& d, Objective obj) {
  const std::size_t nl = d.a_left.size(), nr = d.a_right.size();
  const std::size_t need_l = nl > d.h_left.size() ? nl - d.h_left.size() : 0;
  const std::size_t need_r = nr > d.h_right.size() ? nr - d.h_right.size() : 0;
  if (need_l + need_r > d.dummies.size()) throw std::logic_error("extremal: not enough dummy houses");
  std::optional<SolveResult> best;
  for (std::size_t k = need_l; k + need_r <= d.dummies.size(); ++k) {
    auto s = split_sides(inst, d, k);
    auto rl = solve_left_extremal(s.left, obj);
    auto rr = solve_left_extremal(s.right, obj);
    const int v = combine(obj, rl.value, rr.value);
    if (best && v >= best->value) continue;
    std::vector<std::size_t> hs(inst.n(), npos);
    for (std::size_t i = 0; i < nl; ++i) hs[s.left_agents[i]] = s.left_houses[rl.allocation[i]];
    for (std::size_t i = 0; i < nr; ++i) hs[s.right_agents[i]] = s.right_houses[rr.allocation[i]];
    best = SolveResult{Allocation(std::move(hs)), v, Method::extremal};
  }
  return *best;
}

}  // namespace detail

inline SolveResult solve_extremal(const Instance& inst, Objective obj) {
  if (!detect_extremal(inst)) throw std::invalid_argument("solve_extremal: instance is not extremal");
  Reducer red(inst);
  red.run_standard();
  std::optional<ExtremalDecomposition> d;
  while (!red.trivial()) {
    d = detect_extremal(red.current());
    if (!d) throw std::logic_error("solve_extremal: reduction broke extremality");
    // Each side is a union of components, so it can be reduced on its own.
    bool changed = false;
    if (!d->a_left.empty() && d->h_left.size() >= d->a_left.size())
      changed = red.apply_expansion(d->a_left, d->h_left, KernelRule::expansion);
    else if (!d->a_right.empty() && d->h_right.size() >= d->a_right.size())
      changed = red.apply_expansion(d->a_right, d->h_right, KernelRule::expansion);
    if (!changed) break;
    red.run_standard();
  }

  Allocation reduced_alloc;
  if (red.trivial()) {
    reduced_alloc = trivial_allocation(red.current());
  } else {
    if (d->a_left.size() + d->a_right.size() != red.current().n())
      throw std::logic_error("solve_extremal: dummy agents survived reduction");
    reduced_alloc = detail::solve_decomposed(red.current(), *d, obj).allocation;
  }
  return detail::finish(inst, lift_allocation(red.trace(), reduced_alloc), obj, Method::extremal);
}

}  // namespace envyalloc
