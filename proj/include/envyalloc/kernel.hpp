#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "core.hpp"
#include "matching.hpp"

namespace envyalloc {

// An expansion of X (left) into Y (right): M matches X into Y saturating
// X, and every neighbour of Y lies in X.
struct Expansion {
  std::vector<std::size_t> x;
  std::vector<std::size_t> y;
  std::vector<std::pair<std::size_t, std::size_t>> m;
};

// Needs |right| >= |left| >= 1 and no isolated right vertex.
inline Expansion find_expansion(const BipartiteGraph& g) {
  if (g.num_left == 0) throw std::invalid_argument("find_expansion: empty left side");
  if (g.num_right < g.num_left) throw std::invalid_argument("find_expansion: right side smaller than left side");
  const auto radj = g.right_adjacency();
  for (std::size_t r = 0; r < g.num_right; ++r)
    if (radj[r].empty()) throw std::invalid_argument("find_expansion: isolated right vertex");

  const Matching mm = max_matching(g);
  std::vector<char> in_x(g.num_left, 0), in_y(g.num_right, 0);
  std::vector<std::size_t> queue;
  for (std::size_t r = 0; r < g.num_right; ++r)
    if (!mm.right_matched(r)) {
      in_y[r] = 1;
      queue.push_back(r);
    }

  if (queue.empty()) {
    // Perfect matching: the whole graph is an expansion.
    std::fill(in_x.begin(), in_x.end(), 1);
    std::fill(in_y.begin(), in_y.end(), 1);
  } else {
    // Alternating reachability from the unsaturated right vertices.
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (auto l : radj[queue[qi]]) {
        if (in_x[l]) continue;
        in_x[l] = 1;
        auto mate = mm.left_mate[l];
        if (mate == npos) throw std::logic_error("find_expansion: augmenting path in maximum matching");
        if (!in_y[mate]) {
          in_y[mate] = 1;
          queue.push_back(mate);
        }
      }
    }
  }

  Expansion e;
  for (std::size_t l = 0; l < g.num_left; ++l)
    if (in_x[l]) {
      e.x.push_back(l);
      e.m.emplace_back(l, mm.left_mate[l]);
    }
  for (std::size_t r = 0; r < g.num_right; ++r)
    if (in_y[r]) e.y.push_back(r);

  if (e.x.empty()) throw std::logic_error("find_expansion: empty X");
  for (auto [l, r] : e.m)
    if (r == npos || !in_y[r]) throw std::logic_error("find_expansion: X not matched into Y");
  for (auto r : e.y)
    for (auto l : radj[r])
      if (!in_x[l]) throw std::logic_error("find_expansion: N(Y) not inside X");
  return e;
}

enum class KernelRule { trivial_yes, expansion, dummy_pairing, degree_one, cycle };

inline std::string_view to_string(KernelRule r) {
  switch (r) {
    case KernelRule::trivial_yes: return "trivial_yes";
    case KernelRule::expansion: return "expansion";
    case KernelRule::dummy_pairing: return "dummy_pairing";
    case KernelRule::degree_one: return "degree_one";
    case KernelRule::cycle: return "cycle";
  }
  return "?";
}

// All indices are in terms of the original instance.
struct KernelStep {
  KernelRule rule = KernelRule::expansion;
  std::vector<std::size_t> x;  // expansion agents
  std::vector<std::size_t> y;  // expansion houses
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // fixed (agent, house)
};

struct KernelTrace {
  std::size_t original_n = 0;
  std::size_t original_m = 0;
  std::vector<KernelStep> steps;
  std::vector<std::size_t> agent_map;  // reduced agent -> original agent
  std::vector<std::size_t> house_map;  // reduced house -> original house

  bool trivial_yes() const { return !steps.empty() && steps.back().rule == KernelRule::trivial_yes; }
};

struct KernelResult {
  Instance reduced;
  KernelTrace trace;
  bool trivial_yes = false;
};

// Applies reduction rules to a binary instance while keeping the trace.
class Reducer {
 public:
  explicit Reducer(Instance inst) : cur_(std::move(inst)) {
    cur_.require_binary("kernelize");
    trace_.original_n = cur_.n();
    trace_.original_m = cur_.m();
    trace_.agent_map = iota_vector(cur_.n());
    trace_.house_map = iota_vector(cur_.m());
  }

  const Instance& current() const { return cur_; }
  const KernelTrace& trace() const { return trace_; }
  bool trivial() const { return trace_.trivial_yes(); }

  // Trivial yes: at least as many dummy houses as agents.
  bool enough_dummies() {
    if (trivial()) return true;
    if (PreferenceGraph(cur_).dummy_houses().size() >= cur_.n()) {
      trace_.steps.push_back({KernelRule::trivial_yes, {}, {}, {}});
      return true;
    }
    return false;
  }

  // Expansion removal on the graph between non-dummy agents and non-dummy houses.
  bool remove_expansion() {
    if (trivial()) return false;
    PreferenceGraph pg(cur_);
    std::vector<std::size_t> agents, houses;
    for (std::size_t a = 0; a < cur_.n(); ++a)
      if (pg.agent_degree(a) > 0) agents.push_back(a);
    for (std::size_t h = 0; h < cur_.m(); ++h)
      if (pg.house_degree(h) > 0) houses.push_back(h);
    if (agents.empty() || houses.size() < agents.size()) return false;
    return apply_expansion(agents, houses, KernelRule::expansion);
  }

  // Finds an expansion in the subgraph induced by the given agents and
  // houses and removes X with its matched houses. The houses must only be
  // valued by the given agents. Returns false if the subgraph does not
  // satisfy the expansion preconditions.
  bool apply_expansion(const std::vector<std::size_t>& agents, const std::vector<std::size_t>& houses, KernelRule rule) {
    if (agents.empty() || houses.size() < agents.size()) return false;
    std::vector<std::size_t> local_agent(cur_.n(), npos);
    for (std::size_t i = 0; i < agents.size(); ++i) local_agent[agents[i]] = i;
    BipartiteGraph g(agents.size(), houses.size());
    for (std::size_t j = 0; j < houses.size(); ++j) {
      bool any = false;
      for (std::size_t a = 0; a < cur_.n(); ++a) {
        if (!cur_.values(a, houses[j])) continue;
        if (local_agent[a] == npos) throw std::invalid_argument("apply_expansion: house valued outside agent set");
        g.add_edge(local_agent[a], j);
        any = true;
      }
      if (!any) return false;
    }
    const Expansion e = find_expansion(g);
    KernelStep step;
    step.rule = rule;
    for (auto l : e.x) step.x.push_back(agents[l]);
    for (auto r : e.y) step.y.push_back(houses[r]);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (auto [l, r] : e.m) pairs.emplace_back(agents[l], houses[r]);
    remove_pairs(pairs, std::move(step));
    return true;
  }

  // Pair dummy agents with dummy houses in index order.
  bool pair_dummies() {
    if (trivial()) return false;
    PreferenceGraph pg(cur_);
    auto da = pg.dummy_agents();
    auto dh = pg.dummy_houses();
    const std::size_t k = std::min(da.size(), dh.size());
    if (k == 0) return false;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < k; ++i) pairs.emplace_back(da[i], dh[i]);
    remove_pairs(pairs, KernelStep{KernelRule::dummy_pairing, {}, {}, {}});
    return true;
  }

  // Removes the given (agent, house) pairs, in current indices, recording
  // them as fixed assignments in `step`. Expansion sets in `step` must
  // already be in original indices.
  void remove_pairs(const std::vector<std::pair<std::size_t, std::size_t>>& pairs, KernelStep step) {
    std::vector<char> drop_a(cur_.n(), 0), drop_h(cur_.m(), 0);
    for (auto [a, h] : pairs) {
      if (drop_a[a] || drop_h[h]) throw std::invalid_argument("remove_pairs: repeated vertex");
      drop_a[a] = drop_h[h] = 1;
      step.pairs.emplace_back(trace_.agent_map[a], trace_.house_map[h]);
    }
    std::vector<std::size_t> keep_a, keep_h, map_a, map_h;
    for (std::size_t a = 0; a < cur_.n(); ++a)
      if (!drop_a[a]) {
        keep_a.push_back(a);
        map_a.push_back(trace_.agent_map[a]);
      }
    for (std::size_t h = 0; h < cur_.m(); ++h)
      if (!drop_h[h]) {
        keep_h.push_back(h);
        map_h.push_back(trace_.house_map[h]);
      }
    cur_ = cur_.restrict(keep_a, keep_h);
    trace_.agent_map = std::move(map_a);
    trace_.house_map = std::move(map_h);
    trace_.steps.push_back(std::move(step));
  }

  // Translates an expansion step given in current indices to original ones.
  std::vector<std::size_t> original_agents(const std::vector<std::size_t>& v) const {
    std::vector<std::size_t> out;
    for (auto a : v) out.push_back(trace_.agent_map[a]);
    return out;
  }
  std::vector<std::size_t> original_houses(const std::vector<std::size_t>& v) const {
    std::vector<std::size_t> out;
    for (auto h : v) out.push_back(trace_.house_map[h]);
    return out;
  }

  // Trivial check and expansion removal to a fixpoint, then dummy pairing.
  void run_standard() {
    while (!enough_dummies() && remove_expansion()) {
    }
    if (!trivial()) pair_dummies();
  }

  KernelResult result() const { return KernelResult{cur_, trace_, trivial()}; }

 private:
  Instance cur_;
  KernelTrace trace_;
};

inline KernelResult kernelize(const Instance& inst) {
  Reducer r(inst);
  r.run_standard();
  return r.result();
}

// Gives every agent of a trivially reducible instance a dummy house.
inline Allocation trivial_allocation(const Instance& reduced) {
  auto dummies = PreferenceGraph(reduced).dummy_houses();
  if (dummies.size() < reduced.n()) throw std::invalid_argument("trivial_allocation: not enough dummy houses");
  dummies.resize(reduced.n());
  return Allocation(std::move(dummies));
}

inline Allocation lift_allocation(const KernelTrace& trace, const Allocation& reduced) {
  if (reduced.size() != trace.agent_map.size()) throw InvalidAllocation("lift_allocation: size mismatch");
  std::vector<std::size_t> out(trace.original_n, npos);
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    if (reduced[i] >= trace.house_map.size()) throw InvalidAllocation("lift_allocation: house out of range");
    out[trace.agent_map[i]] = trace.house_map[reduced[i]];
  }
  for (const auto& step : trace.steps)
    for (auto [a, h] : step.pairs) out[a] = h;
  std::vector<char> used(trace.original_m, 0);
  for (auto h : out) {
    if (h == npos) throw InvalidAllocation("lift_allocation: agent left without a house");
    if (used[h]) throw InvalidAllocation("lift_allocation: house used twice");
    used[h] = 1;
  }
  return Allocation(std::move(out));
}

// Rebuilds the reduced instance from the original and the trace.
inline Instance replay(const Instance& original, const KernelTrace& trace) {
  return original.restrict(trace.agent_map, trace.house_map);
}

}  // namespace envyalloc
