#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "matching.hpp"

namespace envyalloc {

enum class Method { square, kernel_fpt, extremal, single_minded, degree2, ilp, oracle, kernel };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::square: return "square";
    case Method::kernel_fpt: return "kernel+fpt";
    case Method::extremal: return "extremal";
    case Method::single_minded: return "single_minded";
    case Method::degree2: return "degree2";
    case Method::ilp: return "ilp";
    case Method::oracle: return "oracle";
    case Method::kernel: return "kernel";
  }
  return "?";
}

struct SolveResult {
  Allocation allocation;
  int value = 0;
  Method method = Method::oracle;
};

namespace detail {

inline SolveResult finish(const Instance& inst, Allocation alloc, Objective obj, Method method) {
  const int v = envy_report(inst, alloc).value(obj);
  return SolveResult{std::move(alloc), v, method};
}

inline Allocation from_matching(const Instance& inst, const Matching& m) {
  return fill_allocation(inst, m.left_mate);
}

inline int min_level(const Instance& inst, std::size_t a) {
  int best = std::numeric_limits<int>::max();
  for (std::size_t h = 0; h < inst.m(); ++h) best = std::min(best, inst.level(a, h));
  return best;
}

inline void require_strict(const Instance& inst, Objective obj) {
  if (inst.kind() != ProfileKind::strict)
    throw UnsupportedProfile(std::string(to_string(obj)) + " with rankings needs strict rankings");
}

}  // namespace detail

// Exact solver for m = n: every house is allocated.
inline SolveResult solve_square(const Instance& inst, Objective obj) {
  if (inst.m() != inst.n()) throw std::invalid_argument("solve_square needs m = n");
  const std::size_t n = inst.n();

  if (inst.is_binary()) {
    const PreferenceGraph pg(inst);
    switch (obj) {
      case Objective::num_envious:
        return detail::finish(inst, detail::from_matching(inst, max_matching(pg.graph())), obj, Method::square);
      case Objective::max_envy:
        // Agents of degree > k must get a valued house for max envy <= k.
        for (std::size_t k = 0; k <= n; ++k) {
          std::vector<std::size_t> must;
          for (std::size_t a = 0; a < n; ++a)
            if (pg.agent_degree(a) >= k + 1) must.push_back(a);
          if (auto m = matching_saturating(pg.graph(), must))
            return detail::finish(inst, detail::from_matching(inst, *m), obj, Method::square);
        }
        throw std::logic_error("solve_square: no threshold feasible");
      case Objective::total_envy: {
        CostMatrix c(n, n);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t h = 0; h < n; ++h)
            c.set(a, h, inst.values(a, h) ? 0 : static_cast<std::int64_t>(pg.agent_degree(a)));
        return detail::finish(inst, Allocation(min_cost_assignment(c).row_to_col), obj, Method::square);
      }
    }
  }

  switch (obj) {
    case Objective::num_envious: {
      // Top tie group graph.
      BipartiteGraph g(n, n);
      for (std::size_t a = 0; a < n; ++a) {
        const int top = detail::min_level(inst, a);
        for (std::size_t h = 0; h < n; ++h)
          if (inst.level(a, h) == top) g.add_edge(a, h);
      }
      return detail::finish(inst, detail::from_matching(inst, max_matching(g)), obj, Method::square);
    }
    case Objective::max_envy: {
      detail::require_strict(inst, obj);
      const auto all = iota_vector(n);
      for (std::size_t k = 0; k < std::max<std::size_t>(n, 1); ++k) {
        BipartiteGraph g(n, n);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t h = 0; h < n; ++h)
            if (inst.level(a, h) <= static_cast<int>(k)) g.add_edge(a, h);
        if (auto m = matching_saturating(g, all)) return detail::finish(inst, detail::from_matching(inst, *m), obj, Method::square);
      }
      throw std::logic_error("solve_square: no threshold feasible");
    }
    case Objective::total_envy: {
      detail::require_strict(inst, obj);
      CostMatrix c(n, n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t h = 0; h < n; ++h) c.set(a, h, inst.level(a, h));
      return detail::finish(inst, Allocation(min_cost_assignment(c).row_to_col), obj, Method::square);
    }
  }
  throw std::logic_error("solve_square: unknown objective");
}

struct FptOptions {
  std::size_t max_m = 22;
};

// Minimum over all n-subsets of houses of the square solution. Ties go to
// the lexicographically smallest subset.
inline SolveResult solve_fpt_subsets(const Instance& inst, Objective obj, const FptOptions& opt = {}) {
  const std::size_t n = inst.n(), m = inst.m();
  if (m > opt.max_m) throw BudgetExceeded("solve_fpt_subsets: m exceeds configured cap");
  const auto agents = iota_vector(n);
  std::vector<std::size_t> subset = iota_vector(n);
  std::optional<SolveResult> best;
  while (true) {
    auto r = solve_square(inst.restrict(agents, subset), obj);
    if (!best || r.value < best->value) {
      std::vector<std::size_t> hs(n);
      for (std::size_t a = 0; a < n; ++a) hs[a] = subset[r.allocation[a]];
      best = SolveResult{Allocation(std::move(hs)), r.value, Method::kernel_fpt};
      if (best->value == 0) break;
    }
    // Next combination in lexicographic order.
    std::size_t i = n;
    while (i > 0 && subset[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < n; ++j) subset[j] = subset[j - 1] + 1;
  }
  return *best;
}

// Envy-free allocation by repeatedly deleting the neighbourhood of a Hall
// violator in the graph of top choices among the remaining houses.
inline std::optional<Allocation> envy_free_allocation(const Instance& inst) {
  const std::size_t n = inst.n();
  std::vector<std::size_t> alive = iota_vector(inst.m());
  while (true) {
    if (alive.size() < n) return std::nullopt;
    BipartiteGraph g(n, alive.size());
    for (std::size_t a = 0; a < n; ++a) {
      int top = std::numeric_limits<int>::max();
      for (auto h : alive) top = std::min(top, inst.level(a, h));
      for (std::size_t j = 0; j < alive.size(); ++j)
        if (inst.level(a, alive[j]) == top) g.add_edge(a, j);
    }
    const Matching mm = max_matching(g);
    if (mm.size() == n) {
      std::vector<std::size_t> hs(n);
      for (std::size_t a = 0; a < n; ++a) hs[a] = alive[mm.left_mate[a]];
      return Allocation(std::move(hs));
    }
    std::size_t u = 0;
    while (mm.left_matched(u)) ++u;
    std::vector<char> seen_a(n, 0), drop(alive.size(), 0);
    std::vector<std::size_t> queue{u};
    seen_a[u] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (auto r : g.adj[queue[qi]]) {
        drop[r] = 1;
        auto b = mm.right_mate[r];
        if (b == npos) throw std::logic_error("envy_free_allocation: augmenting path in maximum matching");
        if (!seen_a[b]) {
          seen_a[b] = 1;
          queue.push_back(b);
        }
      }
    }
    std::vector<std::size_t> next;
    for (std::size_t j = 0; j < alive.size(); ++j)
      if (!drop[j]) next.push_back(alive[j]);
    alive = std::move(next);
  }
}

struct OracleOptions {
  std::size_t max_n = 8;
  std::size_t max_m = 10;
  bool merge_identical_houses = true;
};

// Visits every injective allocation, or one representative per class of
// allocations that differ only by swapping houses with identical columns.
template <class Visitor>
void for_each_allocation(const Instance& inst, Visitor&& visit, const OracleOptions& opt = {}) {
  if (inst.n() > opt.max_n || inst.m() > opt.max_m) throw BudgetExceeded("oracle: instance exceeds size guard");
  const std::size_t n = inst.n(), m = inst.m();

  std::vector<std::vector<std::size_t>> classes;
  if (opt.merge_identical_houses) {
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t h = 0; h < m; ++h) {
      std::vector<int> col(n);
      for (std::size_t a = 0; a < n; ++a) col[a] = inst.level(a, h);
      auto [it, fresh] = index.emplace(col, classes.size());
      if (fresh) classes.emplace_back();
      classes[it->second].push_back(h);
    }
  } else {
    for (std::size_t h = 0; h < m; ++h) classes.push_back({h});
  }

  std::vector<std::size_t> taken(classes.size(), 0);
  Allocation alloc(std::vector<std::size_t>(n, 0));
  auto rec = [&](auto&& self, std::size_t a) -> void {
    if (a == n) {
      visit(static_cast<const Allocation&>(alloc));
      return;
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (taken[c] == classes[c].size()) continue;
      alloc[a] = classes[c][taken[c]++];
      self(self, a + 1);
      --taken[c];
    }
  };
  rec(rec, 0);
}

struct OracleSummary {
  std::array<int, 3> optimum{};
  std::array<Allocation, 3> best;
  std::array<int, 3> best_fair_welfare{};  // binary only
  int max_welfare = 0;                      // binary only
  std::size_t visited = 0;

  int value(Objective o) const { return optimum[static_cast<std::size_t>(o)]; }
};

// Exhaustive optima for all three objectives in one pass.
inline OracleSummary brute_force_all(const Instance& inst, const OracleOptions& opt = {}) {
  OracleSummary s;
  s.optimum.fill(std::numeric_limits<int>::max());
  s.best_fair_welfare.fill(-1);
  s.max_welfare = -1;
  for_each_allocation(
      inst,
      [&](const Allocation& alloc) {
        ++s.visited;
        const auto r = envy_report(inst, alloc);
        const int w = r.welfare.value_or(0);
        s.max_welfare = std::max(s.max_welfare, w);
        for (auto o : all_objectives) {
          const auto i = static_cast<std::size_t>(o);
          const int v = r.value(o);
          if (v < s.optimum[i]) {
            s.optimum[i] = v;
            s.best[i] = alloc;
            s.best_fair_welfare[i] = w;
          } else if (v == s.optimum[i]) {
            s.best_fair_welfare[i] = std::max(s.best_fair_welfare[i], w);
          }
        }
      },
      opt);
  return s;
}

inline SolveResult brute_force(const Instance& inst, Objective obj, const OracleOptions& opt = {}) {
  auto s = brute_force_all(inst, opt);
  const auto i = static_cast<std::size_t>(obj);
  return SolveResult{s.best[i], s.optimum[i], Method::oracle};
}

}  // namespace envyalloc
