#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "core.hpp"
#include "matching.hpp"
#include "random.hpp"
#include "solvers.hpp"

namespace envyalloc {

inline SolveResult max_welfare(const Instance& inst) {
  const PreferenceGraph pg(inst);
  const Matching mm = max_matching(pg.graph());
  Allocation alloc = fill_allocation(inst, mm.left_mate);
  return SolveResult{alloc, static_cast<int>(mm.size()), Method::square};
}

struct SimultaneousResult {
  Allocation allocation;
  std::vector<std::size_t> order;  // agents by degree, highest first
  std::vector<std::size_t> p;      // positions in `order` left unsaturated
};

// For m = n: one allocation that maximises welfare and minimises all three
// envy measures. Agents are taken by non-increasing degree; an agent that
// cannot be added to the saturated set is skipped.
inline SimultaneousResult simultaneous_optimal_square(const Instance& inst) {
  if (inst.m() != inst.n()) throw std::invalid_argument("simultaneous_optimal_square needs m = n");
  const PreferenceGraph pg(inst);
  const auto& g = pg.graph();
  SimultaneousResult r;
  r.order = iota_vector(inst.n());
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](std::size_t x, std::size_t y) { return pg.agent_degree(x) > pg.agent_degree(y); });
  Matching mm(g.num_left, g.num_right);
  std::vector<char> seen(g.num_right);
  for (std::size_t pos = 0; pos < r.order.size(); ++pos) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!detail::try_augment(g, r.order[pos], mm, seen)) r.p.push_back(pos);
  }
  r.allocation = fill_allocation(inst, mm.left_mate);
  return r;
}

struct PofEntry {
  int optimum = 0;
  int max_welfare = 0;
  int best_fair_welfare = 0;
  double ratio = 1.0;
  bool infinite = false;
};

struct PofReport {
  std::array<PofEntry, 3> entries;
  const PofEntry& operator[](Objective o) const { return entries[static_cast<std::size_t>(o)]; }
};

inline PofEntry make_pof_entry(int optimum, int max_w, int fair_w) {
  PofEntry e{optimum, max_w, fair_w, 1.0, false};
  if (fair_w > 0) {
    e.ratio = static_cast<double>(max_w) / fair_w;
  } else if (max_w > 0) {
    e.ratio = std::numeric_limits<double>::infinity();
    e.infinite = true;
  }
  return e;
}

// Price of fairness per objective: max welfare over the best welfare among
// objective-optimal allocations. Exact via the square construction when
// m = n, otherwise by enumeration within the oracle guard.
inline PofReport pof(const Instance& inst, const OracleOptions& opt = {}) {
  inst.require_binary("pof");
  const int max_w = max_welfare(inst).value;
  PofReport rep;
  if (inst.m() == inst.n()) {
    const auto s = simultaneous_optimal_square(inst);
    const auto r = envy_report(inst, s.allocation);
    for (auto o : all_objectives)
      rep.entries[static_cast<std::size_t>(o)] = make_pof_entry(r.value(o), max_w, *r.welfare);
    return rep;
  }
  const auto s = brute_force_all(inst, opt);
  if (s.max_welfare != max_w) throw std::logic_error("pof: matching and enumeration disagree on max welfare");
  for (auto o : all_objectives) {
    const auto i = static_cast<std::size_t>(o);
    rep.entries[i] = make_pof_entry(s.optimum[i], max_w, s.best_fair_welfare[i]);
  }
  return rep;
}

// 2n agents, 3n houses. Agent 0 values houses [0, n), agent 1 values
// [n, 2n), all other agents value [2n, 3n).
inline Instance pof_lower_bound_instance(std::size_t n) {
  if (n < 3) throw std::invalid_argument("pof_lower_bound_instance needs n >= 3");
  std::vector<std::vector<int>> matrix(2 * n, std::vector<int>(3 * n, 0));
  for (std::size_t h = 0; h < n; ++h) {
    matrix[0][h] = 1;
    matrix[1][n + h] = 1;
    for (std::size_t a = 2; a < 2 * n; ++a) matrix[a][2 * n + h] = 1;
  }
  return Instance::binary(3 * n, matrix);
}

// Random instance where every agent values row_degree houses and every
// house is valued by col_degree agents. Starts from a circulant layout and
// mixes it with degree-preserving edge switches.
inline Instance gen_doubly_normalized(std::size_t n, std::size_t m, std::size_t row_degree, std::size_t col_degree,
                                      std::uint64_t seed) {
  if (m < n) throw std::invalid_argument("gen_doubly_normalized: m < n");
  if (n * row_degree != m * col_degree) throw std::invalid_argument("gen_doubly_normalized: n*row_degree != m*col_degree");
  if (row_degree > m || col_degree > n) throw std::invalid_argument("gen_doubly_normalized: degree too large");
  std::vector<std::vector<int>> matrix(n, std::vector<int>(m, 0));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t t = 0; t < row_degree; ++t) {
      const std::size_t h = (a * row_degree + t) % m;
      matrix[a][h] = 1;
      edges.emplace_back(a, h);
    }
  Rng rng(seed);
  const std::size_t switches = 10 * edges.size() + 10;
  for (std::size_t s = 0; s < switches && edges.size() >= 2; ++s) {
    const auto e1 = rng.below(edges.size()), e2 = rng.below(edges.size());
    auto [a1, h1] = edges[e1];
    auto [a2, h2] = edges[e2];
    if (a1 == a2 || h1 == h2 || matrix[a1][h2] || matrix[a2][h1]) continue;
    matrix[a1][h1] = matrix[a2][h2] = 0;
    matrix[a1][h2] = matrix[a2][h1] = 1;
    edges[e1] = {a1, h2};
    edges[e2] = {a2, h1};
  }
  return Instance::binary(m, matrix);
}

}  // namespace envyalloc
