#pragma once

#include <cstddef>
#include <cstdint>

#include "core.hpp"
#include "extremal.hpp"
#include "ilp.hpp"
#include "kernel.hpp"
#include "solvers.hpp"
#include "special.hpp"

namespace envyalloc {

struct SolveOptions {
  FptOptions fpt;
  TypeSolveOptions types;
  // Subset enumeration is preferred while C(m, n) stays below this.
  std::uint64_t fpt_subset_limit = 5000;
};

namespace detail {

inline std::uint64_t binomial(std::size_t m, std::size_t k) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (m - k + i) / i;
    if (r > (std::uint64_t{1} << 40)) return r;
  }
  return r;
}

inline bool single_minded(const Instance& inst) {
  const PreferenceGraph pg(inst);
  for (std::size_t a = 0; a < inst.n(); ++a)
    if (pg.agent_degree(a) != 1) return false;
  return true;
}

inline bool house_degree_at_most_two(const Instance& inst) {
  const PreferenceGraph pg(inst);
  for (std::size_t h = 0; h < inst.m(); ++h)
    if (pg.house_degree(h) > 2) return false;
  return true;
}

inline SolveResult solve_general(const Instance& inst, Objective obj, const SolveOptions& opt) {
  if (binomial(inst.m(), inst.n()) <= opt.fpt_subset_limit) return solve_fpt_subsets(inst, obj, opt.fpt);
  try {
    return solve_ilp(inst, obj, opt.types);
  } catch (const BudgetExceeded&) {
    return solve_fpt_subsets(inst, obj, opt.fpt);
  }
}

}  // namespace detail

// Kernelizes, picks the cheapest applicable exact solver for the reduced
// instance, and lifts the answer back. Ranking profiles go straight to the
// square solver or to subset enumeration.
inline SolveResult solve(const Instance& inst, Objective obj, const SolveOptions& opt = {}) {
  if (!inst.is_binary()) return inst.m() == inst.n() ? solve_square(inst, obj) : solve_fpt_subsets(inst, obj, opt.fpt);
  const KernelResult k = kernelize(inst);
  if (k.trivial_yes)
    return detail::finish(inst, lift_allocation(k.trace, trivial_allocation(k.reduced)), obj, Method::kernel);

  const Instance& r = k.reduced;
  SolveResult sub;
  if (r.m() == r.n()) {
    sub = solve_square(r, obj);
  } else if (detail::single_minded(r)) {
    sub = solve_single_minded(r, obj);
  } else if (is_extremal(r)) {
    sub = solve_extremal(r, obj);
  } else if (obj == Objective::num_envious && detail::house_degree_at_most_two(r)) {
    sub = solve_house_degree_two_oha(r);
  } else {
    sub = detail::solve_general(r, obj, opt);
  }
  return detail::finish(inst, lift_allocation(k.trace, sub.allocation), obj, sub.method);
}

}  // namespace envyalloc
