#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "solvers.hpp"

namespace envyalloc {

// Agents (houses) of the same type have identical rows (columns).
struct TypeProfile {
  std::vector<std::size_t> agent_count;  // n_i
  std::vector<std::size_t> house_count;  // m_j
  std::vector<std::vector<char>> values;  // agent type i values house type j
  std::vector<std::size_t> agent_type;  // per agent
  std::vector<std::size_t> house_type;  // per house

  std::size_t num_agent_types() const { return agent_count.size(); }
  std::size_t num_house_types() const { return house_count.size(); }
  std::size_t num_agents() const { return agent_type.size(); }
  std::size_t num_houses() const { return house_type.size(); }

  bool valued(std::size_t i, std::size_t j) const { return values[i][j] != 0; }
};

namespace detail {

// Orders 0/1 vectors as binary numbers with entry 0 as the lowest bit.
inline bool mask_less(const std::vector<char>& x, const std::vector<char>& y) {
  for (std::size_t k = x.size(); k-- > 0;)
    if (x[k] != y[k]) return x[k] < y[k];
  return false;
}

inline std::vector<std::size_t> group_by_mask(const std::vector<std::vector<char>>& rows, std::vector<std::size_t>& count) {
  std::vector<std::vector<char>> keys = rows;
  std::sort(keys.begin(), keys.end(), mask_less);
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<std::size_t> type(rows.size());
  count.assign(keys.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto it = std::lower_bound(keys.begin(), keys.end(), rows[r], mask_less);
    type[r] = static_cast<std::size_t>(it - keys.begin());
    ++count[type[r]];
  }
  return type;
}

}  // namespace detail

inline TypeProfile type_profile(const Instance& inst) {
  inst.require_binary("type_profile");
  const std::size_t n = inst.n(), m = inst.m();
  std::vector<std::vector<char>> rows(n, std::vector<char>(m)), cols(m, std::vector<char>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t h = 0; h < m; ++h) rows[a][h] = cols[h][a] = inst.values(a, h) ? 1 : 0;
  TypeProfile p;
  p.agent_type = detail::group_by_mask(rows, p.agent_count);
  p.house_type = detail::group_by_mask(cols, p.house_count);
  p.values.assign(p.agent_count.size(), std::vector<char>(p.house_count.size(), 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t h = 0; h < m; ++h)
      if (inst.values(a, h)) p.values[p.agent_type[a]][p.house_type[h]] = 1;
  return p;
}

// x[i][j] = number of type-i agents receiving type-j houses.
using TypeAllocation = std::vector<std::vector<std::int64_t>>;

// S_i: allocated houses of a type valued by type i.
inline std::vector<std::int64_t> valued_allocated(const TypeProfile& p, const TypeAllocation& x) {
  std::vector<std::int64_t> s(p.num_agent_types(), 0);
  for (std::size_t i = 0; i < p.num_agent_types(); ++i)
    for (std::size_t i2 = 0; i2 < p.num_agent_types(); ++i2)
      for (std::size_t j = 0; j < p.num_house_types(); ++j)
        if (p.valued(i, j)) s[i] += x[i2][j];
  return s;
}

// Cell (i, j) is envious iff j is not valued by i, x_ij > 0 and S_i > 0.
// Every agent in an envious cell envies exactly S_i agents.
inline int type_objective(const TypeProfile& p, const TypeAllocation& x, Objective obj) {
  const auto s = valued_allocated(p, x);
  std::int64_t v = 0;
  for (std::size_t i = 0; i < p.num_agent_types(); ++i)
    for (std::size_t j = 0; j < p.num_house_types(); ++j) {
      if (p.valued(i, j) || x[i][j] == 0 || s[i] == 0) continue;
      switch (obj) {
        case Objective::num_envious: v += x[i][j]; break;
        case Objective::max_envy: v = std::max(v, s[i]); break;
        case Objective::total_envy: v += x[i][j] * s[i]; break;
      }
    }
  return static_cast<int>(v);
}

struct TypeSolveOptions {
  std::size_t node_budget = 2'000'000;
};

struct TypeSolveResult {
  int value = 0;
  TypeAllocation x;
  std::size_t nodes = 0;
};

// Branch and bound over type allocations. The objective restricted to
// committed cells never decreases as more cells are fixed, so it is a
// valid lower bound.
inline TypeSolveResult solve_types(const TypeProfile& p, Objective obj, const TypeSolveOptions& opt = {}) {
  const std::size_t ni = p.num_agent_types(), mj = p.num_house_types();
  if (p.num_houses() < p.num_agents()) throw std::invalid_argument("solve_types: fewer houses than agents");
  TypeAllocation x(ni, std::vector<std::int64_t>(mj, 0));
  std::vector<std::int64_t> row_rem(ni), col_rem(mj);
  for (std::size_t i = 0; i < ni; ++i) row_rem[i] = static_cast<std::int64_t>(p.agent_count[i]);
  for (std::size_t j = 0; j < mj; ++j) col_rem[j] = static_cast<std::int64_t>(p.house_count[j]);

  TypeSolveResult best;
  best.value = std::numeric_limits<int>::max();
  std::size_t nodes = 0;

  auto rec = [&](auto&& self, std::size_t cell) -> void {
    if (++nodes > opt.node_budget) throw BudgetExceeded("solve_types: node budget exhausted");
    if (cell > 0 && type_objective(p, x, obj) >= best.value) return;
    if (cell == ni * mj) {
      best.value = type_objective(p, x, obj);
      best.x = x;
      return;
    }
    const std::size_t i = cell / mj, j = cell % mj;
    std::int64_t later = 0;
    for (std::size_t j2 = j + 1; j2 < mj; ++j2) later += col_rem[j2];
    const std::int64_t hi = std::min(row_rem[i], col_rem[j]);
    const std::int64_t lo = std::max<std::int64_t>(0, row_rem[i] - later);
    for (std::int64_t v = hi; v >= lo; --v) {
      x[i][j] = v;
      row_rem[i] -= v;
      col_rem[j] -= v;
      self(self, cell + 1);
      row_rem[i] += v;
      col_rem[j] += v;
      x[i][j] = 0;
      if (best.value == 0) return;
    }
  };
  if (ni == 0) {
    best.value = 0;
  } else {
    rec(rec, 0);
  }
  best.nodes = nodes;
  return best;
}

// Concrete allocation: cells in row-major order take the lowest-index
// unused agents and houses of their types.
inline Allocation realize_allocation(const TypeProfile& p, const TypeAllocation& x) {
  std::vector<std::vector<std::size_t>> agents(p.num_agent_types()), houses(p.num_house_types());
  for (std::size_t a = 0; a < p.num_agents(); ++a) agents[p.agent_type[a]].push_back(a);
  for (std::size_t h = 0; h < p.num_houses(); ++h) houses[p.house_type[h]].push_back(h);
  std::vector<std::size_t> next_a(agents.size(), 0), next_h(houses.size(), 0);
  std::vector<std::size_t> house_of(p.num_agents(), npos);
  for (std::size_t i = 0; i < p.num_agent_types(); ++i)
    for (std::size_t j = 0; j < p.num_house_types(); ++j)
      for (std::int64_t t = 0; t < x[i][j]; ++t) {
        if (next_a[i] >= agents[i].size() || next_h[j] >= houses[j].size())
          throw std::invalid_argument("realize_allocation: type allocation exceeds type counts");
        house_of[agents[i][next_a[i]++]] = houses[j][next_h[j]++];
      }
  for (auto h : house_of)
    if (h == npos) throw std::invalid_argument("realize_allocation: some agent is unassigned");
  return Allocation(std::move(house_of));
}

inline TypeAllocation type_allocation_of(const TypeProfile& p, const Allocation& alloc) {
  TypeAllocation x(p.num_agent_types(), std::vector<std::int64_t>(p.num_house_types(), 0));
  for (std::size_t a = 0; a < alloc.size(); ++a) ++x[p.agent_type[a]][p.house_type[alloc[a]]];
  return x;
}

// ---- Linear models ----

struct IlpVariable {
  std::string name;
  bool binary = false;
  std::int64_t lower = 0;
};

struct LinearTerm {
  std::size_t var;
  std::int64_t coef;
};

struct QuadraticTerm {
  std::size_t a, b;
  std::int64_t coef;
};

enum class Sense { le, eq, ge };

struct IlpConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::le;
  std::int64_t rhs = 0;
};

struct IlpModel {
  std::vector<IlpVariable> variables;
  std::vector<LinearTerm> objective;
  std::vector<QuadraticTerm> quadratic_objective;
  std::vector<IlpConstraint> constraints;

  std::size_t add_variable(std::string name, bool binary) {
    variables.push_back({std::move(name), binary, 0});
    return variables.size() - 1;
  }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t v = 0; v < variables.size(); ++v)
      if (variables[v].name == name) return v;
    return std::nullopt;
  }

  std::int64_t objective_value(const std::vector<std::int64_t>& val) const {
    std::int64_t s = 0;
    for (auto t : objective) s += t.coef * val[t.var];
    for (auto q : quadratic_objective) s += q.coef * val[q.a] * val[q.b];
    return s;
  }

  // Name of the first violated constraint or bound, if any.
  std::optional<std::string> first_violation(const std::vector<std::int64_t>& val) const {
    for (std::size_t v = 0; v < variables.size(); ++v) {
      if (val[v] < variables[v].lower) return variables[v].name + " lower bound";
      if (variables[v].binary && val[v] > 1) return variables[v].name + " binary";
    }
    for (const auto& c : constraints) {
      std::int64_t lhs = 0;
      for (auto t : c.terms) lhs += t.coef * val[t.var];
      const bool ok = c.sense == Sense::le ? lhs <= c.rhs : c.sense == Sense::ge ? lhs >= c.rhs : lhs == c.rhs;
      if (!ok) return c.name;
    }
    return std::nullopt;
  }
};

enum class ModelKind { p1, p2, uha_quadratic };

namespace detail {

struct TypeVars {
  std::vector<std::vector<std::size_t>> x, z, d, dp;
  std::optional<std::size_t> w;
};

inline std::string cell_name(const char* prefix, std::size_t i, std::size_t j) {
  return std::string(prefix) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

inline IlpModel build_model(const TypeProfile& p, ModelKind kind, TypeVars* out = nullptr) {
  const std::size_t ni = p.num_agent_types(), mj = p.num_house_types();
  const auto n = static_cast<std::int64_t>(p.num_agents());
  const auto m = static_cast<std::int64_t>(p.num_houses());
  IlpModel model;
  TypeVars tv;
  auto grid = [&](const char* prefix, bool binary) {
    std::vector<std::vector<std::size_t>> g(ni, std::vector<std::size_t>(mj));
    for (std::size_t i = 0; i < ni; ++i)
      for (std::size_t j = 0; j < mj; ++j) g[i][j] = model.add_variable(cell_name(prefix, i, j), binary);
    return g;
  };
  tv.x = grid("x", false);
  tv.z = grid("z", false);
  tv.d = grid("d", true);
  tv.dp = grid("dp", true);
  if (kind == ModelKind::p2) tv.w = model.add_variable("w", false);

  // Sum of x over all agent types and the house types valued by i.
  auto valued_sum = [&](std::size_t i, std::int64_t coef) {
    std::vector<LinearTerm> t;
    for (std::size_t i2 = 0; i2 < ni; ++i2)
      for (std::size_t j2 = 0; j2 < mj; ++j2)
        if (p.valued(i, j2)) t.push_back({tv.x[i2][j2], coef});
    return t;
  };
  auto add = [&](std::string name, std::vector<LinearTerm> terms, Sense s, std::int64_t rhs) {
    model.constraints.push_back({std::move(name), std::move(terms), s, rhs});
  };
  auto concat = [](std::vector<LinearTerm> a, const std::vector<LinearTerm>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };

  for (std::size_t i = 0; i < ni; ++i) {
    std::vector<LinearTerm> t;
    for (std::size_t j = 0; j < mj; ++j) t.push_back({tv.x[i][j], 1});
    add("C1_" + std::to_string(i), t, Sense::eq, static_cast<std::int64_t>(p.agent_count[i]));
  }
  for (std::size_t j = 0; j < mj; ++j) {
    std::vector<LinearTerm> t;
    for (std::size_t i = 0; i < ni; ++i) t.push_back({tv.x[i][j], 1});
    add("C2_" + std::to_string(j), t, Sense::le, static_cast<std::int64_t>(p.house_count[j]));
  }
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t j = 0; j < mj; ++j) {
      if (p.valued(i, j)) continue;
      const auto ij = std::to_string(i) + "_" + std::to_string(j);
      add("C3a_" + ij, {{tv.x[i][j], 1}, {tv.dp[i][j], -n}}, Sense::le, 0);
      add("C3b_" + ij, concat(valued_sum(i, 1), {{tv.z[i][j], -n * m}, {tv.dp[i][j], n * m}}), Sense::le, n * m);
      if (kind == ModelKind::p1)
        add("C3c_" + ij, concat({{tv.z[i][j], 1}}, valued_sum(i, -static_cast<std::int64_t>(p.agent_count[i]))), Sense::le,
            0);
    }
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t j = 0; j < mj; ++j) {
      const auto ij = std::to_string(i) + "_" + std::to_string(j);
      if (kind == ModelKind::p1) {
        const auto ni_c = static_cast<std::int64_t>(p.agent_count[i]);
        add("C4a_" + ij, {{tv.z[i][j], 1}, {tv.d[i][j], -ni_c}}, Sense::le, 0);
        add("C4b_" + ij, {{tv.x[i][j], 1}, {tv.z[i][j], -1}, {tv.d[i][j], ni_c}}, Sense::le, ni_c);
        add("C4c_" + ij, {{tv.z[i][j], 1}, {tv.x[i][j], -1}}, Sense::le, 0);
      } else {
        add("C4a_" + ij, {{tv.z[i][j], 1}, {tv.d[i][j], -n}}, Sense::le, 0);
        add("C4b_" + ij, concat(valued_sum(i, 1), {{tv.z[i][j], -1}, {tv.d[i][j], n}}), Sense::le, n);
        add("C4c_" + ij, concat({{tv.z[i][j], 1}}, valued_sum(i, -n)), Sense::le, 0);
      }
    }
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t j = 0; j < mj; ++j)
      if (p.valued(i, j)) add("C5_" + std::to_string(i) + "_" + std::to_string(j), {{tv.z[i][j], 1}}, Sense::eq, 0);
  if (tv.w)
    for (std::size_t i = 0; i < ni; ++i)
      for (std::size_t j = 0; j < mj; ++j)
        add("C8_" + std::to_string(i) + "_" + std::to_string(j), {{tv.z[i][j], 1}, {*tv.w, -1}}, Sense::le, 0);

  switch (kind) {
    case ModelKind::p1:
      for (std::size_t i = 0; i < ni; ++i)
        for (std::size_t j = 0; j < mj; ++j) model.objective.push_back({tv.z[i][j], 1});
      break;
    case ModelKind::p2: model.objective.push_back({*tv.w, 1}); break;
    case ModelKind::uha_quadratic:
      for (std::size_t i = 0; i < ni; ++i)
        for (std::size_t j = 0; j < mj; ++j) model.quadratic_objective.push_back({tv.x[i][j], tv.z[i][j], 1});
      break;
  }
  if (out) *out = tv;
  return model;
}

}  // namespace detail

// Minimises the number of envious agents.
inline IlpModel build_p1(const TypeProfile& p) { return detail::build_model(p, ModelKind::p1); }
// Minimises the maximum envy.
inline IlpModel build_p2(const TypeProfile& p) { return detail::build_model(p, ModelKind::p2); }
// Quadratic objective sum x_ij z_ij over the constraints of build_p2 without w.
inline IlpModel build_uha_quadratic(const TypeProfile& p) { return detail::build_model(p, ModelKind::uha_quadratic); }

// Full variable assignment induced by a type allocation.
inline std::vector<std::int64_t> model_solution(const TypeProfile& p, ModelKind kind, const TypeAllocation& x) {
  detail::TypeVars tv;
  const IlpModel model = detail::build_model(p, kind, &tv);
  std::vector<std::int64_t> val(model.variables.size(), 0);
  const auto s = valued_allocated(p, x);
  std::int64_t w = 0;
  for (std::size_t i = 0; i < p.num_agent_types(); ++i)
    for (std::size_t j = 0; j < p.num_house_types(); ++j) {
      const bool envious = !p.valued(i, j) && x[i][j] > 0 && s[i] > 0;
      val[tv.x[i][j]] = x[i][j];
      const std::int64_t z = envious ? (kind == ModelKind::p1 ? x[i][j] : s[i]) : 0;
      val[tv.z[i][j]] = z;
      val[tv.d[i][j]] = z > 0 ? 1 : 0;
      val[tv.dp[i][j]] = !p.valued(i, j) && x[i][j] > 0 ? 1 : 0;
      w = std::max(w, z);
    }
  if (tv.w) val[*tv.w] = w;
  return val;
}

namespace detail {

inline void write_terms(std::ostream& os, const std::vector<LinearTerm>& terms, const IlpModel& model) {
  bool first = true;
  for (auto t : terms) {
    if (t.coef == 0) continue;
    const std::int64_t mag = t.coef < 0 ? -t.coef : t.coef;
    os << ' ';
    if (t.coef < 0) os << "- ";
    else if (!first) os << "+ ";
    if (mag != 1) os << mag << ' ';
    os << model.variables[t.var].name;
    first = false;
  }
}

}  // namespace detail

// CPLEX LP text.
inline std::string export_lp(const IlpModel& model) {
  std::ostringstream os;
  os << "Minimize\n obj:";
  detail::write_terms(os, model.objective, model);
  if (!model.quadratic_objective.empty()) {
    os << (model.objective.empty() ? " [" : " + [");
    bool first = true;
    for (auto q : model.quadratic_objective) {
      os << (first ? " " : " + ") << 2 * q.coef << ' ' << model.variables[q.a].name << " * " << model.variables[q.b].name;
      first = false;
    }
    os << " ] / 2";
  }
  os << "\nSubject To\n";
  for (const auto& c : model.constraints) {
    os << ' ' << c.name << ':';
    detail::write_terms(os, c.terms, model);
    os << (c.sense == Sense::le ? " <= " : c.sense == Sense::ge ? " >= " : " = ") << c.rhs << '\n';
  }
  os << "Bounds\n";
  for (const auto& v : model.variables)
    if (!v.binary) os << ' ' << v.name << " >= " << v.lower << '\n';
  os << "Generals\n";
  for (const auto& v : model.variables)
    if (!v.binary) os << ' ' << v.name << '\n';
  os << "Binaries\n";
  for (const auto& v : model.variables)
    if (v.binary) os << ' ' << v.name << '\n';
  os << "End\n";
  return os.str();
}

// Solves a binary instance through its type profile.
inline SolveResult solve_ilp(const Instance& inst, Objective obj, const TypeSolveOptions& opt = {}) {
  const auto p = type_profile(inst);
  const auto r = solve_types(p, obj, opt);
  return detail::finish(inst, realize_allocation(p, r.x), obj, Method::ilp);
}

}  // namespace envyalloc
