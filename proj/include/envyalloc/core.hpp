#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "matching.hpp"

namespace envyalloc {

enum class ProfileKind { binary, strict, weak };

// The three envy measures: number of envious agents (oha), maximum envy
// (eha) and total envy (uha).
enum class Objective { num_envious, max_envy, total_envy };

inline constexpr Objective all_objectives[] = {Objective::num_envious, Objective::max_envy, Objective::total_envy};

inline std::string_view to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::binary: return "binary";
    case ProfileKind::strict: return "strict";
    case ProfileKind::weak: return "weak";
  }
  return "?";
}

inline std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::num_envious: return "oha";
    case Objective::max_envy: return "eha";
    case Objective::total_envy: return "uha";
  }
  return "?";
}

inline Objective parse_objective(std::string_view s) {
  if (s == "oha" || s == "num_envious") return Objective::num_envious;
  if (s == "eha" || s == "max_envy") return Objective::max_envy;
  if (s == "uha" || s == "total_envy") return Objective::total_envy;
  throw std::invalid_argument("unknown objective: " + std::string(s));
}

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidAllocation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedProfile : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A search exceeded its configured size or node budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unvalidated input as read from a file. Signed entries so that negative
// indices can be reported instead of wrapping.
struct RawInstance {
  long long n = 0;
  long long m = 0;
  ProfileKind kind = ProfileKind::binary;
  std::vector<std::vector<long long>> matrix;
  std::vector<std::vector<long long>> rankings;
  std::vector<std::vector<std::vector<long long>>> weak_rankings;
};

class Instance;
Instance validate_instance(const RawInstance& raw);

// n agents, m >= n houses. Every profile is stored as a level matrix:
// level(a, h) is the index of h's tie group in a's ranking, 0 being best.
// Binary profiles use level 0 for valued houses and 1 otherwise.
class Instance {
 public:
  Instance() = default;

  static Instance binary(std::size_t m, const std::vector<std::vector<int>>& matrix) {
    RawInstance raw;
    raw.n = static_cast<long long>(matrix.size());
    raw.m = static_cast<long long>(m);
    raw.kind = ProfileKind::binary;
    for (const auto& row : matrix) raw.matrix.emplace_back(row.begin(), row.end());
    return validate_instance(raw);
  }

  static Instance strict(std::size_t m, const std::vector<std::vector<std::size_t>>& rankings) {
    RawInstance raw;
    raw.n = static_cast<long long>(rankings.size());
    raw.m = static_cast<long long>(m);
    raw.kind = ProfileKind::strict;
    for (const auto& r : rankings) raw.rankings.emplace_back(r.begin(), r.end());
    return validate_instance(raw);
  }

  static Instance weak(std::size_t m, const std::vector<std::vector<std::vector<std::size_t>>>& groups) {
    RawInstance raw;
    raw.n = static_cast<long long>(groups.size());
    raw.m = static_cast<long long>(m);
    raw.kind = ProfileKind::weak;
    for (const auto& agent : groups) {
      auto& out = raw.weak_rankings.emplace_back();
      for (const auto& g : agent) out.emplace_back(g.begin(), g.end());
    }
    return validate_instance(raw);
  }

  // Binary instance from valued sets.
  static Instance from_valued_sets(std::size_t m, const std::vector<std::vector<std::size_t>>& sets) {
    std::vector<std::vector<int>> matrix(sets.size(), std::vector<int>(m, 0));
    for (std::size_t a = 0; a < sets.size(); ++a)
      for (auto h : sets[a]) {
        if (h >= m) throw InvalidInstance("house index out of range");
        matrix[a][h] = 1;
      }
    return binary(m, matrix);
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  ProfileKind kind() const { return kind_; }
  bool is_binary() const { return kind_ == ProfileKind::binary; }

  int level(std::size_t a, std::size_t h) const { return levels_[a * m_ + h]; }

  // Binary profiles only.
  bool values(std::size_t a, std::size_t h) const { return levels_[a * m_ + h] == 0; }

  bool prefers(std::size_t a, std::size_t h1, std::size_t h2) const { return level(a, h1) < level(a, h2); }

  std::vector<std::size_t> valued_set(std::size_t a) const {
    std::vector<std::size_t> out;
    for (std::size_t h = 0; h < m_; ++h)
      if (values(a, h)) out.push_back(h);
    return out;
  }

  std::vector<std::vector<int>> binary_matrix() const {
    require_binary("binary_matrix");
    std::vector<std::vector<int>> out(n_, std::vector<int>(m_));
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t h = 0; h < m_; ++h) out[a][h] = values(a, h) ? 1 : 0;
    return out;
  }

  std::vector<std::vector<std::size_t>> tie_groups(std::size_t a) const {
    int top = 0;
    for (std::size_t h = 0; h < m_; ++h) top = std::max(top, level(a, h));
    std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(top) + 1);
    for (std::size_t h = 0; h < m_; ++h) groups[static_cast<std::size_t>(level(a, h))].push_back(h);
    groups.erase(std::remove_if(groups.begin(), groups.end(), [](const auto& g) { return g.empty(); }), groups.end());
    return groups;
  }

  std::vector<std::size_t> ranking(std::size_t a) const {
    std::vector<std::size_t> order(m_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return level(a, x) < level(a, y); });
    return order;
  }

  // Sub-instance on the given agents and houses, in the given order.
  // Ranking levels are recompressed; binary levels are kept as is.
  Instance restrict(const std::vector<std::size_t>& agents, const std::vector<std::size_t>& houses) const {
    Instance out;
    out.n_ = agents.size();
    out.m_ = houses.size();
    out.kind_ = kind_;
    out.levels_.assign(out.n_ * out.m_, 0);
    for (std::size_t i = 0; i < agents.size(); ++i) {
      if (agents[i] >= n_) throw std::out_of_range("agent index out of range");
      for (std::size_t j = 0; j < houses.size(); ++j) {
        if (houses[j] >= m_) throw std::out_of_range("house index out of range");
        out.levels_[i * out.m_ + j] = level(agents[i], houses[j]);
      }
      if (kind_ != ProfileKind::binary) out.compress_row(i);
    }
    return out;
  }

  // Binary instance with k extra dummy houses appended.
  Instance with_dummy_houses(std::size_t k) const {
    require_binary("with_dummy_houses");
    auto matrix = binary_matrix();
    for (auto& row : matrix) row.resize(m_ + k, 0);
    return binary(m_ + k, matrix);
  }

  bool operator==(const Instance& o) const {
    return n_ == o.n_ && m_ == o.m_ && kind_ == o.kind_ && levels_ == o.levels_;
  }

  void require_binary(const char* what) const {
    if (kind_ != ProfileKind::binary) throw UnsupportedProfile(std::string(what) + " needs a binary profile");
  }

 private:
  friend Instance validate_instance(const RawInstance& raw);

  void compress_row(std::size_t a) {
    std::vector<int> seen;
    for (std::size_t h = 0; h < m_; ++h) seen.push_back(levels_[a * m_ + h]);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (std::size_t h = 0; h < m_; ++h) {
      auto& v = levels_[a * m_ + h];
      v = static_cast<int>(std::lower_bound(seen.begin(), seen.end(), v) - seen.begin());
    }
  }

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  ProfileKind kind_ = ProfileKind::binary;
  std::vector<int> levels_;
};

inline Instance validate_instance(const RawInstance& raw) {
  if (raw.n < 0 || raw.m < 0) throw InvalidInstance("n and m must be non-negative");
  if (raw.m < raw.n) throw InvalidInstance("m < n: need at least as many houses as agents");
  const auto n = static_cast<std::size_t>(raw.n);
  const auto m = static_cast<std::size_t>(raw.m);
  const auto agent_tag = [](std::size_t a) { return "agent " + std::to_string(a); };

  Instance inst;
  inst.n_ = n;
  inst.m_ = m;
  inst.kind_ = raw.kind;
  inst.levels_.assign(n * m, 0);

  switch (raw.kind) {
    case ProfileKind::binary: {
      if (raw.matrix.size() != n) throw InvalidInstance("matrix must have n rows");
      for (std::size_t a = 0; a < n; ++a) {
        if (raw.matrix[a].size() != m) throw InvalidInstance("row of " + agent_tag(a) + " must have m entries");
        for (std::size_t h = 0; h < m; ++h) {
          auto v = raw.matrix[a][h];
          if (v != 0 && v != 1) throw InvalidInstance("matrix entries must be 0 or 1");
          inst.levels_[a * m + h] = v == 1 ? 0 : 1;
        }
      }
      break;
    }
    case ProfileKind::strict: {
      if (raw.rankings.size() != n) throw InvalidInstance("need one ranking per agent");
      for (std::size_t a = 0; a < n; ++a) {
        const auto& r = raw.rankings[a];
        if (r.size() != m) throw InvalidInstance("ranking of " + agent_tag(a) + " must list all m houses");
        std::vector<char> seen(m, 0);
        for (std::size_t pos = 0; pos < m; ++pos) {
          auto h = r[pos];
          if (h < 0 || h >= raw.m) throw InvalidInstance("house index out of range in ranking of " + agent_tag(a));
          if (seen[static_cast<std::size_t>(h)])
            throw InvalidInstance("duplicate house " + std::to_string(h) + " in ranking of " + agent_tag(a));
          seen[static_cast<std::size_t>(h)] = 1;
          inst.levels_[a * m + static_cast<std::size_t>(h)] = static_cast<int>(pos);
        }
      }
      break;
    }
    case ProfileKind::weak: {
      if (raw.weak_rankings.size() != n) throw InvalidInstance("need one ranking per agent");
      for (std::size_t a = 0; a < n; ++a) {
        std::vector<char> seen(m, 0);
        std::size_t count = 0;
        int lvl = 0;
        for (const auto& group : raw.weak_rankings[a]) {
          if (group.empty()) throw InvalidInstance("empty tie group in ranking of " + agent_tag(a));
          for (auto h : group) {
            if (h < 0 || h >= raw.m) throw InvalidInstance("house index out of range in ranking of " + agent_tag(a));
            if (seen[static_cast<std::size_t>(h)])
              throw InvalidInstance("duplicate house " + std::to_string(h) + " in ranking of " + agent_tag(a));
            seen[static_cast<std::size_t>(h)] = 1;
            inst.levels_[a * m + static_cast<std::size_t>(h)] = lvl;
            ++count;
          }
          ++lvl;
        }
        if (count != m) throw InvalidInstance("ranking of " + agent_tag(a) + " must cover all m houses");
      }
      break;
    }
  }
  return inst;
}

// house_of[a] is the house given to agent a.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::vector<std::size_t> house_of) : house_of_(std::move(house_of)) {}

  std::size_t size() const { return house_of_.size(); }
  std::size_t operator[](std::size_t a) const { return house_of_[a]; }
  std::size_t& operator[](std::size_t a) { return house_of_[a]; }
  const std::vector<std::size_t>& houses() const { return house_of_; }

  bool operator==(const Allocation&) const = default;

 private:
  std::vector<std::size_t> house_of_;
};

inline void check_allocation(const Instance& inst, const Allocation& alloc) {
  if (alloc.size() != inst.n()) throw InvalidAllocation("allocation must assign exactly one house per agent");
  std::vector<char> used(inst.m(), 0);
  for (std::size_t a = 0; a < alloc.size(); ++a) {
    auto h = alloc[a];
    if (h >= inst.m()) throw InvalidAllocation("house index out of range");
    if (used[h]) throw InvalidAllocation("allocation is not injective");
    used[h] = 1;
  }
}

inline std::vector<char> allocated_mask(const Instance& inst, const Allocation& alloc) {
  std::vector<char> used(inst.m(), 0);
  for (auto h : alloc.houses()) used[h] = 1;
  return used;
}

struct EnvyReport {
  std::vector<int> per_agent;
  int num_envious = 0;
  int max_envy = 0;
  int total_envy = 0;
  std::optional<int> welfare;  // binary profiles only

  int value(Objective o) const {
    switch (o) {
      case Objective::num_envious: return num_envious;
      case Objective::max_envy: return max_envy;
      case Objective::total_envy: return total_envy;
    }
    return 0;
  }

  bool envy_free() const { return num_envious == 0; }
};

inline EnvyReport envy_report(const Instance& inst, const Allocation& alloc) {
  check_allocation(inst, alloc);
  const std::size_t n = inst.n();
  EnvyReport r;
  r.per_agent.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    const int own = inst.level(a, alloc[a]);
    int e = 0;
    for (std::size_t b = 0; b < n; ++b)
      if (b != a && inst.level(a, alloc[b]) < own) ++e;
    r.per_agent[a] = e;
    if (e > 0) ++r.num_envious;
    r.max_envy = std::max(r.max_envy, e);
    r.total_envy += e;
  }
  if (inst.is_binary()) {
    int w = 0;
    for (std::size_t a = 0; a < n; ++a) w += inst.values(a, alloc[a]) ? 1 : 0;
    r.welfare = w;
  }
  return r;
}

// Bipartite graph of valued (agent, house) pairs of a binary profile.
class PreferenceGraph {
 public:
  explicit PreferenceGraph(const Instance& inst) : graph_(inst.n(), inst.m()) {
    inst.require_binary("preference_graph");
    for (std::size_t a = 0; a < inst.n(); ++a)
      for (std::size_t h = 0; h < inst.m(); ++h)
        if (inst.values(a, h)) graph_.add_edge(a, h);
    fans_ = graph_.right_adjacency();
  }

  const BipartiteGraph& graph() const { return graph_; }
  std::size_t num_agents() const { return graph_.num_left; }
  std::size_t num_houses() const { return graph_.num_right; }

  const std::vector<std::size_t>& valued(std::size_t a) const { return graph_.adj[a]; }
  const std::vector<std::size_t>& fans(std::size_t h) const { return fans_[h]; }
  std::size_t agent_degree(std::size_t a) const { return graph_.adj[a].size(); }
  std::size_t house_degree(std::size_t h) const { return fans_[h].size(); }

  std::vector<std::size_t> dummy_houses() const {
    std::vector<std::size_t> out;
    for (std::size_t h = 0; h < fans_.size(); ++h)
      if (fans_[h].empty()) out.push_back(h);
    return out;
  }

  std::vector<std::size_t> dummy_agents() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < graph_.num_left; ++a)
      if (graph_.adj[a].empty()) out.push_back(a);
    return out;
  }

 private:
  BipartiteGraph graph_;
  std::vector<std::vector<std::size_t>> fans_;
};

inline PreferenceGraph preference_graph(const Instance& inst) { return PreferenceGraph(inst); }

inline std::vector<std::size_t> iota_vector(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

// Completes a partial assignment (npos = unassigned) by handing out the
// unused houses in index order to the unassigned agents in index order.
inline Allocation fill_allocation(const Instance& inst, std::vector<std::size_t> house_of) {
  std::vector<char> used(inst.m(), 0);
  for (auto h : house_of)
    if (h != npos) used[h] = 1;
  std::size_t next = 0;
  for (auto& h : house_of) {
    if (h != npos) continue;
    while (next < inst.m() && used[next]) ++next;
    if (next == inst.m()) throw InvalidAllocation("not enough houses to complete allocation");
    h = next;
    used[next] = 1;
  }
  return Allocation(std::move(house_of));
}

}  // namespace envyalloc
