#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace envyalloc {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Bipartite graph with left vertices 0..num_left-1 and right vertices
// 0..num_right-1. Adjacency is stored on the left side, sorted ascending.
struct BipartiteGraph {
  std::size_t num_left = 0;
  std::size_t num_right = 0;
  std::vector<std::vector<std::size_t>> adj;

  BipartiteGraph() = default;
  BipartiteGraph(std::size_t left, std::size_t right) : num_left(left), num_right(right), adj(left) {}

  void add_edge(std::size_t l, std::size_t r) {
    if (l >= num_left || r >= num_right) throw std::out_of_range("edge endpoint out of range");
    auto& row = adj[l];
    auto it = std::lower_bound(row.begin(), row.end(), r);
    if (it == row.end() || *it != r) row.insert(it, r);
  }

  bool has_edge(std::size_t l, std::size_t r) const {
    return std::binary_search(adj[l].begin(), adj[l].end(), r);
  }

  std::size_t num_edges() const {
    std::size_t e = 0;
    for (const auto& row : adj) e += row.size();
    return e;
  }

  std::vector<std::vector<std::size_t>> right_adjacency() const {
    std::vector<std::vector<std::size_t>> radj(num_right);
    for (std::size_t l = 0; l < num_left; ++l)
      for (auto r : adj[l]) radj[r].push_back(l);
    return radj;
  }
};

struct Matching {
  std::vector<std::size_t> left_mate;   // npos when unmatched
  std::vector<std::size_t> right_mate;

  Matching() = default;
  Matching(std::size_t left, std::size_t right) : left_mate(left, npos), right_mate(right, npos) {}

  std::size_t size() const {
    return static_cast<std::size_t>(
        std::count_if(left_mate.begin(), left_mate.end(), [](std::size_t r) { return r != npos; }));
  }

  bool left_matched(std::size_t l) const { return left_mate[l] != npos; }
  bool right_matched(std::size_t r) const { return right_mate[r] != npos; }

  void match(std::size_t l, std::size_t r) {
    left_mate[l] = r;
    right_mate[r] = l;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t l = 0; l < left_mate.size(); ++l)
      if (left_mate[l] != npos) out.emplace_back(l, left_mate[l]);
    return out;
  }
};

namespace detail {

// Kuhn's augmenting search, neighbours tried in ascending order.
inline bool try_augment(const BipartiteGraph& g, std::size_t l, Matching& m, std::vector<char>& seen) {
  for (auto r : g.adj[l]) {
    if (seen[r]) continue;
    seen[r] = 1;
    if (m.right_mate[r] == npos || try_augment(g, m.right_mate[r], m, seen)) {
      m.match(l, r);
      return true;
    }
  }
  return false;
}

inline void check_matching(const BipartiteGraph& g, const Matching& m) {
  if (m.left_mate.size() != g.num_left || m.right_mate.size() != g.num_right)
    throw std::invalid_argument("matching does not fit graph");
  for (std::size_t l = 0; l < g.num_left; ++l) {
    auto r = m.left_mate[l];
    if (r == npos) continue;
    if (!g.has_edge(l, r) || m.right_mate[r] != l) throw std::invalid_argument("matching is not valid for graph");
  }
}

}  // namespace detail

// Augments `m` to a maximum matching. Vertices matched in `m` stay matched.
inline Matching extend_to_maximum(const BipartiteGraph& g, Matching m) {
  detail::check_matching(g, m);
  std::vector<char> seen(g.num_right);
  for (std::size_t l = 0; l < g.num_left; ++l) {
    if (m.left_matched(l)) continue;
    std::fill(seen.begin(), seen.end(), 0);
    detail::try_augment(g, l, m, seen);
  }
  return m;
}

inline Matching max_matching(const BipartiteGraph& g) {
  return extend_to_maximum(g, Matching(g.num_left, g.num_right));
}

// Maximum matching that covers every left vertex in `left_subset`, if one exists.
inline std::optional<Matching> matching_saturating(const BipartiteGraph& g,
                                                   const std::vector<std::size_t>& left_subset) {
  Matching m(g.num_left, g.num_right);
  std::vector<char> seen(g.num_right);
  for (auto l : left_subset) {
    if (l >= g.num_left) throw std::out_of_range("left vertex out of range");
    if (m.left_matched(l)) continue;
    std::fill(seen.begin(), seen.end(), 0);
    if (!detail::try_augment(g, l, m, seen)) return std::nullopt;
  }
  return extend_to_maximum(g, std::move(m));
}

// Rectangular integer cost matrix; entries may be prohibited.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cost_(rows * cols, 0), banned_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, std::int64_t v) {
    if (v < 0) throw std::invalid_argument("costs must be non-negative");
    cost_[r * cols_ + c] = v;
    banned_[r * cols_ + c] = 0;
  }
  void prohibit(std::size_t r, std::size_t c) { banned_[r * cols_ + c] = 1; }

  bool prohibited(std::size_t r, std::size_t c) const { return banned_[r * cols_ + c] != 0; }
  std::int64_t at(std::size_t r, std::size_t c) const { return cost_[r * cols_ + c]; }

  std::int64_t max_finite() const {
    std::int64_t best = 0;
    for (std::size_t i = 0; i < cost_.size(); ++i)
      if (!banned_[i]) best = std::max(best, cost_[i]);
    return best;
  }

  // Stand-in value for prohibited entries: larger than any finite assignment.
  std::int64_t inf() const {
    return static_cast<std::int64_t>(rows_) * static_cast<std::int64_t>(cols_) * max_finite() + 1;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::int64_t> cost_;
  std::vector<char> banned_;
};

struct Assignment {
  std::vector<std::size_t> row_to_col;
  std::int64_t cost = 0;
  bool feasible = true;
};

// Minimum-cost assignment of every row to a distinct column (rows <= cols).
// Potentials-based Hungarian method; prohibited cells cost inf().
inline Assignment min_cost_assignment(const CostMatrix& c) {
  const std::size_t n = c.rows(), m = c.cols();
  if (n > m) throw std::invalid_argument("min_cost_assignment needs rows <= cols");
  Assignment out;
  out.row_to_col.assign(n, npos);
  if (n == 0) return out;

  const std::int64_t INF = c.inf();
  auto cost = [&](std::size_t i, std::size_t j) { return c.prohibited(i, j) ? INF : c.at(i, j); };
  const std::int64_t BIG = std::numeric_limits<std::int64_t>::max() / 4;

  // 1-based arrays, column 0 is a sentinel.
  std::vector<std::int64_t> u(n + 1, 0), v(m + 1, 0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::int64_t> minv(m + 1, BIG);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      std::size_t i0 = p[j0], j1 = 0;
      std::int64_t delta = BIG;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        std::int64_t cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  for (std::size_t j = 1; j <= m; ++j)
    if (p[j] != 0) out.row_to_col[p[j] - 1] = j - 1;
  for (std::size_t i = 0; i < n; ++i) {
    auto j = out.row_to_col[i];
    if (c.prohibited(i, j)) out.feasible = false;
    out.cost += cost(i, j);
  }
  return out;
}

}  // namespace envyalloc
