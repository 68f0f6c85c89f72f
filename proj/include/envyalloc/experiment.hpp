#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "core.hpp"
#include "random.hpp"
#include "solve.hpp"

namespace envyalloc {

struct GenSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t n_star = 1;
  ProfileKind kind = ProfileKind::binary;
};

namespace detail {

inline void check_gen_spec(const GenSpec& s) {
  if (s.n == 0) throw std::invalid_argument("gen: n must be positive");
  if (s.m < s.n) throw std::invalid_argument("gen: m < n");
  if (s.n_star == 0 || s.n_star > s.n) throw std::invalid_argument("gen: n_star must be in [1, n]");
  if (s.kind == ProfileKind::binary && s.m < 63 && s.n_star > (std::uint64_t{1} << s.m) - 1)
    throw std::invalid_argument("gen: n_star exceeds the number of nonzero 0/1 rows");
  if (s.kind == ProfileKind::strict && s.m < 20) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= s.m; ++i) f *= i;
    if (s.n_star > f) throw std::invalid_argument("gen: n_star exceeds the number of rankings");
  }
}

}  // namespace detail

// n_star distinct agent types drawn uniformly by rejection, assigned to
// agents round-robin. Binary types are nonzero 0/1 rows.
inline Instance generate_instance(const GenSpec& s, std::uint64_t seed) {
  detail::check_gen_spec(s);
  Rng rng(seed);
  const std::size_t attempts_cap = 1000 * s.n_star + 1000;
  std::size_t attempts = 0;
  auto bump = [&] {
    if (++attempts > attempts_cap) throw std::runtime_error("gen: could not draw enough distinct types");
  };
  switch (s.kind) {
    case ProfileKind::binary: {
      std::set<std::vector<int>> seen;
      std::vector<std::vector<int>> types;
      while (types.size() < s.n_star) {
        bump();
        std::vector<int> row(s.m);
        bool any = false;
        for (auto& v : row) any |= (v = rng.coin() ? 1 : 0);
        if (!any || !seen.insert(row).second) continue;
        types.push_back(row);
      }
      std::vector<std::vector<int>> matrix(s.n);
      for (std::size_t a = 0; a < s.n; ++a) matrix[a] = types[a % s.n_star];
      return Instance::binary(s.m, matrix);
    }
    case ProfileKind::strict: {
      std::set<std::vector<std::size_t>> seen;
      std::vector<std::vector<std::size_t>> types;
      while (types.size() < s.n_star) {
        bump();
        auto r = iota_vector(s.m);
        rng.shuffle(r);
        if (seen.insert(r).second) types.push_back(r);
      }
      std::vector<std::vector<std::size_t>> rankings(s.n);
      for (std::size_t a = 0; a < s.n; ++a) rankings[a] = types[a % s.n_star];
      return Instance::strict(s.m, rankings);
    }
    case ProfileKind::weak: {
      using Groups = std::vector<std::vector<std::size_t>>;
      std::set<Groups> seen;
      std::vector<Groups> types;
      while (types.size() < s.n_star) {
        bump();
        auto r = iota_vector(s.m);
        rng.shuffle(r);
        Groups g(1);
        for (std::size_t i = 0; i < r.size(); ++i) {
          if (i > 0 && rng.coin()) g.emplace_back();
          g.back().push_back(r[i]);
        }
        for (auto& grp : g) std::sort(grp.begin(), grp.end());
        if (seen.insert(g).second) types.push_back(g);
      }
      std::vector<Groups> rankings(s.n);
      for (std::size_t a = 0; a < s.n; ++a) rankings[a] = types[a % s.n_star];
      return Instance::weak(s.m, rankings);
    }
  }
  throw std::logic_error("gen: unknown profile kind");
}

struct ExperimentConfig {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t n_star = 1;
};

struct ExperimentRow {
  std::size_t n = 0, m = 0, n_star = 0, trial = 0;
  Objective objective = Objective::num_envious;
  int kappa_num = 0, kappa_max = 0, kappa_total = 0, welfare = 0;
  double time_ms = 0;
  Method method = Method::oracle;
};

struct ExperimentOptions {
  std::size_t trials = 50;
  std::uint64_t base_seed = 1;
  std::size_t threads = 1;
  SolveOptions solve;
};

// Trial t of every configuration uses seed base_seed + t. Rows come back in
// (config, trial, objective) order regardless of thread count.
inline std::vector<ExperimentRow> run_experiment(const std::vector<ExperimentConfig>& configs,
                                                 const ExperimentOptions& opt) {
  const std::size_t jobs = configs.size() * opt.trials;
  std::vector<ExperimentRow> rows(jobs * 3);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);

  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      try {
        const auto& c = configs[job / opt.trials];
        const std::size_t t = job % opt.trials;
        const Instance inst = generate_instance({c.n, c.m, c.n_star, ProfileKind::binary}, opt.base_seed + t);
        for (auto o : all_objectives) {
          const auto start = std::chrono::steady_clock::now();
          const SolveResult r = solve(inst, o, opt.solve);
          const auto stop = std::chrono::steady_clock::now();
          const EnvyReport rep = envy_report(inst, r.allocation);
          auto& row = rows[job * 3 + static_cast<std::size_t>(o)];
          row = {c.n, c.m, c.n_star, t, o, rep.num_envious, rep.max_envy, rep.total_envy, *rep.welfare,
                 std::chrono::duration<double, std::milli>(stop - start).count(), r.method};
        }
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(opt.threads, jobs));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

inline std::string experiment_csv_header() { return "n,m,n_star,trial,objective,kappa_num,kappa_max,kappa_total,welfare,time_ms,method"; }

inline std::string to_csv(const std::vector<ExperimentRow>& rows, bool with_time = true) {
  std::ostringstream out;
  out << experiment_csv_header() << '\n';
  for (const auto& r : rows) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", with_time ? r.time_ms : 0.0);
    out << r.n << ',' << r.m << ',' << r.n_star << ',' << r.trial << ',' << to_string(r.objective) << ','
        << r.kappa_num << ',' << r.kappa_max << ',' << r.kappa_total << ',' << r.welfare << ',' << ms << ','
        << to_string(r.method) << '\n';
  }
  return out.str();
}

struct ExperimentSummary {
  ExperimentConfig config;
  Objective objective = Objective::num_envious;
  double mean_value = 0;
  double mean_welfare = 0;
  double mean_time_ms = 0;
};

// Means per (config, objective), in first-seen order.
inline std::vector<ExperimentSummary> summarize(const std::vector<ExperimentRow>& rows) {
  std::vector<ExperimentSummary> out;
  std::vector<std::size_t> counts;
  for (const auto& r : rows) {
    std::size_t i = 0;
    while (i < out.size() && !(out[i].config.n == r.n && out[i].config.m == r.m && out[i].config.n_star == r.n_star &&
                               out[i].objective == r.objective))
      ++i;
    if (i == out.size()) {
      out.push_back({{r.n, r.m, r.n_star}, r.objective, 0, 0, 0});
      counts.push_back(0);
    }
    const int v = r.objective == Objective::num_envious ? r.kappa_num
                  : r.objective == Objective::max_envy  ? r.kappa_max
                                                        : r.kappa_total;
    out[i].mean_value += v;
    out[i].mean_welfare += r.welfare;
    out[i].mean_time_ms += r.time_ms;
    ++counts[i];
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].mean_value /= counts[i];
    out[i].mean_welfare /= counts[i];
    out[i].mean_time_ms /= counts[i];
  }
  return out;
}

}  // namespace envyalloc
