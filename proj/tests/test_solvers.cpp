#include <gtest/gtest.h>

#include "envyalloc/io.hpp"
#include "envyalloc/solve.hpp"
#include "envyalloc/solvers.hpp"
#include "support/generators.hpp"
#include "support/naive_oracle.hpp"

using namespace envyalloc;
using namespace envyalloc::testing;

namespace {

Instance four_agent_instance() { return Instance::strict(4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}}); }

std::string data_file(const char* name) { return std::string(ENVYALLOC_DATA_DIR) + "/" + name; }

}  // namespace

TEST(SolveSquare, TwoAgentsOneWantedHouse) {
  const auto inst = Instance::binary(2, {{1, 0}, {1, 0}});
  EXPECT_EQ(solve_square(inst, Objective::num_envious).value, 1);
  EXPECT_EQ(solve_square(inst, Objective::total_envy).value, 1);
}

TEST(SolveSquare, ThreeAgentsTwoWantedHouses) {
  const auto inst = Instance::binary(3, {{1, 1, 0}, {1, 1, 0}, {1, 1, 0}});
  EXPECT_EQ(solve_square(inst, Objective::max_envy).value, 2);
}

TEST(SolveSquare, PerfectMatchingMeansZero) {
  const auto inst = Instance::binary(3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 0}});
  for (auto o : all_objectives) EXPECT_EQ(solve_square(inst, o).value, 0);
}

TEST(SolveSquare, IntroRankings) {
  const auto inst = four_agent_instance();
  EXPECT_EQ(solve_square(inst, Objective::num_envious).value, 1);
  EXPECT_EQ(solve_square(inst, Objective::max_envy).value, 1);
  EXPECT_EQ(solve_square(inst, Objective::total_envy).value, 3);
}

TEST(SolveSquare, WeakRankingsOnlyForCount) {
  const auto inst = Instance::weak(2, {{{0, 1}}, {{0}, {1}}});
  EXPECT_EQ(solve_square(inst, Objective::num_envious).value, 0);
  EXPECT_THROW(solve_square(inst, Objective::max_envy), UnsupportedProfile);
  EXPECT_THROW(solve_square(inst, Objective::total_envy), UnsupportedProfile);
}

TEST(SolveSquare, RandomBinaryMatchesNaiveOracle) {
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    const auto inst = random_square_binary(rng, 6);
    const auto ref = naive_summary(inst);
    for (auto o : all_objectives) {
      const auto r = solve_square(inst, o);
      EXPECT_EQ(r.value, ref.get(o));
      EXPECT_EQ(envy_report(inst, r.allocation).value(o), r.value);
    }
  }
}

TEST(SolveSquare, RandomRankingsMatchNaiveOracle) {
  Rng rng(32);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rng.between(1, 6);
    const auto strict = random_strict(rng, n, n);
    const auto ref = naive_summary(strict);
    for (auto o : all_objectives) EXPECT_EQ(solve_square(strict, o).value, ref.get(o));
    const auto weak = random_weak(rng, n, n);
    EXPECT_EQ(solve_square(weak, Objective::num_envious).value, naive_summary(weak).get(Objective::num_envious));
  }
}

TEST(SolveFpt, SquareIsSingleSubset) {
  Rng rng(33);
  for (int t = 0; t < 50; ++t) {
    const auto inst = random_square_binary(rng, 5);
    for (auto o : all_objectives) EXPECT_EQ(solve_fpt_subsets(inst, o).value, solve_square(inst, o).value);
  }
}

TEST(SolveFpt, DummySubset) {
  const auto inst = Instance::binary(4, {{1, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}});
  const auto r = solve_fpt_subsets(inst, Objective::num_envious);
  EXPECT_EQ(r.value, 0);
  EXPECT_EQ(r.allocation.houses(), (std::vector<std::size_t>{1, 2, 3}));
}

TEST(SolveFpt, RandomMatchesNaiveOracle) {
  Rng rng(34);
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_binary(rng, 5, 7);
    const auto ref = naive_summary(inst);
    for (auto o : all_objectives) EXPECT_EQ(solve_fpt_subsets(inst, o).value, ref.get(o));
  }
}

TEST(SolveFpt, Cap) {
  const auto inst = Instance::binary(30, {std::vector<int>(30, 1)});
  EXPECT_THROW(solve_fpt_subsets(inst, Objective::num_envious, {20}), BudgetExceeded);
}

TEST(EnvyFree, TwoAgentsThreeHouses) {
  const auto inst = Instance::binary(3, {{1, 0, 0}, {1, 0, 0}});
  const auto a = envy_free_allocation(inst);
  ASSERT_TRUE(a);
  EXPECT_TRUE(envy_report(inst, *a).envy_free());
  for (auto h : a->houses()) EXPECT_NE(h, 0u);
}

TEST(EnvyFree, SquareWithoutPerfectMatching) {
  EXPECT_FALSE(envy_free_allocation(Instance::binary(2, {{1, 0}, {1, 0}})));
}

TEST(EnvyFree, RankingsToo) {
  const auto weak = Instance::weak(3, {{{0}, {1, 2}}, {{0}, {1, 2}}});
  const auto a = envy_free_allocation(weak);
  ASSERT_TRUE(a);
  EXPECT_TRUE(envy_report(weak, *a).envy_free());
  EXPECT_FALSE(envy_free_allocation(four_agent_instance()));
}

TEST(EnvyFree, VerdictMatchesNaiveOracle) {
  Rng rng(35);
  for (int t = 0; t < 300; ++t) {
    const auto inst = random_binary(rng, 5, 8);
    const bool exists = naive_summary(inst).get(Objective::num_envious) == 0;
    const auto a = envy_free_allocation(inst);
    ASSERT_EQ(a.has_value(), exists);
    if (a) {
      EXPECT_TRUE(envy_report(inst, *a).envy_free());
    }
  }
}

TEST(BruteForce, IntroOptima) {
  const auto s = brute_force_all(four_agent_instance());
  EXPECT_EQ(s.value(Objective::num_envious), 1);
  EXPECT_EQ(s.value(Objective::max_envy), 1);
  EXPECT_EQ(s.value(Objective::total_envy), 3);
}

TEST(BruteForce, ThreeIdenticalAgents) {
  const auto inst = Instance::binary(3, {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}});
  EXPECT_EQ(brute_force(inst, Objective::num_envious).value, 2);
}

TEST(BruteForce, MergingAgreesWithPlainEnumeration) {
  Rng rng(36);
  for (int t = 0; t < 200; ++t) {
    const auto inst = rng.coin() ? random_binary(rng, 5, 7) : random_weak(rng, 4, 6);
    const auto ref = naive_summary(inst);
    const auto merged = brute_force_all(inst, {8, 10, true});
    const auto plain = brute_force_all(inst, {8, 10, false});
    EXPECT_EQ(plain.visited, static_cast<std::size_t>(ref.count));
    for (auto o : all_objectives) {
      EXPECT_EQ(merged.value(o), ref.get(o));
      EXPECT_EQ(plain.value(o), ref.get(o));
    }
    if (inst.is_binary()) {
      EXPECT_EQ(merged.max_welfare, ref.max_welfare);
      for (std::size_t o = 0; o < 3; ++o) EXPECT_EQ(merged.best_fair_welfare[o], ref.best_fair_welfare[o]);
    }
  }
}

TEST(BruteForce, Guard) {
  const auto inst = Instance::binary(12, std::vector<std::vector<int>>(9, std::vector<int>(12, 1)));
  EXPECT_THROW(brute_force(inst, Objective::num_envious), BudgetExceeded);
}

TEST(Dispatcher, SquareMethod) {
  const auto inst = Instance::binary(3, {{1, 1, 0}, {1, 0, 0}, {1, 0, 0}});
  EXPECT_EQ(solve(inst, Objective::num_envious).method, Method::square);
}

TEST(Dispatcher, TwoSidedIsExtremal) {
  const auto inst = load_instance(data_file("two_sided.json"));
  const auto s = brute_force_all(inst, {9, 10, true});
  for (auto o : all_objectives) {
    const auto r = solve(inst, o);
    EXPECT_EQ(r.method, Method::extremal);
    EXPECT_EQ(r.value, s.value(o));
  }
  EXPECT_EQ(s.value(Objective::num_envious), 3);
}

TEST(Dispatcher, RandomMatchesNaiveOracle) {
  Rng rng(37);
  for (int t = 0; t < 300; ++t) {
    const auto inst = random_binary(rng, 6, 8);
    const auto ref = naive_summary(inst);
    for (auto o : all_objectives) {
      const auto r = solve(inst, o);
      EXPECT_EQ(r.value, ref.get(o));
      EXPECT_EQ(envy_report(inst, r.allocation).value(o), r.value);
    }
  }
}

TEST(Dispatcher, RankingsFallBackToEnumeration) {
  Rng rng(38);
  for (int t = 0; t < 50; ++t) {
    const auto inst = random_strict(rng, 4, 6);
    const auto ref = naive_summary(inst);
    for (auto o : all_objectives) EXPECT_EQ(solve(inst, o).value, ref.get(o));
  }
}

TEST(Dispatcher, IlpBranchMatchesNaiveOracle) {
  Rng rng(37);
  SolveOptions opt;
  opt.fpt_subset_limit = 0;
  int ilp = 0;
  for (int t = 0; t < 150; ++t) {
    const auto inst = random_binary(rng, 5, 7);
    const auto ref = naive_summary(inst);
    for (auto o : all_objectives) {
      const auto r = solve(inst, o, opt);
      EXPECT_EQ(r.value, ref.get(o));
      EXPECT_EQ(envy_report(inst, r.allocation).value(o), r.value);
      ilp += r.method == Method::ilp;
    }
  }
  EXPECT_GT(ilp, 20);
}
