#include <gtest/gtest.h>

#include "envyalloc/special.hpp"
#include "support/generators.hpp"
#include "support/naive_oracle.hpp"

using namespace envyalloc;
using namespace envyalloc::testing;

TEST(SingleMinded, ThreeAgentsOneHouse) {
  const auto inst = Instance::binary(3, {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}});
  EXPECT_EQ(solve_single_minded(inst, Objective::num_envious).value, 2);
  EXPECT_EQ(solve_single_minded(inst, Objective::total_envy).value, 2);
  EXPECT_EQ(solve_single_minded(inst, Objective::max_envy).value, 1);
}

TEST(SingleMinded, DistinctHouses) {
  const auto inst = Instance::binary(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  for (auto o : all_objectives) EXPECT_EQ(solve_single_minded(inst, o).value, 0);
}

TEST(SingleMinded, RejectsOtherProfiles) {
  EXPECT_THROW(solve_single_minded(Instance::binary(2, {{1, 1}}), Objective::num_envious), std::invalid_argument);
}

TEST(SingleMinded, RandomMatchesNaiveOracle) {
  Rng rng(51);
  for (int t = 0; t < 300; ++t) {
    const auto inst = random_single_minded(rng, 6, 8);
    const auto ref = naive_summary(inst);
    EXPECT_EQ(ref.get(Objective::num_envious), ref.get(Objective::total_envy));
    EXPECT_LE(ref.get(Objective::max_envy), 1);
    for (auto o : all_objectives) {
      const auto r = solve_single_minded(inst, o);
      EXPECT_EQ(r.value, ref.get(o));
      EXPECT_EQ(envy_report(inst, r.allocation).value(o), r.value);
    }
  }
}

TEST(DegreeTwo, PathWithDummy) {
  const auto inst = Instance::binary(2, {{1, 0}, {1, 0}});
  EXPECT_EQ(solve_house_degree_two_oha(inst).value, 1);
  const auto wider = Instance::binary(3, {{1, 0, 0}, {1, 0, 0}});
  EXPECT_EQ(solve_house_degree_two_oha(wider).value, 0);
}

TEST(DegreeTwo, EvenCycle) {
  const auto inst = Instance::binary(2, {{1, 1}, {1, 1}});
  EXPECT_EQ(solve_house_degree_two_oha(inst).value, 0);
}

TEST(DegreeTwo, CycleRuleRemovesCycle) {
  // a0-h0-a1-h1-a0 is a cycle, a2 hangs off h2 with a3.
  const auto inst = Instance::binary(5, {{1, 1, 0, 0, 0}, {1, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 1, 1, 0}});
  Reducer red(inst);
  ASSERT_TRUE(apply_cycle_rule(red));
  EXPECT_EQ(red.trace().steps.back().rule, KernelRule::cycle);
  EXPECT_EQ(red.current().n(), 2u);
}

TEST(DegreeTwo, DegreeOneRule) {
  // h0 is valued only by a0, which values nothing else.
  const auto inst = Instance::binary(3, {{1, 0, 0}, {0, 1, 0}, {0, 1, 0}});
  Reducer red(inst);
  ASSERT_TRUE(apply_degree_one_rule(red));
  EXPECT_EQ(red.trace().steps.back().rule, KernelRule::degree_one);
  EXPECT_EQ(red.trace().steps.back().pairs.front(), (std::pair<std::size_t, std::size_t>{0, 0}));
}

TEST(DegreeTwo, RandomMatchesNaiveOracle) {
  Rng rng(52);
  int not_fallback = 0;
  for (int t = 0; t < 300; ++t) {
    const auto inst = random_house_degree_two(rng, 7, 8);
    const auto ref = naive_summary(inst);
    const auto r = solve_house_degree_two_oha(inst);
    EXPECT_EQ(r.value, ref.get(Objective::num_envious)) << "trial " << t;
    EXPECT_EQ(envy_report(inst, r.allocation).num_envious, r.value);
    not_fallback += r.method == Method::degree2;
  }
  EXPECT_EQ(not_fallback, 300);
}

TEST(DegreeTwo, RejectsHighDegree) {
  EXPECT_THROW(solve_house_degree_two_oha(Instance::binary(3, {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}})), std::invalid_argument);
}
