#include <gtest/gtest.h>

#include <set>

#include "envyalloc/experiment.hpp"
#include "envyalloc/io.hpp"

using namespace envyalloc;

TEST(Generate, SingleType) {
  const auto inst = generate_instance({5, 7, 1, ProfileKind::binary}, 3);
  for (std::size_t a = 1; a < 5; ++a) EXPECT_EQ(inst.valued_set(a), inst.valued_set(0));
  EXPECT_FALSE(inst.valued_set(0).empty());
}

TEST(Generate, AllDistinct) {
  const auto inst = generate_instance({6, 6, 6, ProfileKind::binary}, 4);
  std::set<std::vector<std::size_t>> rows;
  for (std::size_t a = 0; a < 6; ++a) rows.insert(inst.valued_set(a));
  EXPECT_EQ(rows.size(), 6u);
}

TEST(Generate, RoundRobinTypes) {
  const auto inst = generate_instance({7, 8, 3, ProfileKind::binary}, 5);
  for (std::size_t a = 3; a < 7; ++a) EXPECT_EQ(inst.valued_set(a), inst.valued_set(a % 3));
}

TEST(Generate, Deterministic) {
  for (auto kind : {ProfileKind::binary, ProfileKind::strict, ProfileKind::weak}) {
    const auto a = instance_to_json(generate_instance({5, 6, 3, kind}, 99)).dump();
    const auto b = instance_to_json(generate_instance({5, 6, 3, kind}, 99)).dump();
    EXPECT_EQ(a, b);
  }
  EXPECT_NE(instance_to_json(generate_instance({5, 6, 3, ProfileKind::binary}, 1)).dump(),
            instance_to_json(generate_instance({5, 6, 3, ProfileKind::binary}, 2)).dump());
}

TEST(Generate, Errors) {
  EXPECT_THROW(generate_instance({3, 2, 1, ProfileKind::binary}, 1), std::invalid_argument);
  EXPECT_THROW(generate_instance({4, 4, 0, ProfileKind::binary}, 1), std::invalid_argument);
  EXPECT_THROW(generate_instance({4, 4, 5, ProfileKind::binary}, 1), std::invalid_argument);
  EXPECT_NO_THROW(generate_instance({4, 4, 4, ProfileKind::binary}, 1));
}

TEST(Generate, TooManyTypesForTinyM) {
  EXPECT_THROW(generate_instance({4, 2, 4, ProfileKind::binary}, 1), std::invalid_argument);
  EXPECT_THROW(generate_instance({3, 2, 3, ProfileKind::strict}, 1), std::invalid_argument);
  EXPECT_NO_THROW(generate_instance({3, 3, 3, ProfileKind::strict}, 1));
}

TEST(Experiment, EmptyGridIsHeaderOnly) {
  EXPECT_EQ(to_csv(run_experiment({}, {})), experiment_csv_header() + "\n");
}

TEST(Experiment, RowsOrderedAndConsistent) {
  ExperimentOptions opt;
  opt.trials = 3;
  const auto rows = run_experiment({{5, 6, 2}, {4, 4, 4}}, opt);
  ASSERT_EQ(rows.size(), 2u * 3u * 3u);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].trial, (k / 3) % 3);
    EXPECT_EQ(rows[k].objective, all_objectives[k % 3]);
    EXPECT_EQ(rows[k].n, k < 9 ? 5u : 4u);
  }
  const auto inst = generate_instance({5, 6, 2, ProfileKind::binary}, opt.base_seed + 1);
  EXPECT_EQ(rows[3].kappa_num, solve(inst, Objective::num_envious).value);
}

TEST(Experiment, DeterministicAcrossThreadCounts) {
  ExperimentOptions one, many;
  one.trials = many.trials = 6;
  one.base_seed = many.base_seed = 17;
  many.threads = 4;
  const std::vector<ExperimentConfig> grid = {{6, 6, 3}, {6, 8, 2}, {5, 7, 5}};
  EXPECT_EQ(to_csv(run_experiment(grid, one), false), to_csv(run_experiment(grid, many), false));
}

TEST(Experiment, Summary) {
  ExperimentOptions opt;
  opt.trials = 4;
  const auto rows = run_experiment({{4, 4, 1}}, opt);
  const auto s = summarize(rows);
  ASSERT_EQ(s.size(), 3u);
  double kappa_num = 0;
  for (const auto& r : rows)
    if (r.objective == Objective::num_envious) kappa_num += r.kappa_num;
  EXPECT_DOUBLE_EQ(s[0].mean_value, kappa_num / 4);
  EXPECT_EQ(s[1].objective, Objective::max_envy);
}
