#include <gtest/gtest.h>

#include <map>

#include "envyalloc/ilp.hpp"
#include "support/generators.hpp"
#include "support/lp_reader.hpp"
#include "support/naive_oracle.hpp"

using namespace envyalloc;
using namespace envyalloc::testing;

namespace {

Instance three_identical() { return Instance::binary(3, {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}}); }

Instance two_sided_instance() {
  Matrix x(9, std::vector<int>(10, 0));
  for (std::size_t a = 0; a < 5; ++a) x[a][0] = 1;
  for (std::size_t a = 1; a < 5; ++a) x[a][1] = 1;
  x[3][2] = x[4][2] = 1;
  x[5][7] = x[5][8] = x[5][9] = 1;
  x[6][7] = x[6][8] = x[6][9] = 1;
  x[7][8] = x[7][9] = 1;
  x[8][9] = 1;
  return Instance::binary(10, x);
}

std::int64_t lp_optimum(const IlpModel& model, std::int64_t cap) {
  const auto v = brute_force_lp(parse_lp(export_lp(model)), cap);
  if (!v) throw std::runtime_error("exported model infeasible");
  return *v;
}

}  // namespace

TEST(TypeProfile, Counts) {
  EXPECT_EQ(type_profile(three_identical()).num_agent_types(), 1u);
  EXPECT_EQ(type_profile(Instance::binary(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}})).num_agent_types(), 3u);
  const auto p = type_profile(two_sided_instance());
  EXPECT_EQ(p.num_agent_types(), 6u);
  EXPECT_EQ(p.num_house_types(), 7u);
}

TEST(TypeProfile, SortedByMask) {
  // Rows as masks (entry 0 lowest bit): a0 = 0b10, a1 = 0b01.
  const auto p = type_profile(Instance::binary(2, {{0, 1}, {1, 0}}));
  EXPECT_EQ(p.agent_type, (std::vector<std::size_t>{1, 0}));
}

TEST(SolveTypes, ThreeIdenticalAgents) {
  const auto p = type_profile(three_identical());
  EXPECT_EQ(solve_types(p, Objective::num_envious).value, 2);
  EXPECT_EQ(solve_types(p, Objective::max_envy).value, 1);
  EXPECT_EQ(solve_types(p, Objective::total_envy).value, 2);
  const auto r = solve_types(p, Objective::num_envious);
  EXPECT_EQ(envy_report(three_identical(), realize_allocation(p, r.x)).num_envious, 2);
}

TEST(SolveTypes, EnvyFreeProfile) {
  const auto inst = Instance::binary(3, {{1, 0, 0}, {0, 1, 0}});
  for (auto o : all_objectives) EXPECT_EQ(solve_types(type_profile(inst), o).value, 0);
}

TEST(SolveTypes, Budget) {
  Rng rng(61);
  const auto inst = Instance::binary(8, random_matrix(rng, 6, 8, 50));
  EXPECT_THROW(solve_types(type_profile(inst), Objective::total_envy, {3}), BudgetExceeded);
}

TEST(SolveTypes, RandomMatchesNaiveOracleAndCellsAreUniform) {
  Rng rng(62);
  for (int t = 0; t < 200; ++t) {
    const auto inst = t % 2 ? random_typed(rng, 6, 8) : random_binary(rng, 5, 7);
    const auto p = type_profile(inst);
    const auto ref = naive_summary(inst);
    for (auto o : all_objectives) {
      const auto r = solve_types(p, o);
      ASSERT_EQ(r.value, ref.get(o));
      const auto alloc = realize_allocation(p, r.x);
      const auto rep = envy_report(inst, alloc);
      EXPECT_EQ(rep.value(o), r.value);
      EXPECT_EQ(type_allocation_of(p, alloc), r.x);
      std::map<std::pair<std::size_t, std::size_t>, int> cell_envy;
      for (std::size_t a = 0; a < inst.n(); ++a) {
        const auto key = std::make_pair(p.agent_type[a], p.house_type[alloc[a]]);
        const auto [it, fresh] = cell_envy.emplace(key, rep.per_agent[a]);
        EXPECT_TRUE(fresh || it->second == rep.per_agent[a]);
      }
    }
  }
}

TEST(Models, VariableCounts) {
  const auto p = type_profile(two_sided_instance());
  const std::size_t cells = p.num_agent_types() * p.num_house_types();
  EXPECT_EQ(build_p1(p).variables.size(), 4 * cells);
  EXPECT_EQ(build_p2(p).variables.size(), 4 * cells + 1);
  EXPECT_EQ(build_uha_quadratic(p).variables.size(), 4 * cells);
}

TEST(Models, SolutionsOfEveryAllocationAreFeasibleAndExact) {
  Rng rng(63);
  for (int t = 0; t < 60; ++t) {
    const auto inst = random_typed(rng, 4, 5);
    const auto p = type_profile(inst);
    const IlpModel models[] = {build_p1(p), build_p2(p), build_uha_quadratic(p)};
    const ModelKind kinds[] = {ModelKind::p1, ModelKind::p2, ModelKind::uha_quadratic};
    naive_enumerate(inst, [&](const std::vector<std::size_t>& hs) {
      const auto x = type_allocation_of(p, Allocation(hs));
      for (std::size_t k = 0; k < 3; ++k) {
        const auto val = model_solution(p, kinds[k], x);
        const auto bad = models[k].first_violation(val);
        ASSERT_FALSE(bad) << *bad;
        EXPECT_EQ(models[k].objective_value(val), type_objective(p, x, all_objectives[k]));
      }
    });
  }
}

TEST(Models, ExportedOptimaForThreeIdenticalAgents) {
  const auto p = type_profile(three_identical());
  EXPECT_EQ(lp_optimum(build_p1(p), 3), 2);
  EXPECT_EQ(lp_optimum(build_p2(p), 3), 1);
}

TEST(Models, SingleValuedCellHasZeroOptimum) {
  const auto p = type_profile(Instance::binary(1, {{1}}));
  EXPECT_EQ(lp_optimum(build_p1(p), 1), 0);
}

TEST(Models, ExportedOptimaMatchOracleOnTinyProfiles) {
  Rng rng(64);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 25; ++t) {
    const auto inst = random_typed(rng, 4, 4);
    const auto p = type_profile(inst);
    if (p.num_agent_types() * p.num_house_types() > 2) continue;
    ++checked;
    const auto ref = naive_summary(inst);
    const auto cap = static_cast<std::int64_t>(inst.n());
    EXPECT_EQ(lp_optimum(build_p1(p), cap), ref.get(Objective::num_envious));
    EXPECT_EQ(lp_optimum(build_p2(p), cap), ref.get(Objective::max_envy));
  }
  EXPECT_GE(checked, 10);
}

TEST(Export, EmptyModel) {
  EXPECT_EQ(export_lp(IlpModel{}), "Minimize\n obj:\nSubject To\nBounds\nGenerals\nBinaries\nEnd\n");
}

TEST(Export, SectionsAndNames) {
  const auto text = export_lp(build_p2(type_profile(three_identical())));
  for (const char* s : {"Minimize\n obj: w\n", "Subject To\n", " C1_0: x_0_0 + x_0_1 = 3\n", "Bounds\n", "Generals\n",
                        "Binaries\n", " dp_0_0\n", "End\n"})
    EXPECT_NE(text.find(s), std::string::npos) << s;
  const auto q = export_lp(build_uha_quadratic(type_profile(three_identical())));
  EXPECT_NE(q.find("obj: [ 2 x_0_0 * z_0_0 + 2 x_0_1 * z_0_1 ] / 2"), std::string::npos);
}

TEST(SolveIlp, RealizesOnConcreteInstance) {
  const auto r = solve_ilp(three_identical(), Objective::num_envious);
  EXPECT_EQ(r.method, Method::ilp);
  EXPECT_EQ(r.value, 2);
}
