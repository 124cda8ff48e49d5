#include "resfront/oracle.hpp"

#include <cstdlib>
#include <set>

#include <gtest/gtest.h>

#include "resfront/error.hpp"
#include "resfront/generator.hpp"
#include "test_support.hpp"

namespace resfront {
namespace {

using testing::brute_frontier;
using testing::make_instance;

// Category-level assignments counted patient by patient.
long long count_assignments(const Instance& inst) {
  std::vector<int> left;
  for (const auto& c : inst.categories) left.push_back(c.quota);
  std::function<long long(int)> rec = [&](int p) -> long long {
    if (p == inst.num_patients()) return 1;
    long long total = rec(p + 1);
    for (int c = 0; c < inst.num_categories(); ++c) {
      const auto& e = inst.categories[c].eligible;
      if (left[c] == 0 || std::find(e.begin(), e.end(), p) == e.end()) continue;
      --left[c];
      total += rec(p + 1);
      ++left[c];
    }
    return total;
  };
  return rec(0);
}

TEST(EnumerationTest, EachCategoryAssignmentOnce) {
  const EnumerationBudget budget;
  for (const Instance& inst : testing::small_instances(150, 3, 6, 6)) {
    const SeatInstance si(inst);
    const auto all = all_matchings(si, budget);
    ASSERT_EQ(static_cast<long long>(all.size()), count_assignments(inst));
    ASSERT_EQ(all.front().size(), 0);
    std::set<std::vector<int>> seen;
    for (const auto& m : all) {
      check_matching(si, m);
      std::vector<int> cats;
      for (int p = 0; p < si.num_patients(); ++p) {
        cats.push_back(m.patient_matched(p) ? si.seat(m.seat_of(p)).category : -1);
      }
      ASSERT_TRUE(seen.insert(cats).second);
    }
  }
}

TEST(EnumerationTest, OracleFrontierMatchesBruteForce) {
  const EnumerationBudget budget;
  for (const Instance& inst : testing::small_instances(300, 41, 7, 7)) {
    const Frontier f = oracle_frontier(SeatInstance(inst), budget);
    ASSERT_EQ(f.match_points(), brute_frontier(inst));
    ASSERT_TRUE(f.points.front().is_kink);
    ASSERT_TRUE(f.points.back().is_kink);
  }
}

TEST(BudgetTest, RefusesLargeInstances) {
  EnumerationBudget budget;
  const SeatInstance big(make_instance(8, {{1, {0}, {}}}));
  EXPECT_THROW(check_budget(big, budget), BudgetError);
  budget.max_patients = 8;
  EXPECT_NO_THROW(check_budget(big, budget));

  budget.max_states = 3;
  const SeatInstance dense(make_instance(3, {{3, {0, 1, 2}, {}}}));
  EXPECT_THROW(all_matchings(dense, budget), BudgetError);
}

TEST(BudgetTest, EnvironmentOverride) {
  ::setenv("RESFRONT_ORACLE_BUDGET", "9,8,1000", 1);
  const EnumerationBudget b = default_budget();
  EXPECT_EQ(b.max_patients, 9);
  EXPECT_EQ(b.max_seats, 8);
  EXPECT_EQ(b.max_states, 1000);
  ::setenv("RESFRONT_ORACLE_BUDGET", "nonsense", 1);
  EXPECT_THROW(default_budget(), InputError);
  ::unsetenv("RESFRONT_ORACLE_BUDGET");
  EXPECT_EQ(default_budget().max_patients, EnumerationBudget{}.max_patients);
}

TEST(CycleEnumerationTest, ConflictHasOneCycle) {
  const SeatInstance si(gen_named("conflict").instance);
  Matching m(2, 2);
  m.assign(0, 1);
  const auto cycles = enumerate_applicable_cycles(si, m, EnumerationBudget{});
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0].loss, 1);
  EXPECT_EQ(oracle_min_cycle_loss(si, m, EnumerationBudget{}), 1);
}

TEST(LemmaTest, HoldOnNamedInstances) {
  for (const auto& name : named_instances()) {
    const SeatInstance si(gen_named(name).instance);
    EXPECT_TRUE(check_disjoint_cycles(si, EnumerationBudget{}).passed()) << name;
    EXPECT_TRUE(check_matched_preservation(si, EnumerationBudget{}).passed()) << name;
  }
}

TEST(LemmaTest, HoldOnRandomInstances) {
  for (const Instance& inst : testing::small_instances(150, 43, 6, 6)) {
    const SeatInstance si(inst);
    const LemmaReport d = check_disjoint_cycles(si, EnumerationBudget{});
    ASSERT_TRUE(d.passed()) << d.failures.front();
    const LemmaReport p = check_matched_preservation(si, EnumerationBudget{});
    ASSERT_TRUE(p.passed()) << p.failures.front();
  }
}

TEST(SampleTest, CapsAndIsDeterministic) {
  // Six interchangeable patients for three seats: many witnesses per point.
  const SeatInstance si(make_instance(6, {{3, {0, 1, 2, 3, 4, 5}, {}}}));
  EnumerationBudget budget;
  budget.witness_sample_cap = 4;
  const auto catalog = catalog_matchings(si, budget);
  bool sampled = false;
  const auto a = sample_witnesses(catalog, {3, 0}, budget, &sampled);
  EXPECT_TRUE(sampled);
  EXPECT_EQ(a.size(), 4u);
  EXPECT_EQ(a, sample_witnesses(catalog, {3, 0}, budget));
}

}  // namespace
}  // namespace resfront
