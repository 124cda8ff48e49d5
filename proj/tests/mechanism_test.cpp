#include "resfront/mechanism.hpp"

#include <gtest/gtest.h>

#include "resfront/cycles.hpp"
#include "resfront/error.hpp"
#include "resfront/generator.hpp"
#include "test_support.hpp"

namespace resfront {
namespace {

using testing::brute_frontier;
using testing::make_instance;
using testing::reachable_points;

const std::vector<Rational> kTargets = {{0, 1}, {1, 5}, {1, 4}, {1, 3}, {1, 2}, {2, 3}, {7, 10}, {1, 1}};

// Reference selection computed from the brute-force frontier.
MatchPoint expected_selection(const Instance& inst, const Rational& beta) {
  const auto f = brute_frontier(inst);
  if (beta >= beneficiary_share(f.front())) return f.front();
  MatchPoint best = f.front();
  for (const auto& p : f) {
    if (beneficiary_share(p) >= beta) best = p;
  }
  return best;
}

TEST(SelectionTest, NamedValues) {
  const auto bt = gen_named("beta-threshold");
  const Selection s1 = select_approx_on_frontier({bt.instance, *bt.beta_star});
  EXPECT_EQ(s1.point, (MatchPoint{2, 1}));
  EXPECT_EQ(beneficiary_share(s1.point), Rational(1, 2));

  const auto pi = gen_named("path-independence");
  const Selection s2 = select_approx_on_frontier({pi.instance, *pi.beta_star});
  EXPECT_EQ(s2.point, (MatchPoint{5, 1}));
  EXPECT_EQ(beneficiary_share(s2.point), Rational(1, 5));
}

TEST(SelectionTest, NoEligiblePairIsInputError) {
  EXPECT_THROW(select_approx_on_frontier({make_instance(2, {{1, {}, {}}}), Rational(1, 2)}),
               InputError);
}

TEST(SelectionTest, MatchesReferenceOnRandomInstances) {
  for (const Instance& inst : testing::small_instances(150, 53, 7, 7)) {
    if (!SeatInstance(inst).has_eligible_pair()) continue;
    for (const Rational& beta : kTargets) {
      const Selection sel = select_approx_on_frontier({inst, beta});
      ASSERT_EQ(sel.point, expected_selection(inst, beta));
      ASSERT_EQ(match_point(SeatInstance(inst), sel.matching), sel.point);
    }
  }
}

TEST(ExactShareTest, SelectionDominatesExactShareMatchings) {
  int checked = 0;
  for (const Instance& inst : testing::small_instances(150, 59, 6, 6)) {
    if (!SeatInstance(inst).has_eligible_pair()) continue;
    for (const Rational& beta : kTargets) {
      const MatchPoint sel = select_approx_on_frontier({inst, beta}).point;
      if (beneficiary_share(sel) == beta) {
        EXPECT_THROW(dominates_exact_share_matchings({inst, beta}, sel, EnumerationBudget{}),
                     InputError);
        continue;
      }
      const auto rep = dominates_exact_share_matchings({inst, beta}, sel, EnumerationBudget{});
      ASSERT_TRUE(rep.verified());
      for (const auto& p : reachable_points(inst)) {
        if (p.e > 0 && beneficiary_share(p) == beta) ASSERT_TRUE(dominates(sel, p));
      }
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(PriorityTest, SynthesizedOrderRespectsTiers) {
  const Instance inst = gen_named("path-independence").instance;
  for (std::optional<std::uint64_t> seed : {std::optional<std::uint64_t>{}, std::optional<std::uint64_t>{9}}) {
    const PriorityOrder order = synthesize_priority(inst, seed);
    EXPECT_NO_THROW(validate_priority(inst, order));
  }
  // c1: beneficiary p1 first, then eligible p2, then the rest in input order.
  EXPECT_EQ(priority_list(synthesize_priority(inst), 0), (std::vector<int>{0, 1, 2, 3, 4, 5}));
}

TEST(PriorityTest, RejectsTierInversion) {
  const Instance inst = gen_named("conflict").instance;
  // c2 lists the eligible non-beneficiary p2 above the beneficiary p1.
  EXPECT_THROW(validate_priority(inst, priority_from_lists({{0, 1}, {1, 0}})), InputError);
  EXPECT_THROW(validate_priority(inst, priority_from_lists({{0, 1}})), InputError);
  EXPECT_THROW(priority_from_lists({{0, 0}}), InputError);
}

TEST(PriorityTest, RepairSwapsInHigherPriorityPatient) {
  // One seat in c1, p1 and p2 both eligible non-beneficiaries; p1 ranks first.
  const Instance inst = make_instance(2, {{1, {0, 1}, {}}});
  const SeatInstance si(inst);
  const ProblemWithOrder pwo{{inst, Rational(0)}, synthesize_priority(inst)};
  Matching m(2, 1);
  m.assign(1, 0);
  const auto before = respects_priority(pwo, si, m);
  ASSERT_EQ(before.size(), 1u);
  EXPECT_EQ(before[0], (PriorityViolation{0, 1, 0}));
  const Matching fixed = repair_priority(pwo, si, m);
  EXPECT_EQ(fixed.seat_of(0), 0);
  EXPECT_TRUE(respects_priority(pwo, si, fixed).empty());
  EXPECT_LT(rank_sum(pwo, si, fixed), rank_sum(pwo, si, m));
}

TEST(PriorityTest, RepairOnRandomFrontierMatchings) {
  int index = 0;
  for (const Instance& inst : testing::small_instances(200, 61, 7, 7)) {
    const SeatInstance si(inst);
    Frontier f = compute_frontier(si);
    attach_walk_witnesses(si, f);
    const ProblemWithOrder pwo{{inst, Rational(1, 2)}, synthesize_priority(inst, derive_seed(61, index++))};
    for (const auto& fp : f.points) {
      const Matching fixed = repair_priority(pwo, si, *fp.witness);
      ASSERT_TRUE(respects_priority(pwo, si, fixed).empty());
      ASSERT_EQ(match_point(si, fixed), fp.point);
      ASSERT_LE(rank_sum(pwo, si, fixed), rank_sum(pwo, si, *fp.witness));
    }
  }
}

TEST(ChoiceTest, MaskRoundTrip) {
  EXPECT_EQ(mask_to_patients(0b10110), (std::vector<int>{1, 2, 4}));
  EXPECT_EQ(patients_to_mask({1, 2, 4}), PatientMask{0b10110});
}

TEST(ChoiceTest, PathIndependenceInstanceChoices) {
  const auto doc = gen_named("path-independence");
  const Problem pr{doc.instance, *doc.beta_star};
  const PatientMask all = 0b111111;
  const PatientMask x = 0b011111;  // p1..p5
  // C(P) matches five patients at (5,1) and includes p6.
  const PatientMask cp = induce_choice_mask(pr, all);
  EXPECT_EQ(__builtin_popcountll(cp), 5);
  EXPECT_TRUE(cp & (PatientMask{1} << 5));
  EXPECT_EQ(cp & x, PatientMask{0b010111});  // {p1,p2,p3,p5}
  // C(X) sits at (4,1) and never holds all of p1,p2,p3,p5.
  for (PatientMask c : admissible_choices(pr, x, EnumerationBudget{})) {
    EXPECT_EQ(__builtin_popcountll(c), 4);
    EXPECT_NE(c & 0b010111, PatientMask{0b010111});
  }
}

TEST(AuditTest, SubstitutabilityViolationOnPathIndependence) {
  const auto doc = gen_named("path-independence");
  const Problem pr{doc.instance, *doc.beta_star};
  bool found = false;
  for (const auto& v : audit_substitutability(pr)) {
    if (v.x == 0b111111 && v.x_prime == 0b011111) {
      found = true;
      EXPECT_EQ(v.choice_of_x & v.x_prime, PatientMask{0b010111});
    }
  }
  EXPECT_TRUE(found);
  const TieBreakAudit all = audit_substitutability_all_tiebreaks(pr, 0b111111, 0b011111, EnumerationBudget{});
  EXPECT_TRUE(all.violated_for_all());
  EXPECT_GT(all.combinations, 0);
}

TEST(AuditTest, PathIndependenceViolationOnPathIndependence) {
  const auto doc = gen_named("path-independence");
  EXPECT_FALSE(audit_path_independence({doc.instance, *doc.beta_star}).empty());
}

TEST(AuditTest, SinglePatientHasNoViolations) {
  const Problem pr{make_instance(1, {{1, {0}, {0}}}), Rational(1, 2)};
  EXPECT_TRUE(audit_path_independence(pr).empty());
  EXPECT_TRUE(audit_substitutability(pr).empty());
}

TEST(AuditTest, RespectsCap) {
  const Problem pr{gen_named("path-independence").instance, Rational(1, 5)};
  EXPECT_THROW(audit_substitutability(pr, 5), BudgetError);
  EXPECT_THROW(audit_path_independence(pr, 5), BudgetError);
}

}  // namespace
}  // namespace resfront
