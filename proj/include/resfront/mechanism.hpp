#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "resfront/core.hpp"
#include "resfront/oracle.hpp"
#include "resfront/rha.hpp"

namespace resfront {

// Per-category strict order over all patients. rank[c][p] is 1 for the
// highest priority. Within each category, beneficiaries rank above other
// eligible patients, who rank above ineligible ones.
struct PriorityOrder {
  std::vector<std::vector<int>> rank;

  friend bool operator==(const PriorityOrder&, const PriorityOrder&) = default;
};

// Builds ranks from per-category patient lists (highest priority first).
PriorityOrder priority_from_lists(const std::vector<std::vector<int>>& orders);
// Per-category patient list, highest priority first.
std::vector<int> priority_list(const PriorityOrder& order, int category);

// Throws InputError unless `order` is a bijection per category with the tier structure.
void validate_priority(const Instance& inst, const PriorityOrder& order);

// Admissible order built from tiers (beneficiary, eligible, ineligible).
// Within a tier patients keep input order, or are shuffled when a seed is given.
PriorityOrder synthesize_priority(const Instance& inst,
                                  std::optional<std::uint64_t> shuffle_seed = std::nullopt);

struct ProblemWithOrder {
  Problem problem;
  PriorityOrder priority;
};

const ProblemWithOrder& validate_problem_with_order(const ProblemWithOrder& pwo);

// b/e >= beta_star, exactly. Throws InputError for the empty point.
bool respects_share(MatchPoint pt, const Rational& beta_star);

struct Selection {
  Matching matching;
  MatchPoint point;
};

// Frontier matching that approximately respects the share guarantee: the
// largest-e frontier point whose share is at least beta_star when
// beta_star < share(max-beneficiary end), otherwise the max-beneficiary end.
// The witness is the one reached by the minimal-cycle walk. Throws
// InputError("no non-empty matching exists") on instances without an
// eligible pair.
Selection select_approx_on_frontier(const Problem& pr);
// Same, reusing an already computed frontier of pr.instance.
Selection select_approx_on_frontier(const Problem& pr, const SeatInstance& si, const Frontier& f);
// Only the selected frontier point (no witness).
MatchPoint selected_point(const Frontier& f, const Rational& beta_star);

struct ExactShareReport {
  int exact_share_matchings = 0;  // matchings whose share equals beta_star
  std::vector<MatchPoint> undominated;  // those not dominated by the selection

  bool verified() const { return undominated.empty(); }
};

// Enumerates every matching with share exactly beta_star and lists the ones
// the selected point fails to dominate. Requires share(selected) != beta_star.
ExactShareReport dominates_exact_share_matchings(const Problem& pr, MatchPoint selected,
                                                 const EnumerationBudget& budget);

int rank_sum(const ProblemWithOrder& pwo, const SeatInstance& si, const Matching& m);

struct PriorityViolation {
  int category;
  int assigned;
  int unassigned;  // outranks `assigned` in `category`

  friend bool operator==(const PriorityViolation&, const PriorityViolation&) = default;
};

std::vector<PriorityViolation> respects_priority(const ProblemWithOrder& pwo, const SeatInstance& si,
                                                 const Matching& m);

// Swaps assigned patients for higher-priority unassigned ones until no
// violation remains (lowest category first, highest-priority newcomer first,
// lowest-priority incumbent out). Throws DominatedInputError if a swap would
// change the (e, b) point.
Matching repair_priority(const ProblemWithOrder& pwo, const SeatInstance& si, const Matching& m);

using PatientMask = std::uint64_t;

struct ChoiceRecord {
  std::vector<int> subset;
  std::vector<int> chosen;
};

// Patients of X matched when the mechanism runs on the problem restricted to X.
ChoiceRecord induce_choice(const Problem& pr, const std::vector<int>& subset);
PatientMask induce_choice_mask(const Problem& pr, PatientMask subset);

// Every choice set C(X) some admissible tie-break can produce: the matched
// patients of each matching at the selected point of the restricted problem.
std::vector<PatientMask> admissible_choices(const Problem& pr, PatientMask subset,
                                            const EnumerationBudget& budget);

std::vector<int> mask_to_patients(PatientMask mask);
PatientMask patients_to_mask(const std::vector<int>& patients);

inline constexpr int kDefaultAuditCap = 12;

struct PathIndependenceViolation {
  PatientMask x;
  PatientMask x_prime;
  PatientMask choice_of_union;       // C(X u X')
  PatientMask choice_of_sequential;  // C(C(X) u X')
};

struct SubstitutabilityViolation {
  PatientMask x;        // superset
  PatientMask x_prime;  // subset of x
  PatientMask choice_of_x;
  PatientMask choice_of_x_prime;
};

// Exhaustive scans over all subset pairs. Throw BudgetError when the problem
// has more than max_patients patients.
std::vector<PathIndependenceViolation> audit_path_independence(const Problem& pr,
                                                               int max_patients = kDefaultAuditCap);
std::vector<SubstitutabilityViolation> audit_substitutability(const Problem& pr,
                                                              int max_patients = kDefaultAuditCap);

struct TieBreakAudit {
  int combinations = 0;  // (C(X), C(X')) pairs examined
  int violating = 0;     // pairs with C(X) n X' not contained in C(X')

  bool violated_for_all() const { return combinations > 0 && violating == combinations; }
};

// Substitutability for one pair X' within X, over every admissible choice of
// C(X) and C(X').
TieBreakAudit audit_substitutability_all_tiebreaks(const Problem& pr, PatientMask x,
                                                   PatientMask x_prime,
                                                   const EnumerationBudget& budget);

}  // namespace resfront
