#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resfront/core.hpp"
#include "resfront/cycles.hpp"
#include "resfront/rha.hpp"

namespace resfront {

// Limits for exhaustive routines. Instances beyond them are refused.
struct EnumerationBudget {
  int max_patients = 7;
  int max_seats = 7;
  std::int64_t max_states = 10'000'000;
  // Matchings examined per frontier point by the lemma checkers before
  // switching to a seeded sample.
  int witness_sample_cap = 200;
};

// Defaults, overridden by RESFRONT_ORACLE_BUDGET="patients,seats,states" when set.
EnumerationBudget default_budget();

void check_budget(const SeatInstance& si, const EnumerationBudget& budget);

// Visits every eligible matching exactly once, the empty one first. Patients
// of a category fill its seats in increasing seat order, so seat
// relabelings inside a category are not repeated.
void enumerate_matchings(const SeatInstance& si, const EnumerationBudget& budget,
                         const std::function<void(const Matching&)>& visit);
std::vector<Matching> all_matchings(const SeatInstance& si, const EnumerationBudget& budget);

// All matchings grouped by their (e, b) point.
using MatchingCatalog = std::map<MatchPoint, std::vector<Matching>>;
MatchingCatalog catalog_matchings(const SeatInstance& si, const EnumerationBudget& budget);

// Non-dominated points of the catalog in increasing e, with kinks flagged and
// the first enumerated matching as witness.
Frontier oracle_frontier(const MatchingCatalog& catalog);
Frontier oracle_frontier(const SeatInstance& si, const EnumerationBudget& budget);

// Every simple applicable cycle of the associated graph, each listed once
// (starting at its unmatched patient), with its loss.
std::vector<MinimalCycle> enumerate_applicable_cycles(const SeatInstance& si, const Matching& m,
                                                      const EnumerationBudget& budget);

std::optional<int> oracle_min_cycle_loss(const SeatInstance& si, const Matching& m,
                                         const EnumerationBudget& budget);

struct LemmaReport {
  bool sampled = false;  // some frontier point had more witnesses than the cap
  int pairs_checked = 0;
  int witnesses_checked = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

// For each frontier pair f2 -> f1 (e1 = e2 + k) and each witness m2 at f2,
// searches for k vertex-disjoint applicable cycles of m2 whose joint
// application lands on f1.
LemmaReport check_disjoint_cycles(const SeatInstance& si, const EnumerationBudget& budget);

// For each frontier pair f2 -> f1 with e1 > e2 and each matching m2 at f2,
// checks that some matching at f1 keeps every patient matched in m2.
LemmaReport check_matched_preservation(const SeatInstance& si, const EnumerationBudget& budget);

// Matchings at `pt`, capped at budget.witness_sample_cap by a seeded sample.
std::vector<Matching> sample_witnesses(const MatchingCatalog& catalog, MatchPoint pt,
                                       const EnumerationBudget& budget, bool* sampled = nullptr);

}  // namespace resfront
