#pragma once

#include <optional>
#include <vector>

#include "resfront/core.hpp"
#include "resfront/rha.hpp"

namespace resfront {

// Directed bipartite graph attached to a matching: patient -> seat when the
// patient is eligible for a seat it does not hold; seat -> patient when the
// seat holds that patient, or when both are unmatched.
struct AssociatedGraph {
  std::vector<std::vector<int>> patient_out;  // seats reachable from each patient
  std::vector<std::vector<int>> seat_out;     // patients reachable from each seat

  bool has_patient_edge(int p, int s) const;
  bool has_seat_edge(int s, int p) const;
};

AssociatedGraph build_associated_graph(const SeatInstance& si, const Matching& m);

// Alternating cycle p_1 -> s_1 -> p_2 -> ... -> p_m -> s_m -> p_1.
// Applicable when p_1 and s_m are its only unmatched vertices.
struct Cycle {
  std::vector<int> patients;
  std::vector<int> seats;

  int length() const { return static_cast<int>(patients.size()); }
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

bool is_applicable(const SeatInstance& si, const Matching& m, const Cycle& c);

// Moves every p_k onto s_k. Throws InputError("cycle not applicable").
Matching apply_cycle(const SeatInstance& si, const Matching& m, const Cycle& c);

// b(m) - b(apply_cycle(m, c)).
int beneficiary_loss(const SeatInstance& si, const Matching& m, const Cycle& c);

struct MinimalCycle {
  Cycle cycle;
  int loss = 0;
};

// Applicable cycle of smallest beneficiary loss, found as a shortest
// alternating path from an unmatched patient to an unmatched seat under the
// edge cost [p in B of its current seat] - [p in B of the new seat]. Ties go
// to the earliest unmatched patient, then the earliest seat, then the
// shorter path. Returns nullopt when no applicable cycle exists. Throws
// DominatedInputError if the input admits a loss <= 0 or a rotation that
// raises b.
std::optional<MinimalCycle> find_minimal_cycle(const SeatInstance& si, const Matching& m);

struct WalkStep {
  MatchPoint point;
  Matching matching;
  int loss = 0;  // loss of the cycle that produced this step; 0 for the start
};

// Applies minimal cycles from `start` until none remains, or until
// `stop_at_e` is reached. Each step adds exactly one match; losses are
// checked to be weakly increasing.
std::vector<WalkStep> frontier_walk(const SeatInstance& si, const Matching& start,
                                    std::optional<int> stop_at_e = std::nullopt);

// Fills the witness of every frontier point from a walk started at the
// frontier's max-beneficiary witness. Throws ConsistencyError if the walk
// disagrees with the frontier's points.
void attach_walk_witnesses(const SeatInstance& si, Frontier& f);

}  // namespace resfront
