#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resfront/core.hpp"

namespace resfront {

struct FrontierPoint {
  MatchPoint point;
  bool is_kink = false;  // slope change or endpoint
  std::optional<Matching> witness;
};

// Non-dominated (e, b) points ordered by strictly increasing e. The first
// point is the max-beneficiary end, the last the max-eligible end.
struct Frontier {
  std::vector<FrontierPoint> points;

  std::vector<MatchPoint> match_points() const;
  const FrontierPoint& min_eligible() const { return points.front(); }
  const FrontierPoint& max_eligible() const { return points.back(); }
};

// Integer edge weights for sweep iteration k: the rational pair
// (1, 1 + 1/k + 1/n^2) scaled by k*n^2.
struct SweepWeights {
  std::int64_t eligible;
  std::int64_t beneficiary;
};
SweepWeights sweep_weights(int k, int n);

struct IterationResult {
  MatchPoint point;
  Matching witness;
};

// One sweep iteration: maximum-weight matching under the weights for k,
// with 1 <= k <= n = max(|P|, sum of quotas).
IterationResult rha_iteration(const SeatInstance& si, int k);

// Full frontier: sweep k = 1..n collecting distinct kinks, then fill every
// unit step of e between consecutive kinks by linear interpolation. Kinks
// carry witnesses; interpolated points do not (see attach_walk_witnesses).
// `jobs` > 1 runs the sweep iterations on several threads.
Frontier compute_frontier(const SeatInstance& si, int jobs = 1);

// Witnesses of the two frontier ends, from the first and last sweep iterations.
std::pair<Matching, Matching> frontier_endpoints(const SeatInstance& si);

// (e_max - e_min) / e_max; throws InputError when e_max = 0.
Rational half_bound_ratio(const Frontier& f);

// Lists every violation of the frontier shape: strictly increasing e in unit
// steps, strictly decreasing b, non-increasing losses as e grows backwards
// (concavity), and pairwise non-domination. Empty when the shape is valid.
std::vector<std::string> frontier_shape_violations(const std::vector<MatchPoint>& points);

}  // namespace resfront
