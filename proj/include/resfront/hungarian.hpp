#pragma once

#include <cstdint>
#include <vector>

#include "resfront/core.hpp"

namespace resfront {

// Bipartite graph with non-negative integer edge weights; a negative entry
// marks a forbidden pair.
class WeightedBipartite {
 public:
  static constexpr std::int64_t kForbidden = -1;

  WeightedBipartite(int left, int right);

  int left() const { return left_; }
  int right() const { return right_; }

  void set_weight(int l, int r, std::int64_t w);
  std::int64_t weight(int l, int r) const { return weight_[static_cast<std::size_t>(l) * right_ + r]; }
  bool has_edge(int l, int r) const { return weight(l, r) >= 0; }

 private:
  int left_;
  int right_;
  std::vector<std::int64_t> weight_;
};

struct WeightedMatching {
  Matching matching;  // left = patients, right = seats
  std::int64_t total_weight = 0;
};

// Exact maximum-weight matching. The graph is padded to a square matrix with
// zero-weight dummy entries and solved with the potential-based O(n^3)
// assignment algorithm; padded and forbidden assignments are dropped from the
// result. Deterministic for a fixed input.
WeightedMatching max_weight_matching(const WeightedBipartite& g);

}  // namespace resfront
