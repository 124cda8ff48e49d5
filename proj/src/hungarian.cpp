#include "resfront/hungarian.hpp"

#include <algorithm>
#include <limits>

#include "resfront/error.hpp"

namespace resfront {

WeightedBipartite::WeightedBipartite(int left, int right)
    : left_(left), right_(right), weight_(static_cast<std::size_t>(left) * right, kForbidden) {
  if (left < 0 || right < 0) throw InputError("negative bipartite side size");
}

void WeightedBipartite::set_weight(int l, int r, std::int64_t w) {
  if (w < 0) throw InputError("edge weights must be non-negative");
  const std::int64_t cap = std::numeric_limits<std::int64_t>::max() / 4;
  const std::int64_t sides = std::max<std::int64_t>(1, std::min(left_, right_));
  if (w > cap / sides) throw InputError("edge weight too large: total weight could overflow");
  weight_[static_cast<std::size_t>(l) * right_ + r] = w;
}

WeightedMatching max_weight_matching(const WeightedBipartite& g) {
  const int n = std::max(g.left(), g.right());
  WeightedMatching result{Matching(g.left(), g.right()), 0};
  if (n == 0) return result;

  // Minimise cost = -weight over the padded square matrix (rows/cols 1-based).
  std::vector<std::int64_t> cost(static_cast<std::size_t>(n) * n, 0);
  for (int l = 0; l < g.left(); ++l) {
    for (int r = 0; r < g.right(); ++r) {
      if (g.has_edge(l, r)) cost[static_cast<std::size_t>(l) * n + r] = -g.weight(l, r);
    }
  }

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 2;
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> row_of_col(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (int i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = row_of_col[j0];
      const std::int64_t* row = &cost[static_cast<std::size_t>(i0 - 1) * n];
      const std::int64_t ui0 = u[i0];
      std::int64_t delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = row[j - 1] - ui0 - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const int j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (int j = 1; j <= n; ++j) {
    const int l = row_of_col[j] - 1;
    const int r = j - 1;
    if (l < g.left() && r < g.right() && g.has_edge(l, r)) {
      result.matching.assign(l, r);
      result.total_weight += g.weight(l, r);
    }
  }
  return result;
}

}  // namespace resfront
