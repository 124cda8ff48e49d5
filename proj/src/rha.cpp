#include "resfront/rha.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>

#include "resfront/error.hpp"
#include "resfront/hungarian.hpp"

namespace resfront {

std::vector<MatchPoint> Frontier::match_points() const {
  std::vector<MatchPoint> out;
  out.reserve(points.size());
  for (const auto& fp : points) out.push_back(fp.point);
  return out;
}

SweepWeights sweep_weights(int k, int n) {
  if (k < 1 || k > n) throw InputError("sweep iteration k must lie in [1, n]");
  const std::int64_t n2 = static_cast<std::int64_t>(n) * n;
  return {k * n2, k * n2 + n2 + k};
}

IterationResult rha_iteration(const SeatInstance& si, int k) {
  const int n = si.size_parameter();
  const SweepWeights w = sweep_weights(k, n);
  WeightedBipartite g(si.num_patients(), si.num_seats());
  for (int p = 0; p < si.num_patients(); ++p) {
    for (int s = 0; s < si.num_seats(); ++s) {
      switch (si.tier(p, s)) {
        case Tier::kIneligible:
          break;
        case Tier::kEligible:
          g.set_weight(p, s, w.eligible);
          break;
        case Tier::kBeneficiary:
          g.set_weight(p, s, w.beneficiary);
          break;
      }
    }
  }
  WeightedMatching wm = max_weight_matching(g);
  MatchPoint pt = match_point(si, wm.matching);
  return {pt, std::move(wm.matching)};
}

namespace {

std::vector<IterationResult> run_sweep(const SeatInstance& si, int n, int jobs) {
  std::vector<std::optional<IterationResult>> slots(n);
  jobs = std::clamp(jobs, 1, std::max(1, n));
  if (jobs == 1) {
    for (int k = 1; k <= n; ++k) slots[k - 1] = rha_iteration(si, k);
  } else {
    std::vector<std::jthread> workers;
    for (int t = 0; t < jobs; ++t) {
      workers.emplace_back([&, t] {
        for (int k = 1 + t; k <= n; k += jobs) slots[k - 1] = rha_iteration(si, k);
      });
    }
  }
  std::vector<IterationResult> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

Frontier compute_frontier(const SeatInstance& si, int jobs) {
  const int n = si.size_parameter();
  Frontier f;
  if (n == 0) {
    f.points.push_back({{0, 0}, true, Matching(si.num_patients(), si.num_seats())});
    return f;
  }

  // Kink collection in ascending k; a point is recorded when it differs from
  // the previously recorded one.
  std::vector<IterationResult> sweep = run_sweep(si, n, jobs);
  std::vector<IterationResult> kinks;
  for (auto& it : sweep) {
    if (kinks.empty() || it.point != kinks.back().point) kinks.push_back(std::move(it));
  }
  std::set<MatchPoint> distinct;
  for (const auto& kk : kinks) {
    if (!distinct.insert(kk.point).second) {
      std::ostringstream os;
      os << "sweep revisited kink " << kk.point << " after leaving it";
      throw ConsistencyError(os.str());
    }
  }
  for (std::size_t i = 1; i < kinks.size(); ++i) {
    const MatchPoint a = kinks[i - 1].point;
    const MatchPoint b = kinks[i].point;
    if (!(b.e > a.e && b.b < a.b)) {
      std::ostringstream os;
      os << "sweep kinks out of order: " << a << " then " << b;
      throw ConsistencyError(os.str());
    }
  }

  // Interpolation along each constant-slope segment.
  for (std::size_t i = 0; i < kinks.size(); ++i) {
    f.points.push_back({kinks[i].point, true, std::move(kinks[i].witness)});
    if (i + 1 == kinks.size()) break;
    const MatchPoint lo = f.points.back().point;
    const MatchPoint hi = kinks[i + 1].point;
    const int run = hi.e - lo.e;
    const int drop = lo.b - hi.b;
    if (drop % run != 0) {
      std::ostringstream os;
      os << "non-integer interpolation between kinks " << lo << " and " << hi;
      throw ConsistencyError(os.str());
    }
    const int slope = drop / run;
    for (int j = 1; j < run; ++j) {
      f.points.push_back({{lo.e + j, lo.b - j * slope}, false, std::nullopt});
    }
  }
  return f;
}

std::pair<Matching, Matching> frontier_endpoints(const SeatInstance& si) {
  const int n = si.size_parameter();
  if (n == 0) {
    Matching empty(si.num_patients(), si.num_seats());
    return {empty, empty};
  }
  return {rha_iteration(si, 1).witness, rha_iteration(si, n).witness};
}

Rational half_bound_ratio(const Frontier& f) {
  if (f.points.empty()) throw InputError("ratio undefined: empty frontier");
  const int e_min = f.min_eligible().point.e;
  const int e_max = f.max_eligible().point.e;
  if (e_max == 0) throw InputError("ratio undefined: no eligible match");
  return Rational(e_max - e_min, e_max);
}

std::vector<std::string> frontier_shape_violations(const std::vector<MatchPoint>& points) {
  std::vector<std::string> out;
  auto report = [&out](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    out.push_back(os.str());
  };
  if (points.empty()) {
    report("frontier is empty");
    return out;
  }
  for (const auto& p : points) {
    if (p.b < 0 || p.b > p.e) report("point ", p, " has b outside [0, e]");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    const MatchPoint a = points[i - 1];
    const MatchPoint b = points[i];
    if (b.e != a.e + 1) report("e is not dense between ", a, " and ", b);
    if (b.b >= a.b) report("b does not strictly decrease between ", a, " and ", b);
    if (i + 1 < points.size()) {
      const MatchPoint c = points[i + 1];
      if (a.b - b.b > b.b - c.b) report("concavity fails at ", a, " ", b, " ", c);
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i != j && dominates(points[i], points[j])) {
        report(points[i], " dominates ", points[j]);
      }
    }
  }
  return out;
}

}  // namespace resfront
