// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Expected values are frozen here; random sets are seeded and fixed.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "resfront/cycles.hpp"
#include "resfront/error.hpp"
#include "resfront/generator.hpp"
#include "resfront/mechanism.hpp"
#include "resfront/oracle.hpp"
#include "resfront/rha.hpp"

namespace {

using namespace resfront;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double kNamedSeconds = 1.0;
constexpr double kHalfBoundSeconds = 60.0;
constexpr double kEquivalenceSeconds = 300.0;
constexpr double kImpossibilitySeconds = 30.0;
constexpr double kScalingSeconds = 300.0;
constexpr int kHalfBoundInstances = 1000;
constexpr int kHalfBoundCap = 10;
constexpr int kEquivalenceInstances = 500;
constexpr int kEquivalenceCap = 7;
constexpr int kMechanismInstances = 200;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Failures {
 public:
  template <typename... Parts>
  void add(const Parts&... parts) {
    ++count_;
    if (count_ > 3) return;
    std::ostringstream os;
    (os << ... << parts);
    if (!text_.empty()) text_ += "; ";
    text_ += os.str();
  }
  int count() const { return count_; }
  Outcome outcome(const std::string& ok_detail) const {
    if (count_ == 0) return {true, ok_detail};
    return {false, std::to_string(count_) + " violation(s): " + text_};
  }

 private:
  int count_ = 0;
  std::string text_;
};

std::string pts(const std::vector<MatchPoint>& v) {
  std::ostringstream os;
  for (const auto& p : v) os << p;
  return os.str();
}

std::vector<Instance> seeded_instances(int count, std::uint64_t base, int cap) {
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) out.push_back(gen_small(derive_seed(base, i), cap, cap));
  return out;
}

// Criterion-4 set, shared by 4 through 7.
const std::vector<Instance>& equivalence_set() {
  static const std::vector<Instance> set =
      seeded_instances(kEquivalenceInstances, kSeed, kEquivalenceCap);
  return set;
}

const std::vector<Instance>& half_bound_set() {
  static const std::vector<Instance> set =
      seeded_instances(kHalfBoundInstances, kSeed + 1, kHalfBoundCap);
  return set;
}

Outcome named_frontiers() {
  Failures f;
  auto check = [&](const std::string& label, const Instance& inst, std::vector<MatchPoint> want) {
    const auto got = compute_frontier(SeatInstance(inst)).match_points();
    if (got != want) f.add(label, " gave ", pts(got), " expected ", pts(want));
  };
  const Instance pi = gen_named("path-independence").instance;
  const auto start = Clock::now();
  check("conflict", gen_named("conflict").instance, {{1, 1}, {2, 0}});
  check("beta-threshold", gen_named("beta-threshold").instance, {{2, 1}});
  check("path-independence", pi, {{4, 2}, {5, 1}});
  check("path-independence X", restrict_patients(pi, {0, 1, 2, 3, 4}), {{4, 1}, {5, 0}});
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= kNamedSeconds) f.add("took ", secs, " s");
  return f.outcome("4 frontiers exact in " + std::to_string(secs) + " s");
}

Outcome mechanism_values() {
  Failures f;
  const auto bt = gen_named("beta-threshold");
  const Selection s1 = select_approx_on_frontier({bt.instance, Rational(7, 10)});
  if (s1.point != MatchPoint{2, 1} || beneficiary_share(s1.point) != Rational(1, 2)) {
    f.add("beta-threshold selected ", s1.point);
  }
  const auto pi = gen_named("path-independence");
  const Selection s2 = select_approx_on_frontier({pi.instance, Rational(1, 5)});
  if (s2.point != MatchPoint{5, 1} || beneficiary_share(s2.point) != Rational(1, 5)) {
    f.add("path-independence selected ", s2.point);
  }
  return f.outcome("(2,1) beta 1/2 and (5,1) beta 1/5");
}

Outcome half_bound() {
  Failures f;
  const auto start = Clock::now();
  Rational worst(0);
  for (std::size_t i = 0; i < half_bound_set().size(); ++i) {
    const Frontier fr = compute_frontier(SeatInstance(half_bound_set()[i]));
    if (fr.max_eligible().point.e == 0) continue;
    const Rational r = half_bound_ratio(fr);
    worst = std::max(worst, r);
    if (r > Rational(1, 2)) f.add("instance ", i, " ratio ", r);
  }
  const Rational conflict = half_bound_ratio(compute_frontier(SeatInstance(gen_named("conflict").instance)));
  if (conflict != Rational(1, 2)) f.add("conflict ratio ", conflict);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= kHalfBoundSeconds) f.add("took ", secs, " s");
  return f.outcome(std::to_string(kHalfBoundInstances) + " instances, max ratio " + worst.to_string() +
                   ", conflict 1/2, " + std::to_string(secs) + " s");
}

Outcome oracle_equivalence() {
  Failures f;
  const auto start = Clock::now();
  const EnumerationBudget budget;
  int multi = 0;
  for (std::size_t i = 0; i < equivalence_set().size(); ++i) {
    const SeatInstance si(equivalence_set()[i]);
    const Frontier rha = compute_frontier(si);
    const Frontier oracle = oracle_frontier(si, budget);
    if (rha.match_points() != oracle.match_points()) {
      f.add("instance ", i, " sweep ", pts(rha.match_points()), " oracle ", pts(oracle.match_points()));
    }
    std::vector<MatchPoint> walked;
    for (const auto& step : frontier_walk(si, frontier_endpoints(si).first)) walked.push_back(step.point);
    if (walked != oracle.match_points()) f.add("instance ", i, " walk ", pts(walked));
    if (oracle.points.size() > 1) ++multi;
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= kEquivalenceSeconds) f.add("took ", secs, " s");
  return f.outcome(std::to_string(equivalence_set().size()) + " instances (" + std::to_string(multi) +
                   " with several points), " + std::to_string(secs) + " s");
}

Outcome concavity() {
  Failures f;
  int checked = 0;
  for (const auto* set : {&half_bound_set(), &equivalence_set()}) {
    for (std::size_t i = 0; i < set->size(); ++i) {
      const auto v = frontier_shape_violations(compute_frontier(SeatInstance((*set)[i])).match_points());
      if (!v.empty()) f.add("instance ", i, ": ", v.front());
      ++checked;
    }
  }
  return f.outcome(std::to_string(checked) + " frontiers");
}

Outcome minimal_cycles() {
  Failures f;
  const EnumerationBudget budget;
  int matchings = 0;
  for (std::size_t i = 0; i < equivalence_set().size(); ++i) {
    const SeatInstance si(equivalence_set()[i]);
    const MatchingCatalog catalog = catalog_matchings(si, budget);
    const Frontier oracle = oracle_frontier(catalog);
    const auto frontier = oracle.match_points();
    for (std::size_t j = 0; j < frontier.size(); ++j) {
      for (const Matching& m : sample_witnesses(catalog, frontier[j], budget)) {
        ++matchings;
        const auto mc = find_minimal_cycle(si, m);
        const auto want = oracle_min_cycle_loss(si, m, budget);
        if (mc.has_value() != want.has_value() || (mc && mc->loss != *want)) {
          f.add("instance ", i, " at ", frontier[j], " loss mismatch");
          continue;
        }
        if (!mc) {
          if (j + 1 != frontier.size()) f.add("instance ", i, " no cycle at ", frontier[j]);
          continue;
        }
        const MatchPoint next = match_point(si, apply_cycle(si, m, mc->cycle));
        if (j + 1 >= frontier.size() || next != frontier[j + 1]) {
          f.add("instance ", i, " cycle from ", frontier[j], " reached ", next);
        }
      }
    }
  }
  return f.outcome(std::to_string(matchings) + " non-dominated matchings");
}

Outcome kink_correspondence() {
  Failures f;
  const EnumerationBudget budget;
  int interior = 0;
  for (std::size_t i = 0; i < equivalence_set().size(); ++i) {
    const SeatInstance si(equivalence_set()[i]);
    const int n = si.size_parameter();
    if (n == 0) continue;
    const auto oracle = oracle_frontier(si, budget).match_points();
    if (rha_iteration(si, 1).point != oracle.front()) f.add("instance ", i, " first iteration");
    if (rha_iteration(si, n).point != oracle.back()) f.add("instance ", i, " last iteration");
    for (std::size_t j = 1; j + 1 < oracle.size(); ++j) {
      const int up = oracle[j].b - oracle[j + 1].b;
      const int down = oracle[j - 1].b - oracle[j].b;
      if (up == down) continue;
      ++interior;
      if (up > n || rha_iteration(si, up).point != oracle[j]) {
        f.add("instance ", i, " kink ", oracle[j], " missing at k=", up);
      }
    }
  }
  return f.outcome(std::to_string(interior) + " interior kinks plus all endpoints");
}

Outcome tightness_family() {
  Failures f;
  for (int k = 1; k <= 6; ++k) {
    const SeatInstance si(gen_tightness_family(k));
    const auto got = compute_frontier(si).match_points();
    const std::vector<MatchPoint> want{{k + 1, k + 1}, {k + 2, 0}};
    if (got != want) f.add("K=", k, " gave ", pts(got));
    const auto [be, eb] = frontier_endpoints(si);
    const int gap = match_point(si, be).b - match_point(si, eb).b;
    if (gap != k + 1) f.add("K=", k, " gap ", gap);
  }
  return f.outcome("K = 1..6");
}

Outcome exact_share_domination() {
  Failures f;
  static const Rational kTargets[] = {{1, 10}, {1, 5}, {1, 4}, {1, 3}, {2, 5}, {1, 2}, {3, 5}, {2, 3}, {3, 4}, {7, 10}};
  const EnumerationBudget budget;
  int used = 0;
  int exact = 0;
  for (std::uint64_t i = 0; used < kMechanismInstances && i < 100000; ++i) {
    const Instance inst = gen_small(derive_seed(kSeed + 9, i), 6, 6);
    if (!SeatInstance(inst).has_eligible_pair()) continue;
    const Rational beta = kTargets[derive_seed(kSeed + 10, i) % std::size(kTargets)];
    const Problem pr{inst, beta};
    const MatchPoint sel = select_approx_on_frontier(pr).point;
    if (beneficiary_share(sel) == beta) continue;
    ++used;
    const ExactShareReport rep = dominates_exact_share_matchings(pr, sel, budget);
    exact += rep.exact_share_matchings;
    for (const auto& p : rep.undominated) f.add("seed index ", i, " ", p, " not dominated by ", sel);
  }
  if (used < kMechanismInstances) f.add("only ", used, " qualifying instances");
  return f.outcome(std::to_string(used) + " instances, " + std::to_string(exact) +
                   " exact-share matchings all dominated");
}

Outcome priority_repair() {
  Failures f;
  int points = 0;
  for (int i = 0; i < kMechanismInstances; ++i) {
    const Instance inst = gen_small(derive_seed(kSeed + 11, i), 7, 7);
    const SeatInstance si(inst);
    Frontier fr = compute_frontier(si);
    attach_walk_witnesses(si, fr);
    const ProblemWithOrder pwo{{inst, Rational(1, 2)}, synthesize_priority(inst, derive_seed(kSeed + 12, i))};
    validate_problem_with_order(pwo);
    for (const auto& fp : fr.points) {
      ++points;
      const Matching fixed = repair_priority(pwo, si, *fp.witness);
      if (!respects_priority(pwo, si, fixed).empty()) f.add("instance ", i, " violations remain");
      if (match_point(si, fixed) != fp.point) f.add("instance ", i, " point moved");
      if (rank_sum(pwo, si, fixed) > rank_sum(pwo, si, *fp.witness)) f.add("instance ", i, " rank sum rose");
    }
  }
  return f.outcome(std::to_string(kMechanismInstances) + " instances, " + std::to_string(points) +
                   " frontier matchings");
}

Outcome impossibility() {
  Failures f;
  const auto start = Clock::now();
  const auto doc = gen_named("path-independence");
  const Problem pr{doc.instance, *doc.beta_star};
  const PatientMask all = 0b111111;
  const PatientMask x = 0b011111;       // p1..p5
  const PatientMask expected = 0b010111;  // {p1,p2,p3,p5}
  const TieBreakAudit audit = audit_substitutability_all_tiebreaks(pr, all, x, EnumerationBudget{});
  if (!audit.violated_for_all()) {
    f.add(audit.violating, " of ", audit.combinations, " tie-breakings violate");
  }
  bool listed = false;
  for (const auto& v : audit_substitutability(pr)) {
    listed = listed || (v.x == all && v.x_prime == x && (v.choice_of_x & x) == expected);
  }
  if (!listed) f.add("no violation listing C(P) n X = {p1,p2,p3,p5}");
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= kImpossibilitySeconds) f.add("took ", secs, " s");
  return f.outcome(std::to_string(audit.combinations) + " tie-breakings all violate, " +
                   std::to_string(secs) + " s");
}

Outcome scaling() {
  Failures f;
  GenConfig cfg;
  cfg.patients = 500;
  cfg.categories = 200;
  cfg.quota_lo = 1;
  cfg.quota_hi = 4;
  cfg.eligibility_density = Rational(1, 150);
  cfg.beneficiary_density = Rational(1, 3);
  cfg.seed = kSeed;
  const Instance inst = gen_random(cfg);
  const auto start = Clock::now();
  const Frontier fr = compute_frontier(SeatInstance(inst));
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  for (const auto& v : frontier_shape_violations(fr.match_points())) f.add(v);
  if (secs >= kScalingSeconds) f.add("took ", secs, " s");
  return f.outcome("sum of quotas " + std::to_string(inst.total_quota()) + ", " +
                   std::to_string(fr.points.size()) + " points in " + std::to_string(secs) + " s");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"named-example frontiers", named_frontiers},
      {"mechanism values", mechanism_values},
      {"half bound", half_bound},
      {"oracle equivalence", oracle_equivalence},
      {"concavity and density", concavity},
      {"minimal-cycle step", minimal_cycles},
      {"kink correspondence", kink_correspondence},
      {"tightness family", tightness_family},
      {"exact-share domination", exact_share_domination},
      {"priority repair", priority_repair},
      {"substitutability impossibility", impossibility},
      {"scaling smoke test", scaling},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
