#include "resfront/verify.hpp"

#include <algorithm>
#include <sstream>

#include "resfront/cycles.hpp"
#include "resfront/error.hpp"
#include "resfront/rha.hpp"

namespace resfront {

std::optional<Suite> parse_suite(const std::string& name) {
  if (name == "frontier") return Suite::kFrontier;
  if (name == "cycles") return Suite::kCycles;
  if (name == "lemmas") return Suite::kLemmas;
  if (name == "mechanism") return Suite::kMechanism;
  return std::nullopt;
}

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::kFrontier:
      return "frontier";
    case Suite::kCycles:
      return "cycles";
    case Suite::kLemmas:
      return "lemmas";
    case Suite::kMechanism:
      return "mechanism";
  }
  return "?";
}

namespace {

template <typename... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

std::string points_str(const std::vector<MatchPoint>& pts) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << pts[i];
  os << "]";
  return os.str();
}

void corrupt(Frontier& f) {
  if (f.points.empty()) return;
  MatchPoint& pt = f.points.front().point;
  if (pt.b > 0) {
    --pt.b;
  } else if (pt.e > 0) {
    --pt.e;
  }
}

}  // namespace

SuiteResult verify_frontier(const SeatInstance& si, const VerifyOptions& opts) {
  SuiteResult r{Suite::kFrontier, {}, false};
  Frontier f = compute_frontier(si);
  if (opts.inject_corruption) corrupt(f);
  const Frontier oracle = oracle_frontier(si, opts.budget);
  const auto got = f.match_points();
  const auto want = oracle.match_points();

  for (const auto& fp : f.points) {
    for (const auto& op : oracle.points) {
      if (dominates(op.point, fp.point)) {
        r.failures.push_back(cat("domination counterexample: oracle point ", op.point,
                                 " dominates reported frontier point ", fp.point));
      }
    }
  }
  if (got != want) {
    r.failures.push_back(cat("sweep frontier ", points_str(got), " differs from oracle ",
                             points_str(want)));
  } else {
    for (std::size_t i = 0; i < f.points.size(); ++i) {
      if (f.points[i].is_kink != oracle.points[i].is_kink) {
        r.failures.push_back(cat("kink flag differs at ", f.points[i].point));
      }
    }
  }
  for (auto& v : frontier_shape_violations(got)) r.failures.push_back("shape: " + v);
  for (const auto& fp : f.points) {
    if (!fp.witness) continue;
    check_matching(si, *fp.witness);
    if (match_point(si, *fp.witness) != fp.point) {
      r.failures.push_back(cat("witness of ", fp.point, " realises ",
                               match_point(si, *fp.witness)));
    }
  }
  if (!f.points.empty() && f.max_eligible().point.e > 0 &&
      half_bound_ratio(f) > Rational(1, 2)) {
    r.failures.push_back(cat("half bound exceeded: ", half_bound_ratio(f)));
  }

  const int n = si.size_parameter();
  if (n > 0 && !oracle.points.empty()) {
    if (rha_iteration(si, 1).point != oracle.min_eligible().point) {
      r.failures.push_back("first sweep iteration misses the max-beneficiary end");
    }
    if (rha_iteration(si, n).point != oracle.max_eligible().point) {
      r.failures.push_back("last sweep iteration misses the max-eligible end");
    }
    for (std::size_t i = 1; i + 1 < oracle.points.size(); ++i) {
      const int loss_up = oracle.points[i].point.b - oracle.points[i + 1].point.b;
      const int loss_down = oracle.points[i - 1].point.b - oracle.points[i].point.b;
      if (loss_up <= loss_down) continue;
      if (loss_up > n || rha_iteration(si, loss_up).point != oracle.points[i].point) {
        r.failures.push_back(cat("kink ", oracle.points[i].point, " not produced at iteration ",
                                 loss_up));
      }
    }
  }
  return r;
}

SuiteResult verify_cycles(const SeatInstance& si, const VerifyOptions& opts) {
  SuiteResult r{Suite::kCycles, {}, false};
  const MatchingCatalog catalog = catalog_matchings(si, opts.budget);
  const Frontier oracle = oracle_frontier(catalog);
  const auto want = oracle.match_points();

  const Matching start = frontier_endpoints(si).first;
  std::vector<MatchPoint> walked;
  for (const auto& step : frontier_walk(si, start)) walked.push_back(step.point);
  if (walked != want) {
    r.failures.push_back(cat("walk visited ", points_str(walked), ", oracle frontier is ",
                             points_str(want)));
  }

  for (std::size_t i = 0; i < oracle.points.size(); ++i) {
    const MatchPoint pt = oracle.points[i].point;
    for (const Matching& m : sample_witnesses(catalog, pt, opts.budget, &r.sampled)) {
      const auto mc = find_minimal_cycle(si, m);
      const auto expected = oracle_min_cycle_loss(si, m, opts.budget);
      if (mc.has_value() != expected.has_value() || (mc && mc->loss != *expected)) {
        r.failures.push_back(cat("minimal cycle loss at ", pt, ": search ",
                                 mc ? std::to_string(mc->loss) : "none", ", oracle ",
                                 expected ? std::to_string(*expected) : "none"));
        continue;
      }
      if (!mc) {
        if (i + 1 != oracle.points.size()) {
          r.failures.push_back(cat("no applicable cycle at interior point ", pt));
        }
        continue;
      }
      const MatchPoint next = match_point(si, apply_cycle(si, m, mc->cycle));
      if (i + 1 >= oracle.points.size() || next != oracle.points[i + 1].point) {
        r.failures.push_back(cat("minimal cycle from ", pt, " reached ", next,
                                 ", which is off the frontier"));
      }
    }
  }
  return r;
}

SuiteResult verify_lemmas(const SeatInstance& si, const VerifyOptions& opts) {
  SuiteResult r{Suite::kLemmas, {}, false};
  const LemmaReport disjoint = check_disjoint_cycles(si, opts.budget);
  const LemmaReport preserve = check_matched_preservation(si, opts.budget);
  r.sampled = disjoint.sampled || preserve.sampled;
  for (const auto& f : disjoint.failures) r.failures.push_back("disjoint cycles: " + f);
  for (const auto& f : preserve.failures) r.failures.push_back("matched preservation: " + f);
  return r;
}

SuiteResult verify_mechanism(const Instance& inst, std::optional<Rational> beta_star,
                             const VerifyOptions& opts) {
  SuiteResult r{Suite::kMechanism, {}, false};
  const SeatInstance si(inst);
  const std::vector<Rational> targets =
      beta_star ? std::vector<Rational>{*beta_star} : opts.fallback_targets;

  if (!si.has_eligible_pair()) {
    try {
      select_approx_on_frontier(Problem{inst, targets.front()});
      r.failures.push_back("selection succeeded on an instance without eligible pairs");
    } catch (const InputError&) {
    }
    return r;
  }

  Frontier f = compute_frontier(si);
  attach_walk_witnesses(si, f);
  const MatchPoint be = f.min_eligible().point;

  for (const Rational& target : targets) {
    const Problem pr{inst, target};
    const Selection sel = select_approx_on_frontier(pr, si, f);
    const Rational share = beneficiary_share(sel.point);
    if (match_point(si, sel.matching) != sel.point) {
      r.failures.push_back(cat("selection witness does not realise ", sel.point));
    }
    const auto pts = f.match_points();
    if (std::find(pts.begin(), pts.end(), sel.point) == pts.end()) {
      r.failures.push_back(cat("selected ", sel.point, " is not on the frontier"));
    }
    if (target < beneficiary_share(be)) {
      if (share < target) r.failures.push_back(cat("selected ", sel.point, " misses ", target));
      for (const auto& p : pts) {
        if (p.e > sel.point.e && beneficiary_share(p) >= target) {
          r.failures.push_back(cat("frontier point ", p, " also meets ", target,
                                   " with more matches than ", sel.point));
        }
      }
    } else if (sel.point != be) {
      r.failures.push_back(cat("fallback selection ", sel.point, " is not the max-beneficiary end"));
    }
    if (share != target) {
      const ExactShareReport rep = dominates_exact_share_matchings(pr, sel.point, opts.budget);
      for (const auto& p : rep.undominated) {
        r.failures.push_back(cat("share-", target, " matching at ", p, " not dominated by ",
                                 sel.point));
      }
    }
  }

  const ProblemWithOrder pwo{{inst, targets.front()}, synthesize_priority(inst, 0x5eedULL)};
  for (const auto& fp : f.points) {
    const Matching repaired = repair_priority(pwo, si, *fp.witness);
    if (!respects_priority(pwo, si, repaired).empty()) {
      r.failures.push_back(cat("repair left priority violations at ", fp.point));
    }
    if (match_point(si, repaired) != fp.point) {
      r.failures.push_back(cat("repair moved ", fp.point));
    }
    if (rank_sum(pwo, si, repaired) > rank_sum(pwo, si, *fp.witness)) {
      r.failures.push_back(cat("repair raised the rank sum at ", fp.point));
    }
  }
  return r;
}

std::vector<SuiteResult> run_suites(const Instance& inst, std::optional<Rational> beta_star,
                                    const std::vector<Suite>& suites, const VerifyOptions& opts) {
  const SeatInstance si(validate_instance(inst));
  check_budget(si, opts.budget);
  std::vector<SuiteResult> out;
  for (Suite s : suites) {
    try {
      switch (s) {
        case Suite::kFrontier:
          out.push_back(verify_frontier(si, opts));
          break;
        case Suite::kCycles:
          out.push_back(verify_cycles(si, opts));
          break;
        case Suite::kLemmas:
          out.push_back(verify_lemmas(si, opts));
          break;
        case Suite::kMechanism:
          out.push_back(verify_mechanism(inst, beta_star, opts));
          break;
      }
    } catch (const BudgetError&) {
      throw;
    } catch (const std::exception& e) {
      out.push_back({s, {std::string("exception: ") + e.what()}, false});
    }
  }
  return out;
}

}  // namespace resfront
