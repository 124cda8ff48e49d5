#include "resfront/mechanism.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <sstream>

#include "resfront/cycles.hpp"
#include "resfront/error.hpp"

namespace resfront {

PriorityOrder priority_from_lists(const std::vector<std::vector<int>>& orders) {
  PriorityOrder order;
  for (const auto& list : orders) {
    std::vector<int> rank(list.size(), 0);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const int p = list[i];
      if (p < 0 || p >= static_cast<int>(list.size()) || rank[p] != 0) {
        throw InputError("priority list is not a permutation of the patients");
      }
      rank[p] = static_cast<int>(i) + 1;
    }
    order.rank.push_back(std::move(rank));
  }
  return order;
}

std::vector<int> priority_list(const PriorityOrder& order, int category) {
  const auto& rank = order.rank[category];
  std::vector<int> list(rank.size());
  for (std::size_t p = 0; p < rank.size(); ++p) list[rank[p] - 1] = static_cast<int>(p);
  return list;
}

void validate_priority(const Instance& inst, const PriorityOrder& order) {
  const int np = inst.num_patients();
  if (order.rank.size() != inst.categories.size()) {
    throw InputError("priority order must list every category");
  }
  const SeatInstance si(inst);
  for (int c = 0; c < inst.num_categories(); ++c) {
    const auto& rank = order.rank[c];
    const std::string& cid = inst.categories[c].id;
    if (static_cast<int>(rank.size()) != np) {
      throw InputError("priority of category '" + cid + "' must rank every patient");
    }
    std::vector<char> used(np + 1, 0);
    for (int r : rank) {
      if (r < 1 || r > np || used[r]) {
        throw InputError("priority of category '" + cid + "' is not a strict order");
      }
      used[r] = 1;
    }
    for (int p = 0; p < np; ++p) {
      for (int q = 0; q < np; ++q) {
        if (si.category_tier(p, c) > si.category_tier(q, c) && rank[p] > rank[q]) {
          throw InputError("priority of category '" + cid + "' ranks patient '" +
                           inst.patients[q] + "' above higher-tier patient '" +
                           inst.patients[p] + "'");
        }
      }
    }
  }
}

PriorityOrder synthesize_priority(const Instance& inst, std::optional<std::uint64_t> shuffle_seed) {
  const SeatInstance si(inst);
  std::mt19937_64 rng(shuffle_seed.value_or(0));
  std::vector<std::vector<int>> lists;
  for (int c = 0; c < inst.num_categories(); ++c) {
    std::vector<int> list;
    for (Tier t : {Tier::kBeneficiary, Tier::kEligible, Tier::kIneligible}) {
      const auto tier_begin = static_cast<std::ptrdiff_t>(list.size());
      for (int p = 0; p < inst.num_patients(); ++p) {
        if (si.category_tier(p, c) == t) list.push_back(p);
      }
      if (shuffle_seed) std::shuffle(list.begin() + tier_begin, list.end(), rng);
    }
    lists.push_back(std::move(list));
  }
  return priority_from_lists(lists);
}

const ProblemWithOrder& validate_problem_with_order(const ProblemWithOrder& pwo) {
  validate_problem(pwo.problem);
  validate_priority(pwo.problem.instance, pwo.priority);
  return pwo;
}

bool respects_share(MatchPoint pt, const Rational& beta_star) {
  return beneficiary_share(pt) >= beta_star;
}

MatchPoint selected_point(const Frontier& f, const Rational& beta_star) {
  if (f.points.empty() || f.min_eligible().point.e == 0) {
    throw InputError("no non-empty matching exists");
  }
  const MatchPoint be = f.min_eligible().point;
  if (beta_star >= beneficiary_share(be)) return be;

  MatchPoint chosen = be;
  Rational previous = beneficiary_share(be);
  for (std::size_t i = 1; i < f.points.size(); ++i) {
    const Rational share = beneficiary_share(f.points[i].point);
    if (share >= previous) {
      throw ConsistencyError("beneficiary share does not strictly decrease along the frontier");
    }
    previous = share;
    if (share >= beta_star) chosen = f.points[i].point;
  }
  return chosen;
}

Selection select_approx_on_frontier(const Problem& pr, const SeatInstance& si, const Frontier& f) {
  const MatchPoint target = selected_point(f, pr.beta_star);
  const auto& start = f.min_eligible().witness;
  if (!start) throw InputError("frontier has no witness at its max-beneficiary end");
  auto walk = frontier_walk(si, *start, target.e);
  if (walk.back().point != target) {
    std::ostringstream os;
    os << "walk ended at " << walk.back().point << " instead of " << target;
    throw ConsistencyError(os.str());
  }
  return {std::move(walk.back().matching), target};
}

Selection select_approx_on_frontier(const Problem& pr) {
  validate_problem(pr);
  const SeatInstance si(pr.instance);
  const Frontier f = compute_frontier(si);
  return select_approx_on_frontier(pr, si, f);
}

ExactShareReport dominates_exact_share_matchings(const Problem& pr, MatchPoint selected,
                                                 const EnumerationBudget& budget) {
  if (selected.e > 0 && beneficiary_share(selected) == pr.beta_star) {
    throw InputError("selected matching already has share exactly beta_star");
  }
  const SeatInstance si(validate_problem(pr).instance);
  ExactShareReport report;
  for (const auto& [pt, ms] : catalog_matchings(si, budget)) {
    if (pt.e == 0 || beneficiary_share(pt) != pr.beta_star) continue;
    report.exact_share_matchings += static_cast<int>(ms.size());
    if (!dominates(selected, pt)) report.undominated.push_back(pt);
  }
  return report;
}

int rank_sum(const ProblemWithOrder& pwo, const SeatInstance& si, const Matching& m) {
  int total = 0;
  for (int p = 0; p < m.num_patients(); ++p) {
    if (m.patient_matched(p)) total += pwo.priority.rank[si.seat(m.seat_of(p)).category][p];
  }
  return total;
}

std::vector<PriorityViolation> respects_priority(const ProblemWithOrder& pwo, const SeatInstance& si,
                                                 const Matching& m) {
  std::vector<PriorityViolation> out;
  const int nc = pwo.problem.instance.num_categories();
  for (int c = 0; c < nc; ++c) {
    const auto list = priority_list(pwo.priority, c);
    const auto& rank = pwo.priority.rank[c];
    for (int p = 0; p < m.num_patients(); ++p) {
      if (!m.patient_matched(p) || si.seat(m.seat_of(p)).category != c) continue;
      for (int q : list) {
        if (rank[q] >= rank[p]) break;
        if (!m.patient_matched(q)) out.push_back({c, p, q});
      }
    }
  }
  return out;
}

Matching repair_priority(const ProblemWithOrder& pwo, const SeatInstance& si, const Matching& m) {
  Matching cur = m;
  const MatchPoint target = match_point(si, m);
  const int nc = pwo.problem.instance.num_categories();
  for (;;) {
    bool swapped = false;
    for (int c = 0; c < nc && !swapped; ++c) {
      const auto& rank = pwo.priority.rank[c];
      // Lowest-priority incumbent of c.
      int incumbent = -1;
      for (int p = 0; p < cur.num_patients(); ++p) {
        if (cur.patient_matched(p) && si.seat(cur.seat_of(p)).category == c &&
            (incumbent < 0 || rank[p] > rank[incumbent])) {
          incumbent = p;
        }
      }
      if (incumbent < 0) continue;
      for (int q : priority_list(pwo.priority, c)) {
        if (rank[q] >= rank[incumbent]) break;
        if (cur.patient_matched(q)) continue;
        const int seat = cur.seat_of(incumbent);
        if (!si.eligible(q, seat)) {
          throw InputError("priority order ranks ineligible patient '" +
                           si.instance().patients[q] + "' above an eligible one");
        }
        cur.unassign_patient(incumbent);
        cur.assign(q, seat);
        if (match_point(si, cur) != target) {
          throw DominatedInputError("input was not a frontier matching: swapping '" +
                                    si.instance().patients[q] + "' into " + si.seat_label(seat) +
                                    " changes (e, b)");
        }
        swapped = true;
        break;
      }
    }
    if (!swapped) return cur;
  }
}

std::vector<int> mask_to_patients(PatientMask mask) {
  std::vector<int> out;
  for (int p = 0; mask != 0; ++p, mask >>= 1) {
    if (mask & 1) out.push_back(p);
  }
  return out;
}

PatientMask patients_to_mask(const std::vector<int>& patients) {
  PatientMask mask = 0;
  for (int p : patients) {
    if (p < 0 || p >= 64) throw InputError("patient index does not fit a 64-bit subset mask");
    mask |= PatientMask{1} << p;
  }
  return mask;
}

ChoiceRecord induce_choice(const Problem& pr, const std::vector<int>& subset) {
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  ChoiceRecord rec{sorted, {}};
  const Problem sub{restrict_patients(pr.instance, sorted), pr.beta_star};
  const SeatInstance si(sub.instance);
  if (!si.has_eligible_pair()) return rec;
  const Selection sel = select_approx_on_frontier(sub, si, compute_frontier(si));
  for (int local : sel.matching.matched_patients()) rec.chosen.push_back(sorted[local]);
  return rec;
}

PatientMask induce_choice_mask(const Problem& pr, PatientMask subset) {
  return patients_to_mask(induce_choice(pr, mask_to_patients(subset)).chosen);
}

std::vector<PatientMask> admissible_choices(const Problem& pr, PatientMask subset,
                                            const EnumerationBudget& budget) {
  const std::vector<int> members = mask_to_patients(subset);
  const Instance sub = restrict_patients(pr.instance, members);
  const SeatInstance si(sub);
  if (!si.has_eligible_pair()) return {0};
  const MatchingCatalog catalog = catalog_matchings(si, budget);
  const MatchPoint target = selected_point(oracle_frontier(catalog), pr.beta_star);
  std::vector<PatientMask> out;
  for (const auto& m : catalog.at(target)) {
    PatientMask chosen = 0;
    for (int local : m.matched_patients()) chosen |= PatientMask{1} << members[local];
    out.push_back(chosen);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<PatientMask> all_choices(const Problem& pr, int max_patients) {
  validate_problem(pr);
  const int np = pr.instance.num_patients();
  if (np > max_patients || np > 30) {
    throw BudgetError("audit refuses " + std::to_string(np) + " patients (cap " +
                      std::to_string(std::min(max_patients, 30)) + ")");
  }
  std::vector<PatientMask> choice(std::size_t{1} << np);
  for (PatientMask x = 0; x < choice.size(); ++x) choice[x] = induce_choice_mask(pr, x);
  return choice;
}

}  // namespace

std::vector<PathIndependenceViolation> audit_path_independence(const Problem& pr, int max_patients) {
  const auto choice = all_choices(pr, max_patients);
  std::vector<PathIndependenceViolation> out;
  for (PatientMask x = 0; x < choice.size(); ++x) {
    for (PatientMask xp = 0; xp < choice.size(); ++xp) {
      const PatientMask direct = choice[x | xp];
      const PatientMask sequential = choice[choice[x] | xp];
      if (direct != sequential) out.push_back({x, xp, direct, sequential});
    }
  }
  return out;
}

std::vector<SubstitutabilityViolation> audit_substitutability(const Problem& pr, int max_patients) {
  const auto choice = all_choices(pr, max_patients);
  std::vector<SubstitutabilityViolation> out;
  for (PatientMask x = 0; x < choice.size(); ++x) {
    // Every submask of x, including x itself and the empty set.
    for (PatientMask xp = x;; xp = (xp - 1) & x) {
      if ((choice[x] & xp & ~choice[xp]) != 0) out.push_back({x, xp, choice[x], choice[xp]});
      if (xp == 0) break;
    }
  }
  return out;
}

TieBreakAudit audit_substitutability_all_tiebreaks(const Problem& pr, PatientMask x,
                                                   PatientMask x_prime,
                                                   const EnumerationBudget& budget) {
  if ((x_prime & ~x) != 0) throw InputError("X' must be a subset of X");
  TieBreakAudit audit;
  const auto cx = admissible_choices(pr, x, budget);
  const auto cxp = admissible_choices(pr, x_prime, budget);
  for (PatientMask a : cx) {
    for (PatientMask b : cxp) {
      ++audit.combinations;
      if ((a & x_prime & ~b) != 0) ++audit.violating;
    }
  }
  return audit;
}

}  // namespace resfront
