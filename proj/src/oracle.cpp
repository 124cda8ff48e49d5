#include "resfront/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <sstream>

#include "resfront/error.hpp"

namespace resfront {

EnumerationBudget default_budget() {
  EnumerationBudget b;
  const char* env = std::getenv("RESFRONT_ORACLE_BUDGET");
  if (env == nullptr || *env == '\0') return b;
  std::string text(env);
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream is(text);
  EnumerationBudget parsed = b;
  if (!(is >> parsed.max_patients >> parsed.max_seats)) {
    throw InputError("RESFRONT_ORACLE_BUDGET must look like 'patients,seats[,states]'");
  }
  if (std::int64_t states = 0; is >> states) parsed.max_states = states;
  if (parsed.max_patients <= 0 || parsed.max_seats <= 0 || parsed.max_states <= 0) {
    throw InputError("RESFRONT_ORACLE_BUDGET entries must be positive");
  }
  return parsed;
}

void check_budget(const SeatInstance& si, const EnumerationBudget& budget) {
  const int max_p = std::min(budget.max_patients, 64);
  const int max_s = std::min(budget.max_seats, 64);
  if (si.num_patients() > max_p || si.num_seats() > max_s) {
    std::ostringstream os;
    os << "instance too large for exhaustive verification: " << si.num_patients()
       << " patients and " << si.num_seats() << " seats (budget " << max_p << " patients, "
       << max_s << " seats)";
    throw BudgetError(os.str());
  }
}

namespace {

class StateCounter {
 public:
  explicit StateCounter(std::int64_t cap) : cap_(cap) {}
  void tick() {
    if (++count_ > cap_) {
      throw BudgetError("exhaustive search exceeded " + std::to_string(cap_) + " states");
    }
  }

 private:
  std::int64_t cap_;
  std::int64_t count_ = 0;
};

using Mask = std::uint64_t;

Mask matched_mask(const Matching& m) {
  Mask mask = 0;
  for (int p = 0; p < m.num_patients(); ++p) {
    if (m.patient_matched(p)) mask |= Mask{1} << p;
  }
  return mask;
}

std::string describe(const SeatInstance& si, const Matching& m) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int p = 0; p < m.num_patients(); ++p) {
    if (!m.patient_matched(p)) continue;
    os << (first ? "" : ", ") << si.instance().patients[p] << "->" << si.seat_label(m.seat_of(p));
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace

void enumerate_matchings(const SeatInstance& si, const EnumerationBudget& budget,
                         const std::function<void(const Matching&)>& visit) {
  check_budget(si, budget);
  const Instance& inst = si.instance();
  StateCounter states(budget.max_states);
  std::vector<int> filled(inst.num_categories(), 0);
  Matching m(si.num_patients(), si.num_seats());

  auto recurse = [&](auto&& self, int p) -> void {
    states.tick();
    if (p == si.num_patients()) {
      visit(m);
      return;
    }
    self(self, p + 1);
    for (int c = 0; c < inst.num_categories(); ++c) {
      if (si.category_tier(p, c) == Tier::kIneligible || filled[c] == inst.categories[c].quota) {
        continue;
      }
      m.assign(p, si.first_seat(c) + filled[c]);
      ++filled[c];
      self(self, p + 1);
      --filled[c];
      m.unassign_patient(p);
    }
  };
  recurse(recurse, 0);
}

std::vector<Matching> all_matchings(const SeatInstance& si, const EnumerationBudget& budget) {
  std::vector<Matching> out;
  enumerate_matchings(si, budget, [&](const Matching& m) { out.push_back(m); });
  return out;
}

MatchingCatalog catalog_matchings(const SeatInstance& si, const EnumerationBudget& budget) {
  MatchingCatalog catalog;
  enumerate_matchings(si, budget,
                      [&](const Matching& m) { catalog[match_point(si, m)].push_back(m); });
  return catalog;
}

Frontier oracle_frontier(const MatchingCatalog& catalog) {
  std::vector<MatchPoint> all;
  for (const auto& [pt, ms] : catalog) all.push_back(pt);
  Frontier f;
  for (const auto& pt : all) {
    const bool dominated =
        std::any_of(all.begin(), all.end(), [&](MatchPoint o) { return dominates(o, pt); });
    if (!dominated) f.points.push_back({pt, false, catalog.at(pt).front()});
  }
  // The catalog is ordered by (e, b) and non-dominated points have distinct e.
  const std::size_t n = f.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || i + 1 == n) {
      f.points[i].is_kink = true;
      continue;
    }
    const int left = f.points[i - 1].point.b - f.points[i].point.b;
    const int right = f.points[i].point.b - f.points[i + 1].point.b;
    f.points[i].is_kink = left != right;
  }
  return f;
}

Frontier oracle_frontier(const SeatInstance& si, const EnumerationBudget& budget) {
  return oracle_frontier(catalog_matchings(si, budget));
}

std::vector<MinimalCycle> enumerate_applicable_cycles(const SeatInstance& si, const Matching& m,
                                                      const EnumerationBudget& budget) {
  check_budget(si, budget);
  StateCounter states(budget.max_states);
  const MatchPoint base = match_point(si, m);
  std::vector<MinimalCycle> out;
  std::vector<char> used_p(si.num_patients(), 0), used_s(si.num_seats(), 0);
  Cycle path;

  auto recurse = [&](auto&& self, int p) -> void {
    states.tick();
    for (int s = 0; s < si.num_seats(); ++s) {
      if (used_s[s] || !si.eligible(p, s) || m.seat_of(p) == s) continue;
      path.patients.push_back(p);
      path.seats.push_back(s);
      if (!m.seat_matched(s)) {
        Matching after = m;
        for (int q : path.patients) after.unassign_patient(q);
        for (int k = 0; k < path.length(); ++k) after.assign(path.patients[k], path.seats[k]);
        out.push_back({path, base.b - match_point(si, after).b});
      } else if (const int q = m.patient_at(s); !used_p[q]) {
        used_s[s] = 1;
        used_p[q] = 1;
        self(self, q);
        used_p[q] = 0;
        used_s[s] = 0;
      }
      path.patients.pop_back();
      path.seats.pop_back();
    }
  };
  for (int p = 0; p < si.num_patients(); ++p) {
    if (m.patient_matched(p)) continue;
    used_p[p] = 1;
    recurse(recurse, p);
    used_p[p] = 0;
  }
  return out;
}

std::optional<int> oracle_min_cycle_loss(const SeatInstance& si, const Matching& m,
                                         const EnumerationBudget& budget) {
  std::optional<int> best;
  for (const auto& c : enumerate_applicable_cycles(si, m, budget)) {
    if (!best || c.loss < *best) best = c.loss;
  }
  return best;
}

std::vector<Matching> sample_witnesses(const MatchingCatalog& catalog, MatchPoint pt,
                                       const EnumerationBudget& budget, bool* sampled) {
  const auto& all = catalog.at(pt);
  const auto cap = static_cast<std::size_t>(std::max(1, budget.witness_sample_cap));
  if (all.size() <= cap) return all;
  if (sampled != nullptr) *sampled = true;
  std::vector<Matching> out;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(pt.e) << 32) ^
                      static_cast<std::uint64_t>(pt.b));
  std::sample(all.begin(), all.end(), std::back_inserter(out), cap, rng);
  return out;
}

namespace {

std::string pair_label(MatchPoint from, MatchPoint to) {
  std::ostringstream os;
  os << from << " -> " << to;
  return os.str();
}

}  // namespace

LemmaReport check_disjoint_cycles(const SeatInstance& si, const EnumerationBudget& budget) {
  const MatchingCatalog catalog = catalog_matchings(si, budget);
  const Frontier f = oracle_frontier(catalog);
  LemmaReport report;
  StateCounter states(budget.max_states);

  for (std::size_t i = 0; i < f.points.size(); ++i) {
    const MatchPoint from = f.points[i].point;
    for (const Matching& m2 : sample_witnesses(catalog, from, budget, &report.sampled)) {
      auto cycles = enumerate_applicable_cycles(si, m2, budget);
      std::sort(cycles.begin(), cycles.end(),
                [](const MinimalCycle& a, const MinimalCycle& b) { return a.loss < b.loss; });
      std::vector<Mask> pmask, smask;
      for (const auto& c : cycles) {
        Mask pm = 0, sm = 0;
        for (int p : c.cycle.patients) pm |= Mask{1} << p;
        for (int s : c.cycle.seats) sm |= Mask{1} << s;
        pmask.push_back(pm);
        smask.push_back(sm);
      }
      ++report.witnesses_checked;

      for (std::size_t j = i + 1; j < f.points.size(); ++j) {
        const MatchPoint to = f.points[j].point;
        const int k = to.e - from.e;
        const int need = from.b - to.b;
        ++report.pairs_checked;

        auto search = [&](auto&& self, std::size_t start, int left, int remaining, Mask up,
                          Mask us) -> bool {
          states.tick();
          if (left == 0) return remaining == 0;
          for (std::size_t c = start; c < cycles.size(); ++c) {
            if (cycles[c].loss > 0 && static_cast<std::int64_t>(cycles[c].loss) * left > remaining) {
              break;
            }
            if ((pmask[c] & up) || (smask[c] & us)) continue;
            if (self(self, c + 1, left - 1, remaining - cycles[c].loss, up | pmask[c],
                     us | smask[c])) {
              return true;
            }
          }
          return false;
        };
        if (!search(search, 0, k, need, 0, 0)) {
          report.failures.push_back(pair_label(from, to) + ": no " + std::to_string(k) +
                                    " disjoint applicable cycles from " + describe(si, m2));
        }
      }
      for (const auto& c : cycles) {
        if (c.loss <= 0) {
          report.failures.push_back("applicable cycle with non-positive loss at frontier matching " +
                                    describe(si, m2));
          break;
        }
      }
    }
  }
  return report;
}

LemmaReport check_matched_preservation(const SeatInstance& si, const EnumerationBudget& budget) {
  const MatchingCatalog catalog = catalog_matchings(si, budget);
  const Frontier f = oracle_frontier(catalog);
  LemmaReport report;

  std::vector<std::vector<Mask>> masks(f.points.size());
  for (std::size_t j = 0; j < f.points.size(); ++j) {
    for (const auto& m : catalog.at(f.points[j].point)) masks[j].push_back(matched_mask(m));
  }
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    const MatchPoint from = f.points[i].point;
    for (const Matching& m2 : sample_witnesses(catalog, from, budget, &report.sampled)) {
      ++report.witnesses_checked;
      const Mask need = matched_mask(m2);
      for (std::size_t j = i + 1; j < f.points.size(); ++j) {
        ++report.pairs_checked;
        const bool found = std::any_of(masks[j].begin(), masks[j].end(),
                                       [need](Mask have) { return (have & need) == need; });
        if (!found) {
          report.failures.push_back(pair_label(from, f.points[j].point) +
                                    ": no matching keeps every patient of " + describe(si, m2));
        }
      }
    }
  }
  return report;
}

}  // namespace resfront
