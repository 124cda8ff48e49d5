#include "resfront/cycles.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "resfront/error.hpp"

namespace resfront {

bool AssociatedGraph::has_patient_edge(int p, int s) const {
  const auto& out = patient_out[p];
  return std::find(out.begin(), out.end(), s) != out.end();
}

bool AssociatedGraph::has_seat_edge(int s, int p) const {
  const auto& out = seat_out[s];
  return std::find(out.begin(), out.end(), p) != out.end();
}

AssociatedGraph build_associated_graph(const SeatInstance& si, const Matching& m) {
  AssociatedGraph g;
  g.patient_out.resize(si.num_patients());
  g.seat_out.resize(si.num_seats());
  for (int p = 0; p < si.num_patients(); ++p) {
    for (int s = 0; s < si.num_seats(); ++s) {
      if (si.eligible(p, s) && m.seat_of(p) != s) g.patient_out[p].push_back(s);
    }
  }
  for (int s = 0; s < si.num_seats(); ++s) {
    if (m.seat_matched(s)) {
      g.seat_out[s].push_back(m.patient_at(s));
      continue;
    }
    for (int p = 0; p < si.num_patients(); ++p) {
      if (!m.patient_matched(p)) g.seat_out[s].push_back(p);
    }
  }
  return g;
}

bool is_applicable(const SeatInstance& si, const Matching& m, const Cycle& c) {
  const int len = c.length();
  if (len == 0 || static_cast<int>(c.seats.size()) != len) return false;
  std::vector<char> seen_p(si.num_patients(), 0), seen_s(si.num_seats(), 0);
  for (int k = 0; k < len; ++k) {
    const int p = c.patients[k];
    const int s = c.seats[k];
    if (p < 0 || p >= si.num_patients() || s < 0 || s >= si.num_seats()) return false;
    if (seen_p[p] || seen_s[s]) return false;
    seen_p[p] = seen_s[s] = 1;
    if (!si.eligible(p, s) || m.seat_of(p) == s) return false;
    // Unmatched exactly at p_1, and seats before the last hand over to the next patient.
    if ((k == 0) == m.patient_matched(p)) return false;
    if (k + 1 < len) {
      if (m.patient_at(s) != c.patients[k + 1]) return false;
    } else if (m.seat_matched(s)) {
      return false;
    }
  }
  return true;
}

Matching apply_cycle(const SeatInstance& si, const Matching& m, const Cycle& c) {
  if (!is_applicable(si, m, c)) throw InputError("cycle not applicable");
  Matching out = m;
  for (int p : c.patients) out.unassign_patient(p);
  for (int k = 0; k < c.length(); ++k) out.assign(c.patients[k], c.seats[k]);
  return out;
}

int beneficiary_loss(const SeatInstance& si, const Matching& m, const Cycle& c) {
  const Matching after = apply_cycle(si, m, c);
  return match_point(si, m).b - match_point(si, after).b;
}

namespace {

struct Label {
  int cost = std::numeric_limits<int>::max();
  int hops = 0;

  bool reached() const { return cost != std::numeric_limits<int>::max(); }
  bool better_than(const Label& o) const {
    return cost < o.cost || (cost == o.cost && hops < o.hops);
  }
};

int move_cost(const SeatInstance& si, const Matching& m, int p, int s) {
  const int old_seat = m.seat_of(p);
  const int was = old_seat != kUnmatched && si.beneficiary(p, old_seat) ? 1 : 0;
  return was - (si.beneficiary(p, s) ? 1 : 0);
}

}  // namespace

std::optional<MinimalCycle> find_minimal_cycle(const SeatInstance& si, const Matching& m) {
  const int np = si.num_patients();
  const int ns = si.num_seats();
  std::vector<std::vector<int>> eligible_seats(np);
  for (int p = 0; p < np; ++p) {
    for (int s = 0; s < ns; ++s) {
      if (si.eligible(p, s) && m.seat_of(p) != s) eligible_seats[p].push_back(s);
    }
  }

  std::optional<MinimalCycle> best;
  std::vector<Label> pdist(np), sdist(ns);
  std::vector<int> ppred(np), spred(ns), enqueued(np);
  std::vector<char> in_queue(np);

  for (int source = 0; source < np; ++source) {
    if (m.patient_matched(source)) continue;
    std::fill(pdist.begin(), pdist.end(), Label{});
    std::fill(sdist.begin(), sdist.end(), Label{});
    std::fill(ppred.begin(), ppred.end(), -1);
    std::fill(spred.begin(), spred.end(), -1);
    std::fill(enqueued.begin(), enqueued.end(), 0);
    std::fill(in_queue.begin(), in_queue.end(), 0);

    // Label-correcting search; matched seats pass straight to their patient.
    std::deque<int> queue{source};
    pdist[source] = {0, 0};
    in_queue[source] = 1;
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      in_queue[p] = 0;
      for (int s : eligible_seats[p]) {
        const Label cand{pdist[p].cost + move_cost(si, m, p, s), pdist[p].hops + 1};
        if (!cand.better_than(sdist[s])) continue;
        sdist[s] = cand;
        spred[s] = p;
        if (!m.seat_matched(s)) continue;
        const int q = m.patient_at(s);
        if (!cand.better_than(pdist[q])) continue;
        pdist[q] = cand;
        ppred[q] = s;
        if (!in_queue[q]) {
          if (++enqueued[q] > np + 1) {
            throw DominatedInputError(
                "input matching is dominated: a seat rotation raises beneficiary matches");
          }
          in_queue[q] = 1;
          queue.push_back(q);
        }
      }
    }

    for (int s = 0; s < ns; ++s) {
      if (m.seat_matched(s) || !sdist[s].reached()) continue;
      if (best && sdist[s].cost >= best->loss) continue;
      Cycle c;
      for (int seat = s; seat != -1;) {
        const int p = spred[seat];
        c.seats.push_back(seat);
        c.patients.push_back(p);
        seat = ppred[p];
      }
      std::reverse(c.seats.begin(), c.seats.end());
      std::reverse(c.patients.begin(), c.patients.end());
      best = MinimalCycle{std::move(c), sdist[s].cost};
    }
  }

  if (best && best->loss <= 0) {
    std::ostringstream os;
    os << "input matching is dominated: applicable cycle with beneficiary loss " << best->loss;
    throw DominatedInputError(os.str());
  }
  return best;
}

std::vector<WalkStep> frontier_walk(const SeatInstance& si, const Matching& start,
                                    std::optional<int> stop_at_e) {
  std::vector<WalkStep> steps;
  steps.push_back({match_point(si, start), start, 0});
  while (!stop_at_e || steps.back().point.e < *stop_at_e) {
    const auto mc = find_minimal_cycle(si, steps.back().matching);
    if (!mc) break;
    if (steps.size() > 1 && mc->loss < steps.back().loss) {
      std::ostringstream os;
      os << "cycle losses decreased along the walk at " << steps.back().point;
      throw ConsistencyError(os.str());
    }
    Matching next = apply_cycle(si, steps.back().matching, mc->cycle);
    steps.push_back({match_point(si, next), std::move(next), mc->loss});
  }
  return steps;
}

void attach_walk_witnesses(const SeatInstance& si, Frontier& f) {
  if (f.points.empty() || !f.points.front().witness) {
    throw InputError("frontier has no witness at its max-beneficiary end");
  }
  const auto walk = frontier_walk(si, *f.points.front().witness);
  if (walk.size() != f.points.size()) {
    std::ostringstream os;
    os << "walk visited " << walk.size() << " points, frontier has " << f.points.size();
    throw ConsistencyError(os.str());
  }
  for (std::size_t i = 0; i < walk.size(); ++i) {
    if (walk[i].point != f.points[i].point) {
      std::ostringstream os;
      os << "walk reached " << walk[i].point << " where the frontier has " << f.points[i].point;
      throw ConsistencyError(os.str());
    }
    if (!f.points[i].witness) f.points[i].witness = walk[i].matching;
  }
}

}  // namespace resfront
