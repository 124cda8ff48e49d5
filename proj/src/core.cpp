#include "resfront/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "resfront/error.hpp"

namespace resfront {

int Instance::total_quota() const {
  int total = 0;
  for (const auto& c : categories) total += c.quota;
  return total;
}

const Instance& validate_instance(const Instance& inst) {
  const int np = inst.num_patients();
  std::unordered_set<std::string> seen;
  for (const auto& p : inst.patients) {
    if (!seen.insert(p).second) throw InputError("duplicate patient id '" + p + "'");
  }
  seen.clear();
  for (const auto& c : inst.categories) {
    if (!seen.insert(c.id).second) throw InputError("duplicate category id '" + c.id + "'");
    if (c.quota <= 0) {
      throw InputError("category '" + c.id + "': quota must be positive (got " +
                       std::to_string(c.quota) + ")");
    }
    std::vector<char> in_e(np, 0);
    for (int p : c.eligible) {
      if (p < 0 || p >= np) {
        throw InputError("category '" + c.id + "': eligible patient index out of range");
      }
      if (in_e[p]) {
        throw InputError("category '" + c.id + "': patient '" + inst.patients[p] +
                         "' listed twice as eligible");
      }
      in_e[p] = 1;
    }
    std::vector<char> in_b(np, 0);
    for (int p : c.beneficiary) {
      if (p < 0 || p >= np) {
        throw InputError("category '" + c.id + "': beneficiary patient index out of range");
      }
      if (in_b[p]) {
        throw InputError("category '" + c.id + "': patient '" + inst.patients[p] +
                         "' listed twice as beneficiary");
      }
      in_b[p] = 1;
      if (!in_e[p]) {
        throw InputError("category '" + c.id + "': beneficiary not eligible: patient '" +
                         inst.patients[p] + "'");
      }
    }
  }
  return inst;
}

Instance restrict_patients(const Instance& inst, const std::vector<int>& subset) {
  std::vector<int> remap(inst.num_patients(), -1);
  Instance out;
  for (int p : subset) {
    if (p < 0 || p >= inst.num_patients()) throw InputError("subset patient index out of range");
    remap[p] = static_cast<int>(out.patients.size());
    out.patients.push_back(inst.patients[p]);
  }
  for (const auto& c : inst.categories) {
    Category rc{c.id, c.quota, {}, {}};
    for (int p : c.eligible) {
      if (remap[p] >= 0) rc.eligible.push_back(remap[p]);
    }
    for (int p : c.beneficiary) {
      if (remap[p] >= 0) rc.beneficiary.push_back(remap[p]);
    }
    out.categories.push_back(std::move(rc));
  }
  return out;
}

const Problem& validate_problem(const Problem& pr) {
  validate_instance(pr.instance);
  if (pr.beta_star < Rational(0) || pr.beta_star > Rational(1)) {
    throw InputError("beta_star must lie in [0, 1] (got " + pr.beta_star.to_string() + ")");
  }
  return pr;
}

SeatInstance::SeatInstance(Instance inst) : instance_(std::move(inst)) {
  const int np = instance_.num_patients();
  const int nc = instance_.num_categories();
  tier_.assign(static_cast<std::size_t>(nc) * np, Tier::kIneligible);
  for (int c = 0; c < nc; ++c) {
    const auto& cat = instance_.categories[c];
    first_seat_.push_back(static_cast<int>(seats_.size()));
    for (int i = 0; i < cat.quota; ++i) seats_.push_back({c, i});
    for (int p : cat.eligible) tier_[static_cast<std::size_t>(c) * np + p] = Tier::kEligible;
    for (int p : cat.beneficiary) tier_[static_cast<std::size_t>(c) * np + p] = Tier::kBeneficiary;
  }
}

std::string SeatInstance::seat_label(int s) const {
  return instance_.categories[seats_[s].category].id + "#" + std::to_string(seats_[s].index);
}

int SeatInstance::size_parameter() const { return std::max(num_patients(), num_seats()); }

bool SeatInstance::has_eligible_pair() const {
  return std::any_of(tier_.begin(), tier_.end(), [](Tier t) { return t != Tier::kIneligible; });
}

SeatInstance expand_to_seats(const Instance& inst) { return SeatInstance(validate_instance(inst)); }

int Matching::size() const {
  return static_cast<int>(
      std::count_if(seat_of_.begin(), seat_of_.end(), [](int s) { return s != kUnmatched; }));
}

void Matching::assign(int patient, int seat) {
  if (seat_of_[patient] != kUnmatched || patient_at_[seat] != kUnmatched) {
    throw ConsistencyError("assign on an occupied patient or seat");
  }
  seat_of_[patient] = seat;
  patient_at_[seat] = patient;
}

void Matching::unassign_patient(int patient) {
  const int s = seat_of_[patient];
  if (s == kUnmatched) return;
  seat_of_[patient] = kUnmatched;
  patient_at_[s] = kUnmatched;
}

std::vector<int> Matching::matched_patients() const {
  std::vector<int> out;
  for (int p = 0; p < num_patients(); ++p) {
    if (seat_of_[p] != kUnmatched) out.push_back(p);
  }
  return out;
}

void check_matching(const SeatInstance& si, const Matching& m) {
  if (m.num_patients() != si.num_patients() || m.num_seats() != si.num_seats()) {
    throw InputError("matching dimensions do not match the instance");
  }
  for (int p = 0; p < m.num_patients(); ++p) {
    const int s = m.seat_of(p);
    if (s == kUnmatched) continue;
    if (s < 0 || s >= m.num_seats() || m.patient_at(s) != p) {
      throw InputError("matching is inconsistent at patient " + std::to_string(p));
    }
    if (!si.eligible(p, s)) {
      throw InputError("matching assigns patient '" + si.instance().patients[p] +
                       "' to ineligible seat " + si.seat_label(s));
    }
  }
  for (int s = 0; s < m.num_seats(); ++s) {
    const int p = m.patient_at(s);
    if (p != kUnmatched && (p < 0 || p >= m.num_patients() || m.seat_of(p) != s)) {
      throw InputError("matching is inconsistent at seat " + si.seat_label(s));
    }
  }
}

std::ostream& operator<<(std::ostream& os, const MatchPoint& p) {
  return os << "(" << p.e << "," << p.b << ")";
}

MatchPoint match_point(const SeatInstance& si, const Matching& m) {
  MatchPoint pt;
  for (int p = 0; p < m.num_patients(); ++p) {
    const int s = m.seat_of(p);
    if (s == kUnmatched) continue;
    ++pt.e;
    if (si.beneficiary(p, s)) ++pt.b;
  }
  return pt;
}

Rational beneficiary_share(MatchPoint pt) {
  if (pt.e <= 0) throw InputError("share undefined for empty matching");
  return Rational(pt.b, pt.e);
}

bool dominates(MatchPoint a, MatchPoint b) {
  return a.e >= b.e && a.b >= b.b && (a.e > b.e || a.b > b.b);
}

}  // namespace resfront
