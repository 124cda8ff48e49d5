#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "resfront/rational.hpp"

namespace resfront {

// Relationship of a patient to a category (or seat).
enum class Tier : std::uint8_t { kIneligible = 0, kEligible = 1, kBeneficiary = 2 };

struct Category {
  std::string id;
  int quota = 1;
  std::vector<int> eligible;     // patient indices, E_c
  std::vector<int> beneficiary;  // patient indices, B_c (subset of eligible)

  friend bool operator==(const Category&, const Category&) = default;
};

// The immutable input universe: categories with quotas, patients, and the
// per-category eligibility and beneficiary sets. Patients are referred to by
// their index in `patients`.
struct Instance {
  std::vector<std::string> patients;
  std::vector<Category> categories;

  int num_patients() const { return static_cast<int>(patients.size()); }
  int num_categories() const { return static_cast<int>(categories.size()); }
  int total_quota() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Throws InputError describing the first violated invariant; returns the
// instance unchanged when valid.
const Instance& validate_instance(const Instance& inst);

// Sub-instance over the given patients (kept in original order). Categories
// and quotas are untouched; patient i of the result is subset[i].
Instance restrict_patients(const Instance& inst, const std::vector<int>& subset);

struct Problem {
  Instance instance;
  Rational beta_star;
};

// Checks 0 <= beta_star <= 1 and the instance invariants.
const Problem& validate_problem(const Problem& pr);

struct Seat {
  int category = 0;
  int index = 0;  // position within the category, 0-based
};

// Unit-quota expansion of an instance: seats are listed in category order,
// then by index within the category.
class SeatInstance {
 public:
  SeatInstance() = default;
  explicit SeatInstance(Instance inst);

  const Instance& instance() const { return instance_; }
  int num_patients() const { return instance_.num_patients(); }
  int num_seats() const { return static_cast<int>(seats_.size()); }
  const Seat& seat(int s) const { return seats_[s]; }
  int first_seat(int category) const { return first_seat_[category]; }

  Tier category_tier(int patient, int category) const {
    return tier_[static_cast<std::size_t>(category) * instance_.num_patients() + patient];
  }
  Tier tier(int patient, int seat) const { return category_tier(patient, seats_[seat].category); }
  bool eligible(int patient, int seat) const { return tier(patient, seat) != Tier::kIneligible; }
  bool beneficiary(int patient, int seat) const { return tier(patient, seat) == Tier::kBeneficiary; }

  std::string seat_label(int s) const;
  // max(|P|, sum of quotas)
  int size_parameter() const;
  bool has_eligible_pair() const;

 private:
  Instance instance_;
  std::vector<Seat> seats_;
  std::vector<int> first_seat_;
  std::vector<Tier> tier_;  // category-major
};

SeatInstance expand_to_seats(const Instance& inst);

inline constexpr int kUnmatched = -1;

// A partial assignment of patients to seats with both directions stored.
class Matching {
 public:
  Matching() = default;
  Matching(int num_patients, int num_seats)
      : seat_of_(num_patients, kUnmatched), patient_at_(num_seats, kUnmatched) {}

  int num_patients() const { return static_cast<int>(seat_of_.size()); }
  int num_seats() const { return static_cast<int>(patient_at_.size()); }
  int seat_of(int patient) const { return seat_of_[patient]; }
  int patient_at(int seat) const { return patient_at_[seat]; }
  bool patient_matched(int patient) const { return seat_of_[patient] != kUnmatched; }
  bool seat_matched(int seat) const { return patient_at_[seat] != kUnmatched; }
  int size() const;

  // Both endpoints must currently be free.
  void assign(int patient, int seat);
  void unassign_patient(int patient);

  // Matched patients in increasing index order.
  std::vector<int> matched_patients() const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<int> seat_of_;
  std::vector<int> patient_at_;
};

// Throws InputError if the matching is inconsistent or assigns an ineligible pair.
void check_matching(const SeatInstance& si, const Matching& m);

struct MatchPoint {
  int e = 0;  // eligible (total) matches
  int b = 0;  // beneficiary matches

  friend auto operator<=>(const MatchPoint&, const MatchPoint&) = default;
};

std::ostream& operator<<(std::ostream& os, const MatchPoint& p);

MatchPoint match_point(const SeatInstance& si, const Matching& m);

// b/e; throws InputError for the empty point.
Rational beneficiary_share(MatchPoint pt);

// Weakly larger in both coordinates, strictly in at least one.
bool dominates(MatchPoint a, MatchPoint b);

}  // namespace resfront
