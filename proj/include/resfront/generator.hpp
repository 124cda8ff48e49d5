#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resfront/core.hpp"
#include "resfront/mechanism.hpp"

namespace resfront {

struct GenConfig {
  int patients = 6;
  int categories = 5;
  int quota_lo = 1;
  int quota_hi = 1;
  Rational eligibility_density{1, 2};
  Rational beneficiary_density{1, 2};
  std::uint64_t seed = 0;
};

void validate_config(const GenConfig& cfg);

// SplitMix64 step; used to derive independent per-instance seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Each (patient, category) pair is eligible with probability
// eligibility_density; each eligible pair is a beneficiary pair with
// probability beneficiary_density. Deterministic per seed. Patients named
// p1.., categories c1...
Instance gen_random(const GenConfig& cfg);

// Config drawn from `seed` with at most max_patients patients and at most
// max_seats seats in total, with varied sizes, quotas and densities.
GenConfig small_config(std::uint64_t seed, int max_patients, int max_seats);

// Chain family with K+2 patients and K+2 unit categories, where maximising
// total matches first forfeits K+1 beneficiary matches.
Instance gen_tightness_family(int k);

// Disjoint trade-off chains of random length plus sparse noise edges, with
// patients and categories shuffled. Frontiers have several slopes far more
// often than under independent edge draws. Unit quotas; at most
// min(max_patients, max_seats) patients and seats.
Instance gen_contested(std::uint64_t seed, int max_patients, int max_seats);

// Seeded mix of the two families above, half each.
Instance gen_small(std::uint64_t seed, int max_patients, int max_seats);

// Instance file contents: an instance plus the optional share target and order.
struct InstanceDocument {
  Instance instance;
  std::optional<Rational> beta_star;
  std::optional<PriorityOrder> priority;
  std::optional<std::uint64_t> seed;  // recorded for generated instances
};

// "conflict", "figure1", "beta-threshold" or "path-independence".
InstanceDocument gen_named(const std::string& name);
const std::vector<std::string>& named_instances();

}  // namespace resfront
